use proptest::prelude::*;

use sptorsion::bender::{
    evaluate, generator_k, generator_l, parse_word, word_order, Abbrev, Token, Word, ORDER_CLAIMS,
};
use sptorsion::criterion::{enumerate_orders, Genus};
use sptorsion::matrix::{is_symplectic, symplectic_inverse, IntMatrix, MatrixError, MatrixOrder};
use sptorsion::numtheory::euler_phi;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn token() -> impl Strategy<Value = Token> {
    let leaf = prop_oneof![
        Just(Token::GenK),
        (-13i64..=13).prop_map(Token::GenL),
        prop::sample::select(Abbrev::ALL.to_vec()).prop_map(Token::Abbrev),
    ];
    leaf.prop_recursive(2, 12, 3, |inner| {
        (prop::collection::vec(inner, 1..3), -3i64..=3)
            .prop_map(|(tokens, e)| Token::Group(Word::new(tokens), e))
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(token(), 1..5).prop_map(Word::new)
}

fn eval_small(w: &Word) -> Option<IntMatrix> {
    match evaluate(w) {
        Ok(m) => Some(m),
        Err(MatrixError::Overflow) => None,
        Err(e) => panic!("unexpected evaluation error: {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn phi_is_multiplicative(a in 1u64..=10_000, b in 1u64..=10_000) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(euler_phi(a * b).unwrap(), euler_phi(a).unwrap() * euler_phi(b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rendered_words_reparse(w in word()) {
        let text = w.to_string();
        prop_assert_eq!(parse_word(&text).unwrap(), w);
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(), v in word()) {
        let (Some(mu), Some(mv), Some(muv)) = (eval_small(&u), eval_small(&v), eval_small(&u.concat(&v))) else {
            return Ok(());
        };
        match mu.mul(&mv) {
            Ok(prod) => prop_assert_eq!(muv, prod),
            Err(MatrixError::Overflow) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn inverse_words_cancel(w in word()) {
        let Some(m) = eval_small(&w.concat(&w.inverse())) else { return Ok(()) };
        prop_assert!(m.is_identity());
    }

    #[test]
    fn words_are_symplectic_and_unimodular(w in word()) {
        let Some(m) = eval_small(&w) else { return Ok(()) };
        prop_assert!(is_symplectic(&m).unwrap());
        if let Ok(d) = m.det() {
            prop_assert_eq!(d, 1);
        }
        if let (Ok(a), Ok(b)) = (m.inverse(), symplectic_inverse(&m)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn finite_orders_lie_in_order_set(w in word()) {
        let sp4 = enumerate_orders(Genus::new(2).unwrap()).unwrap();
        match word_order(&w) {
            Ok(MatrixOrder::Finite(m)) => prop_assert!(sp4.contains(m)),
            Ok(MatrixOrder::Infinite) | Err(MatrixError::Overflow) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn generator_products_are_symplectic() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let gens = [
        generator_k(),
        generator_l(),
        generator_l().inverse().unwrap(),
    ];
    for _ in 0..200 {
        let len = rng.gen_range(1..=12);
        let mut m = IntMatrix::identity(4);
        for _ in 0..len {
            m = m.mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
        }
        assert!(is_symplectic(&m).unwrap());
        assert_eq!(m.det().unwrap(), 1);
    }
}

#[test]
fn orders_of_powers() {
    for (text, order) in ORDER_CLAIMS {
        let w = parse_word(text).unwrap();
        for j in 1..=order as i64 + 2 {
            let expected = order / gcd(order, j as u64);
            assert_eq!(
                word_order(&w.pow(j)).unwrap(),
                MatrixOrder::Finite(expected),
                "({text})^{j}"
            );
        }
    }
}
