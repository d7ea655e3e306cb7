//! Elementary number theory on machine integers: trial-division
//! factorization, Euler's totient, and the comparison of `φ(m)` against
//! `m^α` with `α = ln 2 / ln 3`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// `ln 2 / ln 3`, the exponent in the totient lower bound.
pub const ALPHA: f64 = std::f64::consts::LN_2 / LN_3;

const LN_3: f64 = 1.098_612_288_668_109_8;

/// The nine integers for which `φ(m) > m^α` fails.
pub const SHAPIRO_EXCEPTIONS: [u64; 9] = [1, 2, 3, 4, 6, 10, 12, 18, 30];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("primes must be strictly increasing")]
    NotIncreasing,
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    pub fn phi(&self) -> u64 {
        self.prime.pow(self.exponent - 1) * (self.prime - 1)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime)
        } else {
            write!(f, "{}^{}", self.prime, self.exponent)
        }
    }
}

/// Prime-power decomposition with strictly increasing primes. The empty
/// factorization stands for 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Factorization {
    factors: Vec<PrimePower>,
}

impl Factorization {
    /// Builds a factorization from parts, checking primality, positive
    /// exponents and strictly increasing primes.
    pub fn from_parts(parts: Vec<PrimePower>) -> Result<Self, NumTheoryError> {
        for (i, pp) in parts.iter().enumerate() {
            if !is_prime(pp.prime) {
                return Err(NumTheoryError::NotPrime(pp.prime));
            }
            if pp.exponent == 0 {
                return Err(NumTheoryError::ZeroExponent);
            }
            if i > 0 && parts[i - 1].prime >= pp.prime {
                return Err(NumTheoryError::NotIncreasing);
            }
        }
        let f = Factorization { factors: parts };
        f.checked_value()
            .ok_or(NumTheoryError::Overflow("factorization value"))?;
        Ok(f)
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = &PrimePower> {
        self.factors.iter()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|pp| pp.prime).collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|pp| pp.prime == p)
            .map_or(0, |pp| pp.exponent)
    }

    fn checked_value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, pp| {
            pp.prime
                .checked_pow(pp.exponent)
                .and_then(|v| acc.checked_mul(v))
        })
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> u64 {
        self.checked_value()
            .expect("factorization value fits in u64")
    }

    /// `φ` of the represented integer, by multiplicativity.
    pub fn phi(&self) -> u64 {
        self.factors.iter().map(PrimePower::phi).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{pp}")?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial division up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::Zero);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= rest / d {
        if rest.is_multiple_of(d) {
            let mut exponent = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                exponent += 1;
            }
            factors.push(PrimePower { prime: d, exponent });
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower {
            prime: rest,
            exponent: 1,
        });
    }
    Ok(Factorization { factors })
}

/// `φ(p^a) = p^(a-1) (p - 1)`.
pub fn phi_prime_power(p: u64, a: u32) -> Result<u64, NumTheoryError> {
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    if a == 0 {
        return Err(NumTheoryError::ZeroExponent);
    }
    p.checked_pow(a - 1)
        .and_then(|q| q.checked_mul(p - 1))
        .ok_or(NumTheoryError::Overflow("phi of prime power"))
}

pub fn euler_phi(n: u64) -> Result<u64, NumTheoryError> {
    Ok(factorize(n)?.phi())
}

/// Largest odd divisor of `n`.
pub fn odd_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n >> n.trailing_zeros()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapiroVerdict {
    pub m: u64,
    pub phi_m: u64,
    pub exceptional: bool,
    /// Whether `φ(m) > m^α` holds strictly.
    pub strictly_greater: bool,
}

/// Relative gap under which the double-precision comparison is not trusted.
const REFINE_THRESHOLD: f64 = 1e-9;

/// Decides `φ(m) > m^α` by comparing `ln φ(m) · ln 3` with `ln m · ln 2`.
///
/// Near-ties are re-decided with 256-bit fixed-point logarithms. Exact
/// equality (only possible as `φ(m) = 2^t`, `m = 3^t`, e.g. `m = 3`) is not
/// "strictly greater".
pub fn shapiro_check(m: u64) -> Result<ShapiroVerdict, NumTheoryError> {
    let phi_m = euler_phi(m)?;
    Ok(ShapiroVerdict {
        m,
        phi_m,
        exceptional: SHAPIRO_EXCEPTIONS.contains(&m),
        strictly_greater: log_compare(phi_m, m) == std::cmp::Ordering::Greater,
    })
}

/// Sign of `ln a · ln 3 − ln b · ln 2`, i.e. the comparison of `a` with `b^α`.
pub fn log_compare(a: u64, b: u64) -> std::cmp::Ordering {
    use std::cmp::Ordering;

    let lhs = (a as f64).ln() * LN_3;
    let rhs = (b as f64).ln() * std::f64::consts::LN_2;
    let scale = lhs.abs().max(rhs.abs());
    if scale == 0.0 {
        return Ordering::Equal;
    }
    if (lhs - rhs).abs() / scale >= REFINE_THRESHOLD {
        return lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal);
    }
    if let Some(ord) = exact_power_tie(a, b) {
        return ord;
    }
    precise::compare(a, b)
}

// a = 2^t and b = 3^t gives exact equality.
fn exact_power_tie(a: u64, b: u64) -> Option<std::cmp::Ordering> {
    if a == 0 || !a.is_power_of_two() {
        return None;
    }
    let t = a.trailing_zeros();
    (3u64.checked_pow(t) == Some(b)).then_some(std::cmp::Ordering::Equal)
}

// Extended-precision logarithms in binary fixed point.
mod precise {
    use super::*;

    /// Fractional bits carried by every logarithm (about 77 decimal digits).
    pub(super) const BITS: u64 = 256;
    const GUARD: u64 = 32;

    fn atanh_fixed(num: &BigInt, den: &BigInt, bits: u64) -> BigInt {
        let z = (num << bits) / den;
        let zz = (&z * &z) >> bits;
        let mut term = z.clone();
        let mut sum = z;
        let mut k = 1u64;
        loop {
            term = (&term * &zz) >> bits;
            if term.is_zero() {
                break;
            }
            k += 2;
            sum += &term / BigInt::from(k);
        }
        sum
    }

    /// `ln n · 2^BITS`, truncated.
    pub(super) fn ln_fixed(n: u64) -> BigInt {
        assert!(n >= 1);
        let bits = BITS + GUARD;
        let ln2 = atanh_fixed(&BigInt::from(1), &BigInt::from(3), bits) << 1;
        let k = 63 - n.leading_zeros() as u64;
        let base = BigInt::from(1u64 << k);
        let n = BigInt::from(n);
        let frac = atanh_fixed(&(&n - &base), &(&n + &base), bits) << 1;
        (ln2 * BigInt::from(k) + frac) >> GUARD
    }

    pub(super) fn compare(a: u64, b: u64) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let ln2 = ln_fixed(2);
        let ln3 = ln_fixed(3);
        let diff = ln_fixed(a) * ln3 - ln_fixed(b) * ln2;
        // Truncation error of each product is far below 2^(2·BITS − 200).
        let tolerance = BigInt::from(1) << (2 * BITS - 200);
        if diff.abs() <= tolerance {
            Ordering::Equal
        } else if diff.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn phi_brute(n: u64) -> u64 {
        (1..=n).filter(|&j| gcd(j, n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_one());
        let pp = |prime, exponent| PrimePower { prime, exponent };
        assert_eq!(factorize(12).unwrap().factors(), &[pp(2, 2), pp(3, 1)]);
        assert_eq!(
            factorize(30).unwrap().factors(),
            &[pp(2, 1), pp(3, 1), pp(5, 1)]
        );
        assert_eq!(factorize(0), Err(NumTheoryError::Zero));
        assert_eq!(
            factorize(999_999_937).unwrap().factors(),
            &[pp(999_999_937, 1)]
        );
    }

    #[test]
    fn factorize_round_trip() {
        for n in 1..=100_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.factors().windows(2).all(|w| w[0].prime < w[1].prime));
            assert!(f.iter().all(|pp| pp.exponent >= 1 && is_prime(pp.prime)));
        }
    }

    #[test]
    fn phi_prime_power_examples() {
        assert_eq!(phi_prime_power(2, 1), Ok(1));
        assert_eq!(phi_prime_power(3, 2), Ok(6));
        assert_eq!(phi_prime_power(7, 1), Ok(6));
        assert_eq!(phi_prime_power(9, 1), Err(NumTheoryError::NotPrime(9)));
        assert_eq!(phi_prime_power(1, 1), Err(NumTheoryError::NotPrime(1)));
        assert_eq!(phi_prime_power(5, 0), Err(NumTheoryError::ZeroExponent));
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), Ok(1));
        assert_eq!(euler_phi(30), Ok(8));
        assert_eq!(euler_phi(12), Ok(4));
        assert_eq!(euler_phi(0), Err(NumTheoryError::Zero));
    }

    #[test]
    fn euler_phi_matches_coprime_count() {
        for n in 1..=10_000u64 {
            assert_eq!(euler_phi(n).unwrap(), phi_brute(n), "n = {n}");
        }
    }

    #[test]
    fn from_parts_validates() {
        let pp = |prime, exponent| PrimePower { prime, exponent };
        assert!(Factorization::from_parts(vec![pp(2, 1), pp(3, 2)]).is_ok());
        assert!(Factorization::from_parts(vec![pp(3, 1), pp(2, 1)]).is_err());
        assert!(Factorization::from_parts(vec![pp(4, 1)]).is_err());
        assert!(Factorization::from_parts(vec![pp(2, 0)]).is_err());
    }

    #[test]
    fn shapiro_examples() {
        let v = shapiro_check(30).unwrap();
        assert!(v.exceptional && !v.strictly_greater);
        // 3^α = 2 exactly
        let v = shapiro_check(3).unwrap();
        assert_eq!(v.phi_m, 2);
        assert!(v.exceptional && !v.strictly_greater);
        let v = shapiro_check(7).unwrap();
        assert!(!v.exceptional && v.strictly_greater);
        assert!(shapiro_check(0).is_err());
    }

    #[test]
    fn exact_tie_needs_refinement() {
        assert_eq!(log_compare(2, 3), std::cmp::Ordering::Equal);
        assert_eq!(log_compare(4, 9), std::cmp::Ordering::Equal);
        assert_eq!(precise::compare(2, 3), std::cmp::Ordering::Equal);
        assert_eq!(precise::compare(6, 7), std::cmp::Ordering::Greater);
        assert_eq!(precise::compare(1, 2), std::cmp::Ordering::Less);
    }

    #[test]
    fn fixed_point_logs_agree_with_f64() {
        for n in [1u64, 2, 3, 7, 1000, 65_537, 999_999_937] {
            let approx = precise::ln_fixed(n);
            let scaled = (n as f64).ln() * 2f64.powi(64);
            let top = approx >> (precise::BITS - 64);
            let got: f64 = top.to_string().parse().unwrap();
            assert!(
                (got - scaled).abs() <= scaled.abs() * 1e-14 + 1.0,
                "n = {n}"
            );
        }
    }

    #[test]
    fn alpha_constant() {
        assert!((ALPHA - 2f64.ln() / 3f64.ln()).abs() < 1e-16);
        assert!((3f64.powf(ALPHA) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_part_strips_twos() {
        assert_eq!(odd_part(30), 15);
        assert_eq!(odd_part(64), 1);
        assert_eq!(odd_part(7), 7);
    }
}
