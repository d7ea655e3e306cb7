// The totient ledger behind "does Sp(2g, Z) have an element of order m?".
//
// cargo run --example check_order -- 2 10

use sptorsion::criterion::{burgisser_criterion, Genus};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let queries = match args.as_slice() {
        [g, m] => vec![(*g as u32, *m)],
        _ => vec![(2, 10), (2, 9), (2, 12), (3, 30), (3, 16)],
    };
    for (g, m) in queries {
        let w = burgisser_criterion(m, Genus::new(g)?)?;
        let terms: Vec<String> = w
            .terms
            .iter()
            .map(|t| format!("phi({}^{})={}", t.prime, t.exponent, t.phi))
            .collect();
        println!(
            "g={g} m={m}: {} [{}] sum {} vs budget {}{}",
            if w.order_exists { "exists" } else { "absent" },
            terms.join(" + "),
            w.phi_sum,
            w.budget,
            if w.case_two_mod_four {
                " (2-part free)"
            } else {
                ""
            },
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("check_order failed");
}
