// Closed-form bound max{30, M(g)} against the exact maximal order.
//
// cargo run --example order_bound

use sptorsion::criterion::{order_bound, Genus};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>3}  {:>8}  {:>8}  {:>22}",
        "g", "max", "exact?", "max{30, M}"
    );
    for g in 1..=12 {
        let r = order_bound(Genus::new(g)?)?;
        assert!(r.analytic_bound.admits(r.exact_max_order));
        println!(
            "{g:>3}  {:>8}  {:>8}  {:>22}",
            r.exact_max_order,
            r.analytic_bound.exact.is_some(),
            r.analytic_bound.to_string(),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("order_bound failed");
}
