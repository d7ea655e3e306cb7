// The eight relations on K and L, and the orders of some torsion words.
//
// cargo run --example bender_presentation

use sptorsion::bender::{paper_order_table, verify_relations};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = verify_relations()?;
    for r in &report.relations {
        println!(
            "({}) {} = {}  {}",
            r.label,
            r.lhs,
            r.rhs,
            if r.holds { "ok" } else { "FAILS" }
        );
    }
    println!(
        "{}/{} relations hold\n",
        report.passed(),
        report.relations.len()
    );
    for row in paper_order_table()? {
        println!(
            "o({}) = {} (expected {})",
            row.word, row.verified, row.claimed
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bender_presentation failed");
}
