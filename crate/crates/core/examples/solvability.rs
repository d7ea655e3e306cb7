// For which m does A^m = I have a non-identity solution in Sp(2g, Z)?
//
// cargo run --example solvability

use sptorsion::criterion::{power_solvable, Genus};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for g in 1..=3 {
        let genus = Genus::new(g)?;
        let mut unsolvable = Vec::new();
        for m in 2..=60 {
            if !power_solvable(m, genus)?.solvable {
                unsolvable.push(m.to_string());
            }
        }
        println!(
            "g={g}, primes <= {}: no solution for m in [2, 60] = {}",
            genus.max_prime(),
            unsolvable.join(" ")
        );
    }
    let v = power_solvable(35, Genus::new(2)?)?;
    println!(
        "m=35, g=2: solvable={} via prime {:?}",
        v.solvable, v.witness_prime
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("solvability failed");
}
