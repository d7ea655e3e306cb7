// Element orders in Sp(2g, Z) for small genus, with the maximal order.
//
// cargo run --example orders_by_genus

use sptorsion::criterion::{enumerate_orders, max_order, Genus};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for g in 1..=4 {
        let genus = Genus::new(g)?;
        let set = enumerate_orders(genus)?;
        let (m, f) = max_order(genus)?;
        let listed: Vec<String> = set.iter().map(|m| m.to_string()).collect();
        println!(
            "Sp({}, Z): {} orders, max {m} = {f}",
            genus.dim(),
            set.orders.len()
        );
        println!("  {}", listed.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("orders_by_genus failed");
}
