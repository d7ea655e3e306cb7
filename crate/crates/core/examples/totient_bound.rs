// phi(m) > m^(log 2 / log 3) outside nine exceptional values; m = 3 is an
// exact tie.
//
// cargo run --example totient_bound

use sptorsion::numtheory::{shapiro_check, ALPHA, SHAPIRO_EXCEPTIONS};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in SHAPIRO_EXCEPTIONS {
        let v = shapiro_check(m)?;
        println!(
            "m={m:>2}: phi={:>2}  m^alpha={:.6}  strictly greater: {}",
            v.phi_m,
            (m as f64).powf(ALPHA),
            v.strictly_greater
        );
    }
    let violations = (1..=10_000u64)
        .filter(|m| !SHAPIRO_EXCEPTIONS.contains(m))
        .filter(|&m| {
            !shapiro_check(m)
                .map(|v| v.strictly_greater)
                .unwrap_or(false)
        })
        .count();
    println!("violations in [1, 10000] outside the exceptional set: {violations}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("totient_bound failed");
}
