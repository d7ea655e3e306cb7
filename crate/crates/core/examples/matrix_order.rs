// Certified orders of matrices given in the plain-text matrix format.
//
// cargo run --example matrix_order

use sptorsion::matrix::{certified_order, is_symplectic, IntMatrix};

const MATRICES: [(&str, &str); 3] = [
    ("rotation of order 6", "2\n1 -1\n1 0\n"),
    (
        "unipotent",
        "# [[I, S], [0, I]], S = diag(1, 0)\n4\n1 0 1 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    ),
    ("K L^5", "4\n1 0 1 0\n1 0 1 1\n-1 1 0 0\n0 -1 0 0\n"),
];

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in MATRICES {
        let m: IntMatrix = text.parse()?;
        assert!(is_symplectic(&m)?);
        println!("{name}: order {}", certified_order(&m)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("matrix_order failed");
}
