// Parse words in K, L (a numeral n means L^n) and compute their orders.
//
// cargo run --example word_orders -- "(K5)^2" "9H" "K L"

use sptorsion::bender::{evaluate, parse_word, word_order};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = [
            "K5", "(K5)^2", "9H", "w_alpha", "w_beta", "x_alpha", "K L", "L^-1 K L",
        ]
        .map(String::from)
        .to_vec();
    }
    for text in &words {
        let w = parse_word(text)?;
        let m = evaluate(&w)?;
        println!(
            "{text:>10} -> {:<12} order {}",
            w.to_string(),
            word_order(&w)?
        );
        for row in m.rows() {
            println!("{:>14}{row:?}", "");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("word_orders failed");
}
