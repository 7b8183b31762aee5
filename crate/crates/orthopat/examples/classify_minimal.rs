//! Classify the nowhere-zero patterns that minimally allow orthogonality
//! for m <= 4 and print the resulting table.

use orthopat::classify::{minimal_allows, ClassifyConfig};

fn main() -> orthopat::Result<()> {
    let cfg = ClassifyConfig::default();
    for m in 1..=4 {
        let max_n = if m == 1 { 2 } else { m + 1 };
        let run = minimal_allows(m, max_n, &cfg)?;
        print!("{}", run.to_table());
        println!();
    }
    Ok(())
}
