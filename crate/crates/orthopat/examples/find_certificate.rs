//! Search for an integer certificate of row orthogonality for a sign
//! pattern given on the command line (as rows of `+-0`), or for a bundled
//! 4x5 pattern by default.
//!
//! Run with `cargo run --example find_certificate -- "+-++ ++-+ +++- ++++"`.

use orthopat::certificate::{find_certificate, verify_certificate, SearchConfig};
use orthopat::constructions::{named_fixture, Fixture};
use orthopat::exact::scalar_to_string;
use orthopat::pattern::parse_pattern;

fn main() -> orthopat::Result<()> {
    let arg = std::env::args().nth(1);
    let pattern = match arg {
        Some(text) => parse_pattern(&text.replace(' ', "\n"))?,
        None => match named_fixture("minimal-4x5")? {
            Fixture::Pattern(s) => s,
            _ => unreachable!(),
        },
    };
    println!("searching for a certificate for:\n{pattern}\n");
    let cfg = SearchConfig { seed: 2024, ..Default::default() };
    match find_certificate(&pattern, &cfg)? {
        Some(matrix) => {
            let report = verify_certificate(&matrix)?;
            println!("found (verified exactly):\n{matrix}");
            println!(
                "delta = {}, epsilon^2 = {}",
                scalar_to_string(&report.delta),
                scalar_to_string(&report.bound.epsilon_sq)
            );
        }
        None => println!("no certificate found within budget (not a proof of impossibility)"),
    }
    Ok(())
}
