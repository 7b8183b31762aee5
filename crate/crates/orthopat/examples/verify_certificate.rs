//! Verify the bundled integer certificates exactly and print their reports.
//!
//! Run with `cargo run --example verify_certificate`.

use orthopat::certificate::verify_certificate;
use orthopat::constructions::{certificate_5x6, certificate_6x8};
use orthopat::exact::{scalar_to_string, sgn_of};

fn main() -> orthopat::Result<()> {
    let mut certificates = (1..=3)
        .map(|k| (format!("certificate-5x6-{k}"), certificate_5x6(k)))
        .collect::<Vec<_>>();
    certificates.push(("certificate-6x8".into(), Ok(certificate_6x8())));

    for (name, matrix) in certificates {
        let matrix = matrix?;
        let report = verify_certificate(&matrix)?;
        println!("{name}: {:?}", report.verdict);
        println!("  pattern:\n{}", indent(&sgn_of(&matrix).to_string()));
        println!("  delta            = {} (row {})", scalar_to_string(&report.delta), report.delta_row + 1);
        println!("  epsilon^2        = {}", scalar_to_string(&report.bound.epsilon_sq));
        if let Some((i, j)) = report.witness_rows {
            println!("  achieved by rows   {} and {}", i + 1, j + 1);
        }
        if let Some(p) = &report.bound.pert_upper {
            println!("  pert bound       = {}", scalar_to_string(p));
        }
        println!();
    }
    Ok(())
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")
}
