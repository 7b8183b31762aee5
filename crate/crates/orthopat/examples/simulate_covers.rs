//! Monte-Carlo sweep of the greedy cover probability against the exact
//! closed-form lower bound; prints the CSV that the `simulate` subcommand
//! also emits.

use orthopat::random_sim::{cover_probability, rank1_bound_sum, threshold_bounds, MuP, SimulationReport};

fn main() -> orthopat::Result<()> {
    let mu = MuP::from_ratio(1, 2)?;
    println!("{}", SimulationReport::csv_header());
    let m = 6;
    let r = 6;
    for n in [96usize, 110, 130, 160] {
        let rep = cover_probability(m, n, &mu, r, 400, 17, false)?;
        println!("{}", rep.csv_row());
    }

    let t = threshold_bounds(10, mu.p(), None)?;
    println!("\nthresholds at m = 10: cover route {} columns, concentration route {}", t.cover_route, t.chernoff_route);

    println!("\nrank-one union bound (uniform +-1 m x m):");
    for m in [8usize, 12, 16, 24, 32] {
        let (_, f) = rank1_bound_sum(m)?;
        println!("  m = {m:2}: {f:.6}");
    }
    Ok(())
}
