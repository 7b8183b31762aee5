//! The full decision pipeline on a spread of patterns: necessary tests,
//! obstructions, covers, then certificate search.

use orthopat::combinatorics::{decide_allows, DecideConfig, Status};
use orthopat::constructions::{incidence_pattern, named_fixture, Fixture, OrientedCompleteGraph};
use orthopat::pattern::parse_pattern;

fn main() -> orthopat::Result<()> {
    let mut cases: Vec<(String, orthopat::pattern::SignPattern)> = Vec::new();
    cases.push(("two equal rows".into(), parse_pattern("+-+\n+-+\n+++")?));
    let (_, sk3) = incidence_pattern(3, &OrientedCompleteGraph::default_orientation(3))?;
    cases.push(("incidence(3)".into(), sk3));
    for name in ["minimal-4x5", "minimal-5x6-2", "open-6x8"] {
        let Fixture::Pattern(s) = named_fixture(name)? else { panic!("pattern fixture") };
        cases.push((name.into(), s));
    }

    let cfg = DecideConfig::default();
    for (name, s) in cases {
        let v = decide_allows(&s, &cfg)?;
        let status = match v.status {
            Status::Allows => "allows",
            Status::Forbidden => "forbidden",
            Status::Unknown => "unknown",
        };
        println!("{name}: {status} (via {})", v.provenance);
    }
    Ok(())
}
