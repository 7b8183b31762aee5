//! Which structural requires-o-SIPP condition, if any, fires for each
//! bundled pattern, along with the zero-count necessary bound.

use orthopat::constructions::{conference_6, hessenberg, incidence_pattern, named_fixture, Fixture, OrientedCompleteGraph};
use orthopat::exact::sgn_of;
use orthopat::pattern::SignPattern;
use orthopat::sipp::{structural_requires_osipp, zero_count_bound_ok_pattern};

fn report(name: &str, s: &SignPattern) {
    let cond = structural_requires_osipp(s);
    println!(
        "{name}: {} | zero-count bound ok: {}",
        cond.map_or("no structural match", |c| c.name()),
        zero_count_bound_ok_pattern(s),
    );
}

fn main() -> orthopat::Result<()> {
    for n in 3..=6 {
        report(&format!("sgn(hessenberg({n}))"), &sgn_of(&hessenberg(n)));
    }
    for m in 3..=5 {
        let g = OrientedCompleteGraph::default_orientation(m);
        let (_, s) = incidence_pattern(m, &g)?;
        report(&format!("incidence({m})"), &s);
    }
    for name in ["zeros-3x4", "hollow-4", "minimal-5x6-1"] {
        let Fixture::Pattern(s) = named_fixture(name)? else { panic!("pattern fixture") };
        report(name, &s);
    }
    report("conference-6", &conference_6());
    Ok(())
}
