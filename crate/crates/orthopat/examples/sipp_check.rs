//! Exact SIPP decisions on the bundled fixtures: staircase matrices have it,
//! the conference realization and the orthogonal-rows counterexamples do
//! not, and every negative verdict comes with a symmetric witness.

use orthopat::constructions::{
    conference_6, four_zero_rows_matrix, hessenberg, incidence_matrix, seven_by_seven_no_sipp,
    sign_realization, OrientedCompleteGraph,
};
use orthopat::sipp::{sipp_check_exact, sipp_check_quad};

fn main() -> orthopat::Result<()> {
    for n in 2..=5 {
        let h = hessenberg(n);
        let v = sipp_check_exact(&h)?;
        println!("hessenberg({n}): has_sipp = {}", v.has_sipp);
    }
    for m in 2..=5 {
        let g = OrientedCompleteGraph::default_orientation(m);
        let a = incidence_matrix(&g)?;
        println!("incidence({m}): has_sipp = {}", sipp_check_exact(&a)?.has_sipp);
    }

    let c = sign_realization(&conference_6());
    let v = sipp_check_exact(&c)?;
    println!("\nconference-6: has_sipp = {}", v.has_sipp);
    if let Some(x) = v.witness {
        println!("witness X (symmetric, (XA) o A = O):\n{x}");
    }

    for n in [3usize, 6] {
        let a = four_zero_rows_matrix(n)?;
        let v = sipp_check_quad(&a)?;
        println!("\nfour-zero-rows-{n}: has_sipp = {}", v.has_sipp);
    }
    let q = seven_by_seven_no_sipp();
    println!("no-sipp-7x7: has_sipp = {}", sipp_check_quad(&q)?.has_sipp);
    Ok(())
}
