//! Tour of the named constructions: Hessenberg matrices, incidence
//! constructions, the conference pattern, and the counterexample fixtures.

use orthopat::constructions::{
    conference_6, four_zero_rows_matrix, hessenberg, incidence_matrix, named_fixture, Fixture,
    OrientedCompleteGraph,
};
use orthopat::exact::{gram, is_diagonal, sgn_of};

fn main() -> orthopat::Result<()> {
    let h = hessenberg(5);
    println!("hessenberg(5) (gram diagonal: {}):\n{h}\n", is_diagonal(&gram(&h)));
    println!("its sign pattern:\n{}\n", sgn_of(&h));

    let g = OrientedCompleteGraph::default_orientation(4);
    let a = incidence_matrix(&g)?;
    println!("incidence(4), one column per edge then per arc:\n{a}\n");

    println!("conference-6 pattern:\n{}\n", conference_6());

    let q = four_zero_rows_matrix(6)?;
    println!("four-zero-rows-6 is {}x{} over Q(sqrt 2), gram diagonal: {}", q.rows(), q.cols(), q.gram().is_diagonal());

    match named_fixture("certificate-6x8")? {
        Fixture::Exact(m) => println!("\ncertificate-6x8:\n{m}"),
        _ => unreachable!(),
    }
    Ok(())
}
