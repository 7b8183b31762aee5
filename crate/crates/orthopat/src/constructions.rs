//! Named matrices and patterns used throughout the crate: the lower
//! Hessenberg family with orthogonal rows, incidence constructions over
//! oriented complete graphs, a 6x6 conference pattern, matrices with
//! orthogonal rows that fail the strong inner product property, integer
//! certificates for the small minimal patterns, and the minimal-pattern
//! representatives themselves.

use crate::error::{Error, Result};
use crate::exact::{rat, ExactMatrix};
use crate::pattern::{parse_pattern, SignPattern};
use crate::quad::{QuadMatrix, Sqrt2Ext};
use crate::rng::SplitMix64;

/// The `{0, 1, -1}` realization of a sign pattern.
pub fn sign_realization(s: &SignPattern) -> ExactMatrix {
    let data = s.entries().iter().map(|e| rat(e.as_i8() as i64)).collect();
    ExactMatrix::new(s.rows(), s.cols(), data).expect("shape is valid")
}

/// The n x n lower Hessenberg matrix with pairwise orthogonal rows:
/// row i is (1, ..., 1, -i, 0, ..., 0) with i ones, and the last row is all
/// ones.
pub fn hessenberg(n: usize) -> ExactMatrix {
    assert!(n >= 1);
    let mut h = ExactMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..=i.min(n - 1) {
            h.set(i, j, rat(1));
        }
        if i + 1 < n {
            h.set(i, i + 1, rat(-(i as i64 + 1)));
        }
    }
    h
}

/// An orientation of the complete graph K_m: each edge `{i, k}` (i < k)
/// appears as exactly one arc `(tail, head)`.
#[derive(Debug, Clone)]
pub struct OrientedCompleteGraph {
    pub m: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl OrientedCompleteGraph {
    /// Every edge oriented from its smaller endpoint.
    pub fn default_orientation(m: usize) -> OrientedCompleteGraph {
        let mut arcs = Vec::new();
        for i in 0..m {
            for k in i + 1..m {
                arcs.push((i, k));
            }
        }
        OrientedCompleteGraph { m, arcs }
    }

    pub fn random_orientation(m: usize, rng: &mut SplitMix64) -> OrientedCompleteGraph {
        let mut g = OrientedCompleteGraph::default_orientation(m);
        for arc in g.arcs.iter_mut() {
            if rng.next_sign() < 0 {
                *arc = (arc.1, arc.0);
            }
        }
        g
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.m * (self.m - 1) / 2;
        if self.arcs.len() != expected {
            return Err(Error::Invalid(format!(
                "orientation of K_{} needs {expected} arcs, got {}",
                self.m,
                self.arcs.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &self.arcs {
            if a == b || a >= self.m || b >= self.m {
                return Err(Error::Invalid(format!("bad arc ({a}, {b})")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Invalid(format!("edge {{{}, {}}} appears twice", a.min(b), a.max(b))));
            }
        }
        Ok(())
    }
}

/// The m x 2C(m,2) matrix `[R | R_oriented]`: the vertex-edge incidence block
/// of K_m next to the incidence block of an orientation (tail -1, head +1).
/// Its rows are pairwise orthogonal, every column has exactly two nonzeros,
/// and between any two rows the edge column and arc column form a negative
/// 4-cycle.
pub fn incidence_matrix(orientation: &OrientedCompleteGraph) -> Result<ExactMatrix> {
    orientation.validate()?;
    let m = orientation.m;
    if m < 2 {
        return Err(Error::Invalid("incidence construction needs m >= 2".into()));
    }
    let e = orientation.arcs.len();
    let mut a = ExactMatrix::zero(m, 2 * e);
    for (j, &(tail, head)) in orientation.arcs.iter().enumerate() {
        a.set(tail, j, rat(1));
        a.set(head, j, rat(1));
        a.set(tail, e + j, rat(-1));
        a.set(head, e + j, rat(1));
    }
    Ok(a)
}

/// The incidence matrix together with its sign pattern.
pub fn incidence_pattern(
    m: usize,
    orientation: &OrientedCompleteGraph,
) -> Result<(ExactMatrix, SignPattern)> {
    if orientation.m != m {
        return Err(Error::DimensionMismatch("orientation vertex count".into()));
    }
    let a = incidence_matrix(orientation)?;
    Ok((a.clone(), crate::exact::sgn_of(&a)))
}

/// 6x6 symmetric conference pattern: hollow, off-diagonal +-, realization
/// satisfies C C^T = 5 I.
pub fn conference_6() -> SignPattern {
    parse_pattern("0+++++\n+0+-+-\n++0+--\n+-+0-+\n++--0+\n+--++0").expect("fixture parses")
}

/// The n x (n+1) matrix with orthogonal rows whose zero entries occupy four
/// rows and which does not have the strong inner product property. Entries
/// live in Q(sqrt 2); `n - 2` must be a perfect square so that `sqrt(n - 2)`
/// is rational (n = 3 and n = 6 are the shipped cases).
pub fn four_zero_rows_matrix(n: usize) -> Result<QuadMatrix> {
    if n < 3 {
        return Err(Error::Invalid("construction needs n >= 3".into()));
    }
    let root = (0..=n).find(|r| r * r == n - 2).ok_or_else(|| {
        Error::Invalid(format!("sqrt({}) is irrational; shipped cases are n = 3 and n = 6", n - 2))
    })?;
    let s = root as i64;
    let half = |v: i64| Sqrt2Ext::from_parts(0, 1, v, 2); // v / sqrt2 = (v/2) sqrt2
    let mut a = QuadMatrix::zero(n, n + 1);
    let mid = n - 3; // middle block width
    for i in 0..n - 3 {
        a.set(i, 1, Sqrt2Ext::from_int(s));
        for j in 0..mid {
            let v = if i == j { 3 - n as i64 } else { 1 };
            a.set(i, 2 + j, Sqrt2Ext::from_int(v));
        }
        a.set(i, n - 1, half(1));
        a.set(i, n, half(1));
    }
    // row n-2: ones in the middle, (3-n)/sqrt2 in the last two columns
    a.set(n - 3, 1, Sqrt2Ext::from_int(s));
    for j in 0..mid {
        a.set(n - 3, 2 + j, Sqrt2Ext::from_int(1));
    }
    a.set(n - 3, n - 1, half(3 - n as i64));
    a.set(n - 3, n, half(3 - n as i64));
    // last two rows: +-sqrt(n-2) in the first column
    for (offset, sign) in [(2usize, 1i64), (1, -1)] {
        let i = n - offset;
        a.set(i, 0, Sqrt2Ext::from_int(sign * s));
        for j in 0..mid {
            a.set(i, 2 + j, Sqrt2Ext::from_int(1));
        }
        a.set(i, n - 1, half(1));
        a.set(i, n, half(1));
    }
    Ok(a)
}

/// Symmetric witness with `(X A) o A = O` for [`four_zero_rows_matrix`].
pub fn four_zero_rows_witness(n: usize) -> Result<QuadMatrix> {
    if n < 3 {
        return Err(Error::Invalid("construction needs n >= 3".into()));
    }
    let mut x = QuadMatrix::zero(n, n);
    for i in 0..n - 2 {
        x.set(i, n - 2, Sqrt2Ext::from_int(1));
        x.set(i, n - 1, Sqrt2Ext::from_int(-1));
        x.set(n - 2, i, Sqrt2Ext::from_int(1));
        x.set(n - 1, i, Sqrt2Ext::from_int(-1));
    }
    Ok(x)
}

/// A 7x7 matrix with orthogonal rows, zero entries spread over four rows and
/// four columns, no combinatorially orthogonal row or column pair, and no
/// strong inner product property.
pub fn seven_by_seven_no_sipp() -> QuadMatrix {
    let i = Sqrt2Ext::from_int;
    let r = Sqrt2Ext::sqrt2_times;
    let rows: Vec<Vec<Sqrt2Ext>> = vec![
        vec![i(-9), i(9), i(0), i(0), r(3), r(-6), r(6)],
        vec![i(9), i(-9), i(0), i(0), r(3), r(-6), r(6)],
        vec![i(0), i(0), i(-9), i(9), r(-6), r(3), r(6)],
        vec![i(0), i(0), i(9), i(-9), r(-6), r(3), r(6)],
        vec![r(3), r(3), r(-6), r(-6), i(8), i(8), i(4)],
        vec![r(-6), r(-6), r(3), r(3), i(8), i(8), i(4)],
        vec![r(6), r(6), r(6), r(6), i(4), i(4), i(2)],
    ];
    QuadMatrix::new(7, 7, rows.into_iter().flatten().collect()).expect("fixture shape")
}

/// Symmetric witness annihilating [`seven_by_seven_no_sipp`].
pub fn seven_by_seven_witness() -> QuadMatrix {
    let mut x = QuadMatrix::zero(7, 7);
    let i = Sqrt2Ext::from_int;
    // couples the {1,2} row pair with the {3,4} pair
    x.set(0, 2, i(1));
    x.set(0, 3, i(-1));
    x.set(1, 2, i(-1));
    x.set(1, 3, i(1));
    x.set(2, 0, i(1));
    x.set(2, 1, i(-1));
    x.set(3, 0, i(-1));
    x.set(3, 1, i(1));
    x
}

/// A named fixture: either an exact rational matrix, a matrix over
/// Q(sqrt 2), or a sign pattern.
#[derive(Debug, Clone)]
pub enum Fixture {
    Exact(ExactMatrix),
    Quad(QuadMatrix),
    Pattern(SignPattern),
}

/// Integer certificate matrices for the three minimal 5x6 patterns.
pub fn certificate_5x6(which: usize) -> Result<ExactMatrix> {
    let rows: Vec<Vec<i64>> = match which {
        1 => vec![
            vec![-424, -297, 42, 382, 424, 212],
            vec![290, 48, -578, -70, 247, 392],
            vec![126, 32, 2, 536, -490, 310],
            vec![466, 4, 39, 404, 305, -407],
            vec![49, 579, 384, 12, 255, 301],
        ],
        2 => vec![
            vec![-8, -74, -25, 41, 8, 65],
            vec![13, 65, -73, 4, 22, 43],
            vec![56, 7, 23, -28, -71, 50],
            vec![73, 4, 4, 75, 7, -32],
            vec![3, 29, 73, 7, 60, 49],
        ],
        3 => vec![
            vec![-246, -246, 369, 123, 369, 123],
            vec![494, -254, 7, 127, 7, 314],
            vec![174, 230, -11, -421, 396, 75],
            vec![284, 107, 414, 56, -41, -392],
            vec![2, 477, 51, 367, 69, 231],
        ],
        _ => return Err(Error::Invalid(format!("no certificate-5x6-{which}"))),
    };
    Ok(ExactMatrix::from_i64_rows(&rows))
}

/// Integer certificate showing that the `open-6x8` pattern allows row
/// orthogonality (found by the randomized search in this crate and verified
/// exactly: epsilon < 0.00075 from rows 1 and 4, delta = 2/377 from row 2,
/// and pert_6(epsilon) < delta).
pub fn certificate_6x8() -> ExactMatrix {
    ExactMatrix::from_i64_rows(&[
        vec![8, 437, 348, 853, 16, 14, 228, 590],
        vec![754, 27, 4, -532, -293, -6, 129, 696],
        vec![364, 7, 380, 8, 676, 173, -821, 48],
        vec![66, 725, 4, -6, -680, -183, -577, -284],
        vec![496, 446, 4, 8, 177, 653, 476, -556],
        vec![6, 6, 967, -275, -6, -492, 323, -290],
    ])
}

/// One representative of each sign-equivalence class of m x n nowhere zero
/// patterns that minimally allow orthogonality, for m <= 5.
pub fn known_minimal_classes(m: usize) -> Vec<SignPattern> {
    let texts: Vec<&str> = match m {
        1 => vec!["+"],
        2 => vec!["+-\n++"],
        3 => vec!["+-+\n++-\n+++"],
        4 => vec![
            "+-++\n++-+\n+++-\n++++",
            "+--+\n++-+\n+++-\n++++",
            "-+++\n+-++\n++-+\n+++-",
            "-++++\n+-+-+\n++-+-\n+++++",
        ],
        // the published list of square representatives contains one
        // duplicated equivalence class; this list is deduplicated (eight
        // distinct 5x5 classes, then the three 5x6 classes)
        5 => vec![
            "+--++\n++--+\n+++--\n++++-\n+++++",
            "--+++\n+--++\n++--+\n++++-\n+++++",
            "--+++\n+--++\n++-++\n+++-+\n++++-",
            "--+++\n+--++\n+++--\n++++-\n+++++",
            "--+++\n+--++\n+++-+\n++++-\n+++++",
            "+--++\n++-++\n+++--\n++++-\n+++++",
            "-++++\n+-+++\n++-++\n+++-+\n++++-",
            "+-+++\n++-++\n+++-+\n++++-\n+++++",
            "--++++\n++--++\n++++-+\n+++++-\n++++++",
            "---+++\n++-+++\n+++--+\n+++++-\n++++++",
            "--++++\n+-++++\n++--++\n++++--\n++++++",
        ],
        _ => vec![],
    };
    texts.into_iter().map(|t| parse_pattern(t).expect("fixture parses")).collect()
}

/// Look up a fixture by name. Names: `minimal-<shape>[-k]`, `certificate-5x6-k`, `certificate-6x8`,
/// `conference-6`, `hollow-4`, `zeros-3x4[-matrix]`, `open-6x8`,
/// `four-zero-rows-{3,6}[-witness]`, `no-sipp-7x7[-witness]`,
/// `hessenberg-<n>`, `incidence-<m>`.
pub fn named_fixture(name: &str) -> Result<Fixture> {
    let p = |text: &str| Fixture::Pattern(parse_pattern(text).expect("fixture parses"));
    Ok(match name {
        "minimal-1x1" => Fixture::Pattern(known_minimal_classes(1)[0].clone()),
        "minimal-2x2" => Fixture::Pattern(known_minimal_classes(2)[0].clone()),
        "minimal-3x3" => Fixture::Pattern(known_minimal_classes(3)[0].clone()),
        "minimal-4x4-1" => Fixture::Pattern(known_minimal_classes(4)[0].clone()),
        "minimal-4x4-2" => Fixture::Pattern(known_minimal_classes(4)[1].clone()),
        "minimal-4x4-3" => Fixture::Pattern(known_minimal_classes(4)[2].clone()),
        "minimal-4x5" => Fixture::Pattern(known_minimal_classes(4)[3].clone()),
        "minimal-4x5-alt" => p("--+++\n++--+\n++++-\n+++++"),
        "minimal-5x6-1" => Fixture::Pattern(known_minimal_classes(5)[8].clone()),
        "minimal-5x6-2" => Fixture::Pattern(known_minimal_classes(5)[9].clone()),
        "minimal-5x6-3" => Fixture::Pattern(known_minimal_classes(5)[10].clone()),
        "certificate-5x6-1" => Fixture::Exact(certificate_5x6(1)?),
        "certificate-5x6-2" => Fixture::Exact(certificate_5x6(2)?),
        "certificate-5x6-3" => Fixture::Exact(certificate_5x6(3)?),
        "certificate-6x8" => Fixture::Exact(certificate_6x8()),
        "conference-6" => Fixture::Pattern(conference_6()),
        "hollow-4" => p("0+++\n+0-+\n++0-\n+-+0"),
        "zeros-3x4" => p("+0++\n0++-\n0-+-"),
        "zeros-3x4-matrix" => Fixture::Exact(ExactMatrix::from_i64_rows(&[
            vec![1, 0, 1, 1],
            vec![0, 1, 1, -1],
            vec![0, -2, 1, -1],
        ])),
        "open-6x8" => p("++++++++\n+++---++\n++++++-+\n+++-----\n+++++++-\n+++---+-"),
        "four-zero-rows-3" => Fixture::Quad(four_zero_rows_matrix(3)?),
        "four-zero-rows-6" => Fixture::Quad(four_zero_rows_matrix(6)?),
        "four-zero-rows-3-witness" => Fixture::Quad(four_zero_rows_witness(3)?),
        "four-zero-rows-6-witness" => Fixture::Quad(four_zero_rows_witness(6)?),
        "no-sipp-7x7" => Fixture::Quad(seven_by_seven_no_sipp()),
        "no-sipp-7x7-witness" => Fixture::Quad(seven_by_seven_witness()),
        _ => {
            if let Some(n) = name.strip_prefix("hessenberg-") {
                let n: usize = n.parse().map_err(|_| Error::Invalid(format!("bad size in {name:?}")))?;
                if n == 0 || n > 64 {
                    return Err(Error::Invalid("hessenberg size must be 1..=64".into()));
                }
                return Ok(Fixture::Exact(hessenberg(n)));
            }
            if let Some(m) = name.strip_prefix("incidence-") {
                let m: usize = m.parse().map_err(|_| Error::Invalid(format!("bad size in {name:?}")))?;
                if !(2..=12).contains(&m) {
                    return Err(Error::Invalid("incidence size must be 2..=12".into()));
                }
                let g = OrientedCompleteGraph::default_orientation(m);
                return Ok(Fixture::Exact(incidence_matrix(&g)?));
            }
            return Err(Error::Invalid(format!("unknown fixture {name:?}")));
        }
    })
}

/// All fixture names accepted by [`named_fixture`] (parametric families shown
/// with a placeholder).
pub fn fixture_names() -> Vec<&'static str> {
    vec![
        "minimal-1x1",
        "minimal-2x2",
        "minimal-3x3",
        "minimal-4x4-1",
        "minimal-4x4-2",
        "minimal-4x4-3",
        "minimal-4x5",
        "minimal-4x5-alt",
        "minimal-5x6-1",
        "minimal-5x6-2",
        "minimal-5x6-3",
        "certificate-5x6-1",
        "certificate-5x6-2",
        "certificate-5x6-3",
        "certificate-6x8",
        "conference-6",
        "hollow-4",
        "zeros-3x4",
        "zeros-3x4-matrix",
        "open-6x8",
        "four-zero-rows-3",
        "four-zero-rows-6",
        "four-zero-rows-3-witness",
        "four-zero-rows-6-witness",
        "no-sipp-7x7",
        "no-sipp-7x7-witness",
        "hessenberg-<n>",
        "incidence-<m>",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gram, is_diagonal, rank_exact, sgn_of};
    use crate::exact::FieldScalar;

    #[test]
    fn hessenberg_small_cases() {
        let h2 = hessenberg(2);
        assert_eq!(h2, ExactMatrix::from_i64_rows(&[vec![1, -1], vec![1, 1]]));
        for n in 1..=6 {
            assert!(is_diagonal(&gram(&hessenberg(n))), "H({n}) rows not orthogonal");
        }
    }

    #[test]
    fn incidence_gram_is_diagonal() {
        let mut rng = SplitMix64::new(3);
        for m in 2..=6 {
            let g = OrientedCompleteGraph::default_orientation(m);
            let a = incidence_matrix(&g).unwrap();
            assert_eq!(a.cols(), m * (m - 1));
            assert!(is_diagonal(&gram(&a)));
            // the result holds for any orientation
            let r = OrientedCompleteGraph::random_orientation(m, &mut rng);
            assert!(is_diagonal(&gram(&incidence_matrix(&r).unwrap())));
        }
    }

    #[test]
    fn incidence_m2() {
        let g = OrientedCompleteGraph::default_orientation(2);
        let a = incidence_matrix(&g).unwrap();
        assert_eq!(a, ExactMatrix::from_i64_rows(&[vec![1, -1], vec![1, 1]]));
    }

    #[test]
    fn incidence_full_rank() {
        let g = OrientedCompleteGraph::default_orientation(4);
        let a = incidence_matrix(&g).unwrap();
        assert_eq!(rank_exact(&a), 4);
    }

    #[test]
    fn incidence_columns_have_two_nonzeros() {
        let g = OrientedCompleteGraph::default_orientation(5);
        let (_, s) = incidence_pattern(5, &g).unwrap();
        for j in 0..s.cols() {
            let nz = (0..5).filter(|&i| !s.get(i, j).is_zero()).count();
            assert_eq!(nz, 2);
        }
    }

    #[test]
    fn conference_is_symmetric_orthogonal() {
        let s = conference_6();
        assert!(s.is_nonzero_hollow());
        assert_eq!(s, s.transpose());
        let c = sign_realization(&s);
        let g = gram(&c);
        assert!(is_diagonal(&g));
        assert_eq!(g.get(0, 0), &rat(5));
    }

    #[test]
    fn four_zero_rows_fixture_checks() {
        for n in [3usize, 6] {
            let a = four_zero_rows_matrix(n).unwrap();
            assert!(a.gram().is_diagonal(), "rows of the n={n} fixture not orthogonal");
            let x = four_zero_rows_witness(n).unwrap();
            // X symmetric, nonzero, (XA) o A = O
            assert_eq!(x, x.transpose());
            let xa = x.mul(&a).unwrap();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    assert!(xa.get(i, j).mul(a.get(i, j)).is_zero(), "n={n} ({i},{j})");
                }
            }
        }
        assert!(four_zero_rows_matrix(5).is_err());
    }

    #[test]
    fn seven_by_seven_fixture_checks() {
        let q = seven_by_seven_no_sipp();
        assert!(q.gram().is_diagonal());
        let x = seven_by_seven_witness();
        assert_eq!(x, x.transpose());
        let xq = x.mul(&q).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert!(xq.get(i, j).mul(q.get(i, j)).is_zero());
            }
        }
    }

    #[test]
    fn zeros_3x4_matrix_matches_pattern() {
        let (Fixture::Pattern(s), Fixture::Exact(a)) =
            (named_fixture("zeros-3x4").unwrap(), named_fixture("zeros-3x4-matrix").unwrap())
        else {
            panic!("fixture kinds");
        };
        assert_eq!(sgn_of(&a), s);
        assert!(is_diagonal(&gram(&a)));
    }

    #[test]
    fn certificates_match_their_patterns() {
        for (k, name) in [(1usize, "minimal-5x6-1"), (2, "minimal-5x6-2"), (3, "minimal-5x6-3")] {
            let a = certificate_5x6(k).unwrap();
            let Fixture::Pattern(s) = named_fixture(name).unwrap() else { panic!() };
            assert_eq!(sgn_of(&a), s, "certificate {k} has the wrong sign pattern");
        }
    }

    #[test]
    fn realization_signs_round_trip() {
        let mut rng = SplitMix64::new(62);
        for _ in 0..50 {
            let rows = 1 + rng.next_below(4) as usize;
            let cols = 1 + rng.next_below(5) as usize;
            let entries = (0..rows * cols)
                .map(|_| match rng.next_below(3) {
                    0 => crate::pattern::Sign::Plus,
                    1 => crate::pattern::Sign::Minus,
                    _ => crate::pattern::Sign::Zero,
                })
                .collect();
            let s = SignPattern::new(rows, cols, entries).unwrap();
            assert_eq!(sgn_of(&sign_realization(&s)), s);
        }
    }

    #[test]
    fn fixture_lookup_errors() {
        assert!(named_fixture("nope").is_err());
        assert!(named_fixture("hessenberg-0").is_err());
    }
}
