//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use orthopat::canonical::canonical_form;
use orthopat::certificate::{
    pert_recursive, pert_upper, verify_certificate, SearchConfig, Verdict,
};
use orthopat::classify::{enumerate_classes, minimal_allows, square_allows_by_ppo, ClassifyConfig};
use orthopat::combinatorics::{
    decide_allows, find_cover_exact, find_cover_greedy, rank1_obstruction, validate_cover,
    DecideConfig, Evidence, Status,
};
use orthopat::constructions::{
    certificate_5x6, certificate_6x8, conference_6, four_zero_rows_matrix, hessenberg,
    incidence_matrix, known_minimal_classes, named_fixture, seven_by_seven_no_sipp,
    sign_realization, Fixture, OrientedCompleteGraph,
};
use orthopat::exact::{rat, ratio, sgn_of, ExactMatrix, FloatMatrix};
use orthopat::pattern::{Sign, SignPattern, SignedPermEquivalence};
use orthopat::quad::QuadMatrix;
use orthopat::random_sim::{cover_probability, rank1_bound_sum, MuP};
use orthopat::rng::SplitMix64;
use orthopat::sipp::{
    apply_signed_perm_matrix, quad_witness_is_valid, sipp_check_exact, sipp_check_float,
    sipp_check_quad, witness_is_valid, zero_count_bound_ok_matrix,
};
use std::time::Instant;

fn pass(n: usize, msg: &str) {
    println!("acceptance criterion {n}: PASS - {msg}");
}

/// Independent epsilon^2 oracle over i128 integer arithmetic: the maximum of
/// `dot^2 / (|x_i|^2 |x_j|^2)` by cross-multiplied comparison.
fn epsilon_sq_oracle(a: &ExactMatrix) -> (i128, i128, (usize, usize)) {
    let m = a.rows();
    let n = a.cols();
    let entry = |i: usize, j: usize| -> i128 {
        a.get(i, j).to_integer().to_i128().expect("integer certificate entries")
    };
    let norms: Vec<i128> =
        (0..m).map(|i| (0..n).map(|j| entry(i, j) * entry(i, j)).sum()).collect();
    let mut best: (i128, i128, (usize, usize)) = (0, 1, (0, 0));
    for i in 0..m {
        for j in i + 1..m {
            let dot: i128 = (0..n).map(|c| entry(i, c) * entry(j, c)).sum();
            let num = dot * dot;
            let den = norms[i] * norms[j];
            if num * best.1 > best.0 * den {
                best = (num, den, (i, j));
            }
        }
    }
    best
}

#[test]
fn criterion_1_certificate_fixtures() {
    struct Case {
        matrix: ExactMatrix,
        delta: BigRational,
        delta_row: usize,
        eps_sq: BigRational,
        pair: (usize, usize),
    }
    let cases = [
        Case {
            matrix: certificate_5x6(2).unwrap(),
            delta: ratio(3, 73),
            delta_row: 4,
            eps_sq: ratio(71 * 71, 146335965),
            pair: (0, 3),
        },
        Case {
            matrix: certificate_5x6(1).unwrap(),
            delta: ratio(1, 268),
            delta_row: 2,
            eps_sq: ratio(160000, 409890583973),
            pair: (0, 1),
        },
        Case {
            matrix: certificate_5x6(3).unwrap(),
            delta: ratio(2, 477),
            delta_row: 4,
            eps_sq: ratio(3, 3951500),
            pair: (0, 1),
        },
    ];
    // stated decimal bounds on epsilon for the three fixtures
    let eps_decimal = [ratio(6, 1000), ratio(7, 10000), ratio(9, 10000)];
    for (case, eps_limit) in cases.iter().zip(&eps_decimal) {
        let t0 = Instant::now();
        let report = verify_certificate(&case.matrix).unwrap();
        assert_eq!(report.verdict, Verdict::Accept);
        assert_eq!(report.delta, case.delta, "exact delta");
        assert_eq!(report.delta_row, case.delta_row);
        assert_eq!(report.bound.epsilon_sq, case.eps_sq, "exact epsilon^2");
        assert_eq!(report.witness_rows, Some(case.pair));
        // independent integer oracle agrees
        let (num, den, pair) = epsilon_sq_oracle(&case.matrix);
        assert_eq!(
            BigRational::new(num.into(), den.into()),
            case.eps_sq,
            "oracle epsilon^2 differs"
        );
        assert_eq!(pair, case.pair);
        // epsilon below its stated decimal bound, and the domain check
        // passes with at least 10x margin: 10 * eps_upper < 1/(m-1)
        assert!(&report.bound.epsilon_upper < eps_limit);
        assert!(rat(10) * &report.bound.epsilon_upper < ratio(1, 4));
        let pert = report.bound.pert_upper.clone().unwrap();
        assert!(pert < report.delta);
        assert!(t0.elapsed().as_secs_f64() < 1.0, "verification exceeded 1s");
    }
    pass(1, "worked certificates accepted with exact delta and epsilon^2, oracle-confirmed, <1s each");
}

#[test]
fn criterion_2_pert_function() {
    let t0 = Instant::now();
    // pert_1 is identically zero, pert_m(0) = 0
    for k in [0i64, 1, 5, 100] {
        assert_eq!(pert_upper(1, &ratio(k, 7), 64).unwrap(), rat(0));
    }
    for m in 1..=10 {
        assert_eq!(pert_upper(m, &rat(0), 64).unwrap(), rat(0));
    }
    // worked example values
    assert!(pert_upper(5, &ratio(6, 1000), 64).unwrap() < ratio(3, 100));
    assert!(pert_upper(5, &ratio(7, 10000), 64).unwrap() < ratio(3, 1000));
    // closed form vs recursion within 2^-60 on a 200-point grid
    let tolerance = BigRational::new(1.into(), num_bigint::BigInt::one() << 60);
    let mut points = 0;
    for m in 2..=11usize {
        for k in 0..20i64 {
            let eps = ratio(k, 1000);
            let closed = pert_upper(m, &eps, 64).unwrap();
            let recursive = pert_recursive(m, &eps, 64).unwrap();
            let diff = (&closed - &recursive).abs();
            assert!(
                diff <= tolerance,
                "m = {m}, eps = {k}/1000: |closed - recursive| = {diff}"
            );
            points += 1;
        }
    }
    assert_eq!(points, 200);
    assert!(t0.elapsed().as_secs_f64() < 1.0, "pert checks exceeded 1s");
    pass(2, "pert base cases, worked values, and closed-vs-recursive agreement within 2^-60 on 200 grid points");
}

#[test]
fn criterion_3_sipp_decision() {
    // 100 random nowhere-zero full-rank matrices, sizes up to 5x8
    let mut rng = SplitMix64::new(20240);
    let mut done = 0;
    while done < 100 {
        let m = 2 + rng.next_below(4) as usize;
        let n = m + rng.next_below((8 - m + 1) as u64) as usize;
        let mut a = ExactMatrix::zero(m, n);
        for i in 0..m {
            for j in 0..n {
                let mag = 1 + rng.next_below(9) as i64;
                a.set(i, j, rat(mag * rng.next_sign() as i64));
            }
        }
        if orthopat::exact::rank_exact(&a) != m {
            continue;
        }
        let v = sipp_check_exact(&a).unwrap();
        assert!(v.has_sipp, "nowhere-zero full-rank matrix without SIPP:\n{a}");
        assert!(zero_count_bound_ok_matrix(&a));
        done += 1;
    }

    // counterexamples return false with exactly verified witnesses
    let quad_cases: Vec<(&str, QuadMatrix)> = vec![
        ("four-zero-rows-3", four_zero_rows_matrix(3).unwrap()),
        ("four-zero-rows-6", four_zero_rows_matrix(6).unwrap()),
        ("no-sipp-7x7", seven_by_seven_no_sipp()),
    ];
    for (name, a) in quad_cases {
        let v = sipp_check_quad(&a).unwrap();
        assert!(!v.has_sipp, "{name} unexpectedly has the SIPP");
        let x = v.witness.expect("witness present");
        assert!(quad_witness_is_valid(&a, &x), "{name} witness failed exact recheck");
    }
    let c = sign_realization(&conference_6());
    let v = sipp_check_exact(&c).unwrap();
    assert!(!v.has_sipp);
    assert!(witness_is_valid(&c, &v.witness.unwrap()));

    // incidence constructions, row-scaled, have the SIPP for m = 2..5
    for m in 2..=5usize {
        let g = OrientedCompleteGraph::default_orientation(m);
        let mut a = incidence_matrix(&g).unwrap();
        for i in 0..m {
            a.scale_row(i, &ratio(1, 2 * (m as i64 - 1)));
        }
        assert!(sipp_check_exact(&a).unwrap().has_sipp, "incidence m = {m}");
        assert!(zero_count_bound_ok_matrix(&a));
    }
    pass(3, "random full-rank SIPP positives, counterexamples with bit-exact witnesses, incidence positives");
}

#[test]
fn criterion_4_structural_invariances() {
    let mut rng = SplitMix64::new(911);
    // verdict invariant under 200 random signed permutation equivalences
    let fixtures: Vec<(ExactMatrix, bool)> = vec![
        (hessenberg(4), true),
        (sign_realization(&conference_6()), false),
    ];
    let mut applied = 0;
    for (a, expected) in &fixtures {
        assert_eq!(sipp_check_exact(a).unwrap().has_sipp, *expected);
        for _ in 0..100 {
            let e = SignedPermEquivalence::random(a.rows(), a.cols(), &mut rng);
            let b = apply_signed_perm_matrix(a, &e);
            assert_eq!(sipp_check_exact(&b).unwrap().has_sipp, *expected);
            applied += 1;
        }
    }
    assert_eq!(applied, 200);

    // padding invariance [A | O]
    for (a, expected) in &fixtures {
        let padded = a.hstack(&ExactMatrix::zero(a.rows(), 3)).unwrap();
        assert_eq!(sipp_check_exact(&padded).unwrap().has_sipp, *expected);
    }

    // transpose agreement on square fixtures with orthogonal rows
    let Fixture::Pattern(h4) = named_fixture("hollow-4").unwrap() else { panic!() };
    let squares: Vec<ExactMatrix> = vec![
        hessenberg(3),
        hessenberg(4),
        hessenberg(5),
        sign_realization(&conference_6()),
        sign_realization(&h4),
    ];
    for a in &squares {
        assert!(orthopat::exact::is_diagonal(&orthopat::exact::gram(a)));
        assert_eq!(
            sipp_check_exact(a).unwrap().has_sipp,
            sipp_check_exact(&a.transpose()).unwrap().has_sipp
        );
    }
    let q = seven_by_seven_no_sipp();
    assert_eq!(
        sipp_check_quad(&q).unwrap().has_sipp,
        sipp_check_quad(&q.transpose()).unwrap().has_sipp
    );

    // zero-count bound for every matrix this suite certified as SIPP
    let mut certified: Vec<ExactMatrix> = vec![hessenberg(4)];
    for m in 2..=5usize {
        certified.push(incidence_matrix(&OrientedCompleteGraph::default_orientation(m)).unwrap());
    }
    for a in &certified {
        assert!(sipp_check_exact(a).unwrap().has_sipp);
        assert!(zero_count_bound_ok_matrix(a), "zero-count bound violated by\n{a}");
    }
    pass(4, "sign-equivalence, padding and transpose invariances; zero-count bound on all certified matrices");
}

#[test]
fn criterion_5_oracle_equivalences() {
    // greedy cover never succeeds where exhaustive search fails
    let mut rng = SplitMix64::new(5150);
    let mut greedy_hits = 0;
    for _ in 0..1000 {
        let m = 2 + rng.next_below(3) as usize;
        let lo = m * (m - 1);
        let n = lo + rng.next_below((20 - lo + 1) as u64) as usize;
        let entries: Vec<Sign> = (0..m * n)
            .map(|_| match rng.next_below(4) {
                0 => Sign::Zero,
                1 => Sign::Minus,
                _ => Sign::Plus,
            })
            .collect();
        let s = SignPattern::new(m, n, entries).unwrap();
        if let Some(c) = find_cover_greedy(&s, 0).unwrap() {
            assert!(validate_cover(&s, &c));
            assert!(
                find_cover_exact(&s).unwrap().is_some(),
                "greedy succeeded, exhaustive failed:\n{s}"
            );
            greedy_hits += 1;
        }
    }
    assert!(greedy_hits > 50, "sampling produced too few greedy successes ({greedy_hits})");

    // rank-one obstruction matches the all-submatrix minor oracle
    fn minor_oracle(s: &SignPattern) -> bool {
        let m = s.rows();
        let n = s.cols();
        for rmask in 1u32..(1 << m) {
            let rows: Vec<usize> = (0..m).filter(|&i| rmask & (1 << i) != 0).collect();
            if rows.len() < 2 {
                continue;
            }
            'cols: for cmask in 1u32..(1 << n) {
                let cols: Vec<usize> = (0..n).filter(|&j| cmask & (1 << j) != 0).collect();
                if rows.len() + cols.len() < n + 2 {
                    continue;
                }
                for &i in &rows {
                    for &j in &cols {
                        let det = s.get(rows[0], cols[0]).as_i8() as i32 * s.get(i, j).as_i8() as i32
                            - s.get(rows[0], j).as_i8() as i32 * s.get(i, cols[0]).as_i8() as i32;
                        if det != 0 {
                            continue 'cols;
                        }
                    }
                }
                return true;
            }
        }
        false
    }
    let mut obstructed = 0;
    for _ in 0..500 {
        let m = 2 + rng.next_below(4) as usize;
        let n = m + rng.next_below((7 - m + 1) as u64) as usize;
        let entries: Vec<Sign> = (0..m * n)
            .map(|_| if rng.next_sign() > 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        let s = SignPattern::new(m, n, entries).unwrap();
        let found = rank1_obstruction(&s).unwrap().is_some();
        assert_eq!(found, minor_oracle(&s), "oracle disagreement on\n{s}");
        if found {
            obstructed += 1;
        }
    }
    assert!(obstructed > 20, "sampling produced too few obstructions ({obstructed})");

    // float SIPP agrees with exact SIPP on 200 rational instances
    for _ in 0..200 {
        let m = 2 + rng.next_below(3) as usize;
        let n = m + 1 + rng.next_below(2) as usize;
        let mut a = ExactMatrix::zero(m, n);
        let mut f = FloatMatrix::new(m, n, vec![1.0; m * n]).unwrap();
        for i in 0..m {
            for j in 0..n {
                let v = rng.next_below(11) as i64 - 5;
                a.set(i, j, rat(v));
                f.set(i, j, v as f64);
            }
        }
        assert_eq!(
            sipp_check_exact(&a).unwrap().has_sipp,
            sipp_check_float(&f).unwrap().has_sipp,
            "float/exact disagreement on\n{a}"
        );
    }
    pass(5, "greedy<=exact on 1000 covers, rank-one matches the minor oracle on 500, float matches exact on 200");
}

#[test]
fn criterion_6_classification() {
    let cfg = ClassifyConfig::default();

    let t0 = Instant::now();
    let run3 = minimal_allows(3, 4, &cfg).unwrap();
    assert!(!run3.incomplete);
    let min3 = run3.minimal_classes();
    assert_eq!(min3.len(), 1, "m = 3 must have exactly one minimal class");
    assert_eq!(min3[0].pattern, canonical_form(&known_minimal_classes(3)[0]).unwrap());

    let run4 = minimal_allows(4, 5, &cfg).unwrap();
    assert!(!run4.incomplete);
    let min4 = run4.minimal_classes();
    assert_eq!(min4.len(), 4, "m = 4 must have exactly four minimal classes");
    assert_eq!(min4.iter().filter(|c| c.n == 4).count(), 3);
    assert_eq!(min4.iter().filter(|c| c.n == 5).count(), 1);
    let mut got4: Vec<SignPattern> = min4.iter().map(|c| c.pattern.clone()).collect();
    let mut want4: Vec<SignPattern> =
        known_minimal_classes(4).iter().map(|s| canonical_form(s).unwrap()).collect();
    got4.sort();
    want4.sort();
    assert_eq!(got4, want4, "m = 4 classes differ from the published representatives");
    let small_elapsed = t0.elapsed();
    assert!(small_elapsed.as_secs() < 120, "m <= 4 stage took {small_elapsed:?}");

    let t5 = Instant::now();
    let run5 = minimal_allows(5, 6, &cfg).unwrap();
    assert!(!run5.incomplete, "m = 5 run left classes unresolved");
    assert!(run5.restricted);
    let min56: Vec<&_> = run5.minimal_classes().into_iter().filter(|c| c.n == 6).collect();
    assert_eq!(min56.len(), 3, "exactly the three minimal 5x6 classes");
    let mut got56: Vec<SignPattern> = min56.iter().map(|c| c.pattern.clone()).collect();
    let mut want56: Vec<SignPattern> =
        known_minimal_classes(5)[8..].iter().map(|s| canonical_form(s).unwrap()).collect();
    got56.sort();
    want56.sort();
    assert_eq!(got56, want56, "5x6 classes are not the three published patterns");
    // the square stage agrees with the deduplicated representatives
    // (the published table lists nine 5x5 squares, two of which coincide)
    let min55: Vec<&_> = run5.minimal_classes().into_iter().filter(|c| c.n == 5).collect();
    assert_eq!(min55.len(), 8);
    let mut got55: Vec<SignPattern> = min55.iter().map(|c| c.pattern.clone()).collect();
    let mut want55: Vec<SignPattern> =
        known_minimal_classes(5)[..8].iter().map(|s| canonical_form(s).unwrap()).collect();
    got55.sort();
    want55.sort();
    assert_eq!(got55, want55);
    let elapsed5 = t5.elapsed();
    assert!(elapsed5.as_secs() < 1800, "m = 5 restricted run took {elapsed5:?}");

    pass(
        6,
        &format!(
            "m=3: 1 class; m=4: 3+1 classes matching the published table; m=5 restricted: the three 5x6 classes (in {:.1?} + {:.1?})",
            small_elapsed, elapsed5
        ),
    );
}

#[test]
fn criterion_7_probabilistic_bounds() {
    // greedy cover probability vs the closed-form lower bound
    for (m, p_num, p_den) in [(5usize, 1i64, 2i64), (6, 1, 2), (6, 1, 4)] {
        let mu = MuP::from_ratio(p_num, p_den).unwrap();
        let r = m.min(((m as f64).log2().ceil() as usize) + 8);
        let two_m_over_p = ratio(2 * m as i64 * p_den, p_num);
        let n = (rat((m * m + m * r) as i64) + two_m_over_p).to_integer().to_usize().unwrap();
        let rep = cover_probability(m, n, &mu, r, 2000, 777, false).unwrap();
        assert!(rep.hypothesis_met, "hypothesis violated for m={m}, p={p_num}/{p_den}");
        let (lo, hi) = rep.wilson();
        let slack = hi - lo; // two half-widths
        let bound = rep.lower_bound.to_f64().unwrap();
        assert!(
            rep.empirical() >= bound - slack,
            "m={m} p={p_num}/{p_den}: empirical {} below bound {bound} - {slack}",
            rep.empirical()
        );
    }

    // rank-one union bound: monotone decreasing on m = 8..32
    let mut prev = f64::INFINITY;
    for m in 8..=32 {
        let (_, f) = rank1_bound_sum(m).unwrap();
        assert!(f < prev, "bound not decreasing at m = {m}");
        prev = f;
    }

    // and it upper-bounds the Monte-Carlo obstruction frequency for m = 5..8
    let mu = MuP::from_ratio(1, 2).unwrap();
    for m in 5..=8usize {
        let trials = 400u64;
        let mut hits = 0u64;
        for t in 0..trials {
            let mut rng = SplitMix64::substream(4242 + m as u64, t);
            let s = {
                let entries: Vec<Sign> = (0..m * m)
                    .map(|_| if mu.draw(&mut rng) == Sign::Minus { Sign::Minus } else { Sign::Plus })
                    .collect();
                SignPattern::new(m, m, entries).unwrap()
            };
            if rank1_obstruction(&s).unwrap().is_some() {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        let (_, bound) = rank1_bound_sum(m).unwrap();
        assert!(freq <= bound, "m = {m}: frequency {freq} exceeds bound {bound}");
    }
    pass(7, "cover probability consistent with the exact lower bound; rank-one union bound monotone and above MC frequency");
}

#[test]
fn criterion_8_negative_control() {
    // The control pattern: no obstruction is known, so Forbidden would be a
    // soundness bug, and Allows must carry evidence that re-verifies. The
    // published expectation was Unknown (the original search failed); this
    // crate's search finds a certificate, which the control accepts only
    // after an independent re-verification.
    let Fixture::Pattern(s) = named_fixture("open-6x8").unwrap() else { panic!() };
    let cfg = DecideConfig {
        search: SearchConfig { seed: 1, ..Default::default() },
        ..Default::default()
    };
    let verdict = decide_allows(&s, &cfg).unwrap();
    assert_ne!(verdict.status, Status::Forbidden, "no obstruction exists for this pattern");
    match verdict.status {
        Status::Unknown => {
            assert!(verdict.evidence.is_none());
            pass(8, "control pattern undecided (no false positives, no false negatives)");
        }
        Status::Allows => {
            let Some(Evidence::Certificate(m, report)) = &verdict.evidence else {
                panic!("allows without certificate evidence");
            };
            assert!(report.accepted());
            assert_eq!(sgn_of(m), s);
            // independent recheck: integer oracle for epsilon^2, fresh
            // delta scan, and the recursive pert route
            let (num, den, _) = epsilon_sq_oracle(m);
            let eps_sq = BigRational::new(num.into(), den.into());
            assert_eq!(eps_sq, report.bound.epsilon_sq);
            let eps_up = orthopat::exact::rational_sqrt_upper_bound(&eps_sq, 64).unwrap();
            assert!(eps_up < ratio(1, 5));
            let pert = pert_recursive(6, &eps_up, 64).unwrap();
            let mut min_delta: Option<BigRational> = None;
            for i in 0..m.rows() {
                let d = orthopat::certificate::delta_of(m.row(i)).unwrap();
                if min_delta.as_ref().is_none_or(|b| d < *b) {
                    min_delta = Some(d);
                }
            }
            assert!(pert < min_delta.unwrap(), "independent pert route exceeded delta");
            pass(8, "control pattern resolved as Allows with independently re-verified certificate evidence");
        }
        Status::Forbidden => unreachable!(),
    }
    // the frozen certificate stays valid regardless of search stochastics
    let frozen = certificate_6x8();
    assert_eq!(sgn_of(&frozen), s);
    assert!(verify_certificate(&frozen).unwrap().accepted());
}

/// Extra guard shipped with the suite: the deduplicated square
/// representatives are pairwise inequivalent and recover the enumeration.
#[test]
fn shipped_representatives_are_distinct_and_complete() {
    for m in 1..=5usize {
        let fixtures = known_minimal_classes(m);
        let canons: Vec<SignPattern> =
            fixtures.iter().map(|s| canonical_form(s).unwrap()).collect();
        let mut dedup = canons.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), canons.len(), "m = {m} fixtures contain a duplicate class");
    }
    // the eight 5x5 representatives are exactly the PPO classes
    let ppo: Vec<SignPattern> = enumerate_classes(5, 5)
        .unwrap()
        .into_iter()
        .filter(|s| square_allows_by_ppo(s).unwrap())
        .collect();
    let mut want: Vec<SignPattern> =
        known_minimal_classes(5)[..8].iter().map(|s| canonical_form(s).unwrap()).collect();
    want.sort();
    let mut got = ppo;
    got.sort();
    assert_eq!(got, want);
}
