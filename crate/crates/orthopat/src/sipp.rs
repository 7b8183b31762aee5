//! The strong inner product property (SIPP) and structural conditions under
//! which every row orthogonal realization of a sign pattern has it.
//!
//! A wide matrix `A` has the SIPP when the zero matrix is the only symmetric
//! `X` with `(X A) o A = O`. The check is linear algebra: writing the
//! unknown symmetric `X` through its `m(m+1)/2` upper-triangle entries, each
//! nonzero position `(i, j)` of `A` contributes one linear constraint
//! `sum_l x_{il} a_{lj} = 0`, and `A` has the SIPP iff the constraint matrix
//! has full column rank. When it does not, any null-space vector folds back
//! into a symmetric witness `X`, re-verified exactly before being returned.

use crate::error::{Error, Result};
use crate::exact::{field_nullspace, ExactMatrix, FieldScalar, FloatMatrix};
use crate::pattern::{has_combinatorially_orthogonal_row_pair, Sign, SignPattern};
use crate::quad::QuadMatrix;
use num_traits::Zero;

/// Unknown count of the symmetric system for m rows.
pub fn sipp_unknowns(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Index of unknown `x_{pq}` (p <= q) in row-major upper-triangle order.
fn unknown_index(m: usize, p: usize, q: usize) -> usize {
    debug_assert!(p <= q && q < m);
    p * (2 * m - p + 1) / 2 + (q - p)
}

/// The linear system whose column rank decides the SIPP.
pub struct SippSystem<T> {
    pub m: usize,
    pub n: usize,
    /// One constraint row per nonzero entry of `A`, ordered row-major.
    pub constraints: Vec<Vec<T>>,
    /// Nonzero positions of `A`, aligned with `constraints`.
    pub positions: Vec<(usize, usize)>,
}

/// Build the constraint system over any scalar field.
pub fn build_system<T, F>(m: usize, n: usize, entry: F) -> SippSystem<T>
where
    T: FieldScalar,
    F: Fn(usize, usize) -> T,
{
    let unknowns = sipp_unknowns(m);
    let mut constraints = Vec::new();
    let mut positions = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if entry(i, j).is_zero() {
                continue;
            }
            let mut row = vec![T::zero_elem(); unknowns];
            for l in 0..m {
                let a = entry(l, j);
                if a.is_zero() {
                    continue;
                }
                let idx = unknown_index(m, i.min(l), i.max(l));
                row[idx] = row[idx].add(&a);
            }
            constraints.push(row);
            positions.push((i, j));
        }
    }
    SippSystem { m, n, constraints, positions }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SippMethod {
    ExactNullspace,
    FloatRank,
    StructuralFastPath(&'static str),
}

/// Verdict of a SIPP check over the rationals.
#[derive(Debug, Clone)]
pub struct SippVerdict {
    pub has_sipp: bool,
    /// Symmetric nonzero `X` with `(X A) o A = O`; present iff
    /// `has_sipp == false` and the method was the exact null-space check.
    pub witness: Option<ExactMatrix>,
    pub method: SippMethod,
}

/// Verdict over Q(sqrt 2), for the fixtures with irrational entries.
#[derive(Debug, Clone)]
pub struct QuadSippVerdict {
    pub has_sipp: bool,
    pub witness: Option<QuadMatrix>,
}

fn fold_witness<T: FieldScalar>(m: usize, v: &[T]) -> Vec<T> {
    let mut x = vec![T::zero_elem(); m * m];
    for p in 0..m {
        for q in p..m {
            let val = v[unknown_index(m, p, q)].clone();
            x[p * m + q] = val.clone();
            x[q * m + p] = val;
        }
    }
    x
}

fn normalize_witness<T: FieldScalar>(v: &mut [T]) {
    if let Some(first) = v.iter().find(|e| !e.is_zero()).cloned() {
        for e in v.iter_mut() {
            *e = e.div(&first);
        }
    }
}

fn generic_sipp_check<T, F>(m: usize, n: usize, entry: F) -> (bool, Option<Vec<T>>)
where
    T: FieldScalar,
    F: Fn(usize, usize) -> T,
{
    let system = build_system(m, n, &entry);
    let unknowns = sipp_unknowns(m);
    if system.constraints.is_empty() {
        // the zero matrix: every symmetric X works
        let mut v = vec![T::zero_elem(); unknowns];
        v[0] = T::one_elem();
        return (false, Some(fold_witness(m, &v)));
    }
    let rows = system.constraints.len();
    let flat: Vec<T> = system.constraints.concat();
    let basis = field_nullspace(rows, unknowns, flat);
    match basis.into_iter().next() {
        None => (true, None),
        Some(mut v) => {
            normalize_witness(&mut v);
            let x = fold_witness(m, &v);
            // exact re-verification of the folded witness
            for i in 0..m {
                for j in 0..n {
                    if entry(i, j).is_zero() {
                        continue;
                    }
                    let mut acc = T::zero_elem();
                    for l in 0..m {
                        acc = acc.add(&x[i * m + l].mul(&entry(l, j)));
                    }
                    assert!(
                        acc.mul(&entry(i, j)).is_zero(),
                        "null-space witness failed exact re-verification"
                    );
                }
            }
            assert!(x.iter().any(|e| !e.is_zero()));
            (false, Some(x))
        }
    }
}

/// Exact SIPP decision by null-space computation; sound in both directions.
pub fn sipp_check_exact(a: &ExactMatrix) -> Result<SippVerdict> {
    if !a.is_wide() {
        return Err(Error::NotWide { rows: a.rows(), cols: a.cols() });
    }
    let (has_sipp, witness) = generic_sipp_check(a.rows(), a.cols(), |i, j| a.get(i, j).clone());
    let witness =
        witness.map(|x| ExactMatrix::new(a.rows(), a.rows(), x).expect("witness is m x m"));
    Ok(SippVerdict { has_sipp, witness, method: SippMethod::ExactNullspace })
}

/// Exact SIPP decision over Q(sqrt 2).
pub fn sipp_check_quad(a: &QuadMatrix) -> Result<QuadSippVerdict> {
    if !a.is_wide() {
        return Err(Error::NotWide { rows: a.rows(), cols: a.cols() });
    }
    let (has_sipp, witness) = generic_sipp_check(a.rows(), a.cols(), |i, j| a.get(i, j).clone());
    let witness =
        witness.map(|x| QuadMatrix::new(a.rows(), a.rows(), x).expect("witness is m x m"));
    Ok(QuadSippVerdict { has_sipp, witness })
}

/// Tolerance-based SIPP check; used only inside searches, never for verdicts.
pub fn sipp_check_float(a: &FloatMatrix) -> Result<SippVerdict> {
    if a.rows > a.cols {
        return Err(Error::NotWide { rows: a.rows, cols: a.cols });
    }
    let m = a.rows;
    let unknowns = sipp_unknowns(m);
    let mut data: Vec<f64> = Vec::new();
    let mut count = 0usize;
    for i in 0..m {
        for j in 0..a.cols {
            if a.get(i, j) == 0.0 {
                continue;
            }
            let mut row = vec![0.0; unknowns];
            for l in 0..m {
                let v = a.get(l, j);
                if v != 0.0 {
                    row[unknown_index(m, i.min(l), i.max(l))] += v;
                }
            }
            data.extend_from_slice(&row);
            count += 1;
        }
    }
    if count == 0 {
        return Ok(SippVerdict { has_sipp: false, witness: None, method: SippMethod::FloatRank });
    }
    let system = FloatMatrix { rows: count, cols: unknowns, data, tol: a.tol };
    let has_sipp = system.rank() == unknowns;
    Ok(SippVerdict { has_sipp, witness: None, method: SippMethod::FloatRank })
}

/// Fast path: a nowhere-zero wide matrix has the SIPP iff it has full row
/// rank. Falls back to the exact null-space check otherwise.
pub fn sipp_check_fast(a: &ExactMatrix) -> Result<SippVerdict> {
    if !a.is_wide() {
        return Err(Error::NotWide { rows: a.rows(), cols: a.cols() });
    }
    if a.is_nowhere_zero() {
        let has_sipp = crate::exact::rank_exact(a) == a.rows();
        return Ok(SippVerdict {
            has_sipp,
            witness: None,
            method: SippMethod::StructuralFastPath("nowhere-zero"),
        });
    }
    sipp_check_exact(a)
}

/// Necessary zero-count condition: a wide matrix with the SIPP has at most
/// `nm - m(m+1)/2` zero entries.
pub fn zero_count_bound_ok(zeros: usize, m: usize, n: usize) -> bool {
    zeros + sipp_unknowns(m) <= n * m
}

pub fn zero_count_bound_ok_pattern(s: &SignPattern) -> bool {
    zero_count_bound_ok(s.zero_count(), s.rows(), s.cols())
}

pub fn zero_count_bound_ok_matrix(a: &ExactMatrix) -> bool {
    zero_count_bound_ok(a.zero_count(), a.rows(), a.cols())
}

/// Signature matrices `(D1, D2)` with `D1 C_S D2` symmetric, if any.
///
/// For a nonzero hollow pattern this reduces to a parity check: putting
/// `g_ij = s_ij * s_ji`, a signing exists iff `e_1 = +1`, `e_j = g_1j`
/// satisfies `e_i e_j = g_ij` for every pair, and then `D1 = diag(e)`,
/// `D2 = I` works.
pub fn hollow_signature_symmetric(s: &SignPattern) -> Result<Option<(Vec<i8>, Vec<i8>)>> {
    if s.rows() != s.cols() {
        return Err(Error::Invalid("signature symmetry needs a square pattern".into()));
    }
    if !s.is_nonzero_hollow() {
        return Err(Error::Invalid("pattern is not nonzero hollow".into()));
    }
    let n = s.rows();
    let g = |i: usize, j: usize| s.get(i, j).mul(s.get(j, i)).as_i8();
    let mut e = vec![1i8; n];
    for j in 1..n {
        e[j] = g(0, j);
    }
    for i in 0..n {
        for j in i + 1..n {
            if e[i] * e[j] != g(i, j) {
                return Ok(None);
            }
        }
    }
    Ok(Some((e, vec![1; n])))
}

/// Structural sufficient conditions for a pattern to *require o-SIPP*: a
/// match means every row orthogonal realization of `S` has the SIPP (so
/// exhibiting any row orthogonal realization proves requires-o-SIPP).
/// `None` is not a refutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralCondition {
    /// Every diagonal up to some index nonzero and every diagonal above it
    /// zero (or the reflected form); full-rank realizations then have the
    /// SIPP, and row orthogonal ones are full rank.
    Staircase,
    /// Zero entries confined to at most three rows and no combinatorially
    /// orthogonal row pair.
    ZerosInThreeRows,
    /// Nonzero hollow and not signature equivalent to a symmetric pattern.
    HollowNotSignatureSymmetric,
    /// At most four zeros and no combinatorially orthogonal row or column
    /// pair.
    AtMostFourZeros,
    /// Every row pair has a column supported exactly on that pair; the
    /// diagonal of a symmetric annihilator vanishes for row orthogonal
    /// matrices, and each such column then kills one off-diagonal entry.
    PairedSupportColumns,
}

impl StructuralCondition {
    pub fn name(&self) -> &'static str {
        match self {
            StructuralCondition::Staircase => "staircase-diagonals",
            StructuralCondition::ZerosInThreeRows => "zeros-in-three-rows",
            StructuralCondition::HollowNotSignatureSymmetric => "hollow-not-signature-symmetric",
            StructuralCondition::AtMostFourZeros => "at-most-four-zeros",
            StructuralCondition::PairedSupportColumns => "paired-support-columns",
        }
    }
}

fn diagonal_entries(s: &SignPattern, r: i64) -> impl Iterator<Item = Sign> + '_ {
    let m = s.rows() as i64;
    let n = s.cols() as i64;
    (0..m).filter_map(move |i| {
        let j = i + r;
        if j >= 0 && j < n {
            Some(s.get(i as usize, j as usize))
        } else {
            None
        }
    })
}

fn staircase(s: &SignPattern) -> bool {
    let m = s.rows() as i64;
    let n = s.cols() as i64;
    let lo = 1 - m;
    let hi = n - 1;
    let all_nonzero: Vec<bool> =
        (lo..=hi).map(|r| diagonal_entries(s, r).all(|e| !e.is_zero())).collect();
    let all_zero: Vec<bool> =
        (lo..=hi).map(|r| diagonal_entries(s, r).all(|e| e.is_zero())).collect();
    let idx = |r: i64| (r - lo) as usize;
    // lower form: diagonals up to k nonzero, above k zero (0 <= k <= n-1)
    let lower = (0..=hi).any(|k| {
        (lo..=k).all(|r| all_nonzero[idx(r)]) && (k + 1..=hi).all(|r| all_zero[idx(r)])
    });
    if lower {
        return true;
    }
    // reflected form: diagonals from k on nonzero, below k zero (1-m <= k <= 0)
    (lo..=0).any(|k| {
        (k..=hi).all(|r| all_nonzero[idx(r)]) && (lo..k).all(|r| all_zero[idx(r)])
    })
}

fn zeros_confined_to_rows(s: &SignPattern) -> usize {
    (0..s.rows()).filter(|&i| (0..s.cols()).any(|j| s.get(i, j).is_zero())).count()
}

fn paired_support_columns(s: &SignPattern) -> bool {
    let m = s.rows();
    for i in 0..m {
        for k in i + 1..m {
            let found = (0..s.cols()).any(|j| {
                (0..m).all(|r| {
                    let nonzero = !s.get(r, j).is_zero();
                    nonzero == (r == i || r == k)
                })
            });
            if !found {
                return false;
            }
        }
    }
    true
}

/// First structural requires-o-SIPP condition matched by `s`, if any.
pub fn structural_requires_osipp(s: &SignPattern) -> Option<StructuralCondition> {
    if !s.is_wide() {
        return None;
    }
    if staircase(s) {
        return Some(StructuralCondition::Staircase);
    }
    if zeros_confined_to_rows(s) <= 3 && !has_combinatorially_orthogonal_row_pair(s) {
        return Some(StructuralCondition::ZerosInThreeRows);
    }
    if s.is_nonzero_hollow() {
        if let Ok(None) = hollow_signature_symmetric(s) {
            return Some(StructuralCondition::HollowNotSignatureSymmetric);
        }
    }
    if s.zero_count() <= 4
        && !has_combinatorially_orthogonal_row_pair(s)
        && !has_combinatorially_orthogonal_row_pair(&s.transpose())
    {
        return Some(StructuralCondition::AtMostFourZeros);
    }
    if s.rows() >= 2 && paired_support_columns(s) {
        return Some(StructuralCondition::PairedSupportColumns);
    }
    None
}

/// Check a claimed witness exactly: symmetric, nonzero, `(X A) o A = O`.
pub fn witness_is_valid(a: &ExactMatrix, x: &ExactMatrix) -> bool {
    if x.rows() != a.rows() || x.cols() != a.rows() {
        return false;
    }
    if *x != x.transpose() {
        return false;
    }
    if (0..x.rows()).all(|i| (0..x.cols()).all(|j| Zero::is_zero(x.get(i, j)))) {
        return false;
    }
    let Ok(xa) = x.mul(a) else { return false };
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !Zero::is_zero(a.get(i, j)) && !Zero::is_zero(xa.get(i, j)) {
                return false;
            }
        }
    }
    true
}

/// Quad-field version of [`witness_is_valid`].
pub fn quad_witness_is_valid(a: &QuadMatrix, x: &QuadMatrix) -> bool {
    if x.rows() != a.rows() || x.cols() != a.rows() {
        return false;
    }
    if *x != x.transpose() {
        return false;
    }
    let nonzero =
        (0..x.rows()).any(|i| (0..x.cols()).any(|j| !x.get(i, j).is_zero()));
    if !nonzero {
        return false;
    }
    let Ok(xa) = x.mul(a) else { return false };
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !a.get(i, j).is_zero() && !xa.get(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Sign-equivalent image of a matrix; shared by invariance tests.
pub fn apply_signed_perm_matrix(
    a: &ExactMatrix,
    e: &crate::pattern::SignedPermEquivalence,
) -> ExactMatrix {
    let mut out = ExactMatrix::zero(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let sign = (e.row_signs[i] * e.col_signs[j]) as i64;
            let v = a.get(e.row_perm[i], e.col_perm[j]) * crate::exact::rat(sign);
            out.set(i, j, v);
        }
    }
    out
}
