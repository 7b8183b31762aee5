//! Exact certification that an integer (or rational) matrix proves its sign
//! pattern allows row orthogonality.
//!
//! The key quantities, for a nowhere-zero wide matrix with rows `x_i`:
//!
//! * `epsilon`: the largest normalized inner product between distinct rows,
//!   handled exactly through its square plus a certified rational upper
//!   bound;
//! * `delta(x)`: the smallest-to-largest absolute entry ratio per row, the
//!   sign-preservation margin;
//! * `pert_m(eps)`: how far, relative to the infinity norm, a Gram-Schmidt
//!   style re-orthogonalization can move unit vectors whose pairwise inner
//!   products are at most `eps < 1/(m-1)`.
//!
//! Whenever `eps < 1/(m-1)` and `pert_m(eps) < min_i delta(x_i)`, a truly
//! orthogonal set with the same signs exists, so an `Accept` verdict proves
//! that `sgn(A)` allows row orthogonality. Every comparison below is an
//! exact rational comparison; square roots only ever enter through certified
//! rational upper bounds, which keeps the verdict sound.

use crate::error::{Error, Result};
use crate::exact::{
    rat, rational_sqrt_upper_bound, scalar_to_string, sgn_of, ExactMatrix, ExactScalar,
    FloatMatrix,
};
use crate::pattern::{Sign, SignPattern};
use crate::rng::SplitMix64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub const DEFAULT_SQRT_BITS: u32 = 64;

fn check_domain(m: usize, eps: &BigRational) -> Result<()> {
    if eps.is_negative() {
        return Err(Error::Domain("epsilon must be nonnegative".into()));
    }
    if m >= 2 {
        let limit = BigRational::new(1.into(), (m as i64 - 1).into());
        if *eps >= limit {
            return Err(Error::Domain(format!(
                "epsilon {} is not below 1/(m-1) = {}",
                scalar_to_string(eps),
                scalar_to_string(&limit)
            )));
        }
    }
    Ok(())
}

/// Rational upper bound on `pert_m(eps)` from the closed form
/// `sqrt((1+e) / ((1-(m-2)e)(1-(m-1)e))) - 1`, with `pert_1 = 0` for all
/// `e >= 0`.
pub fn pert_upper(m: usize, eps_upper: &BigRational, bits: u32) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::Domain("pert needs m >= 1".into()));
    }
    if m == 1 {
        if eps_upper.is_negative() {
            return Err(Error::Domain("epsilon must be nonnegative".into()));
        }
        return Ok(BigRational::zero());
    }
    check_domain(m, eps_upper)?;
    let one = BigRational::one();
    let num = &one + eps_upper;
    let d1 = &one - rat(m as i64 - 2) * eps_upper;
    let d2 = &one - rat(m as i64 - 1) * eps_upper;
    let radicand = num / (d1 * d2);
    let root = rational_sqrt_upper_bound(&radicand, bits)?;
    Ok(root - one)
}

/// The same upper bound computed through the recursion
/// `pert_m(e) = sqrt((1+e)/(1-e)) * (pert_{m-1}(e/(1-e)) + 1) - 1`.
pub fn pert_recursive(m: usize, eps_upper: &BigRational, bits: u32) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::Domain("pert needs m >= 1".into()));
    }
    if m == 1 {
        if eps_upper.is_negative() {
            return Err(Error::Domain("epsilon must be nonnegative".into()));
        }
        return Ok(BigRational::zero());
    }
    check_domain(m, eps_upper)?;
    let one = BigRational::one();
    let ratio = (&one + eps_upper) / (&one - eps_upper);
    let factor = rational_sqrt_upper_bound(&ratio, bits)?;
    let inner_eps = eps_upper / (&one - eps_upper);
    let inner = pert_recursive(m - 1, &inner_eps, bits)?;
    Ok(factor * (inner + &one) - one)
}

/// `min_i |x_i| / max_j |x_j|`; zero if some entry is zero.
pub fn delta_of(row: &[ExactScalar]) -> Result<BigRational> {
    if row.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("delta of the zero vector".into()));
    }
    if row.iter().any(Zero::is_zero) {
        return Ok(BigRational::zero());
    }
    let mut min = row[0].abs();
    let mut max = min.clone();
    for v in &row[1..] {
        let a = v.abs();
        if a < min {
            min = a.clone();
        }
        if a > max {
            max = a;
        }
    }
    Ok(min / max)
}

/// `delta` restricted to nonzero entries, used for superpattern claims.
pub fn delta_of_support(row: &[ExactScalar]) -> Result<BigRational> {
    let nonzero: Vec<ExactScalar> = row.iter().filter(|v| !Zero::is_zero(*v)).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::Invalid("delta of the zero vector".into()));
    }
    delta_of(&nonzero)
}

/// Exact `epsilon^2 = max_{i<j} <x_i, x_j>^2 / (|x_i|^2 |x_j|^2)` with an
/// achieving row pair; `(0, None)` for a single row.
pub fn epsilon_sq(a: &ExactMatrix) -> Result<(BigRational, Option<(usize, usize)>)> {
    let norms: Vec<BigRational> = (0..a.rows()).map(|i| a.row_dot(i, i)).collect();
    if norms.iter().any(Zero::is_zero) {
        return Err(Error::Invalid("epsilon of a matrix with a zero row".into()));
    }
    let mut best = BigRational::zero();
    let mut pair = None;
    for i in 0..a.rows() {
        for j in i + 1..a.rows() {
            let d = a.row_dot(i, j);
            let val = (&d * &d) / (&norms[i] * &norms[j]);
            if pair.is_none() || val > best {
                best = val;
                pair = Some((i, j));
            }
        }
    }
    if a.rows() == 1 {
        return Ok((BigRational::zero(), None));
    }
    Ok((best, pair))
}

/// The pert-function side of a certificate check.
#[derive(Debug, Clone)]
pub struct PertBound {
    pub m: usize,
    /// Exact `epsilon^2`.
    pub epsilon_sq: BigRational,
    /// Certified rational upper bound on `epsilon`.
    pub epsilon_upper: BigRational,
    /// Certified rational upper bound on `pert_m(epsilon)`, present only
    /// when `epsilon_upper < 1/(m-1)`.
    pub pert_upper: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    /// `epsilon_upper >= 1/(m-1)`: outside the pert domain.
    EpsilonOutOfDomain,
    /// `pert_m(epsilon) >= min_i delta(x_i)`.
    PertNotBelowDelta,
}

/// Outcome of an exact certificate check.
///
/// `Accept` proves the sign pattern of the checked matrix allows row
/// orthogonality. `Reject` only means this matrix is not a certificate.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub verdict: Verdict,
    /// `min_i delta(row_i)`, exact.
    pub delta: BigRational,
    /// Row achieving the minimum delta.
    pub delta_row: usize,
    pub bound: PertBound,
    /// Rows achieving epsilon (`None` for a single row).
    pub witness_rows: Option<(usize, usize)>,
}

impl CertificateReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": match &self.verdict {
                Verdict::Accept => "accept",
                Verdict::Reject(RejectReason::EpsilonOutOfDomain) => "reject:epsilon-out-of-domain",
                Verdict::Reject(RejectReason::PertNotBelowDelta) => "reject:pert-not-below-delta",
            },
            "delta": scalar_to_string(&self.delta),
            "delta_row": self.delta_row,
            "epsilon_sq": scalar_to_string(&self.bound.epsilon_sq),
            "epsilon_upper": scalar_to_string(&self.bound.epsilon_upper),
            "pert_upper": self.bound.pert_upper.as_ref().map(scalar_to_string),
            "witness_rows": self.witness_rows.map(|(i, j)| json!([i, j])),
        })
    }
}

fn verify_with_delta(
    a: &ExactMatrix,
    bits: u32,
    delta: impl Fn(&[ExactScalar]) -> Result<BigRational>,
) -> Result<CertificateReport> {
    if !a.is_wide() {
        return Err(Error::NotWide { rows: a.rows(), cols: a.cols() });
    }
    let m = a.rows();
    let mut min_delta: Option<(BigRational, usize)> = None;
    for i in 0..m {
        let d = delta(a.row(i))?;
        if min_delta.as_ref().is_none_or(|(best, _)| d < *best) {
            min_delta = Some((d, i));
        }
    }
    let (delta, delta_row) = min_delta.expect("at least one row");
    let (eps_sq, witness_rows) = epsilon_sq(a)?;
    let epsilon_upper = rational_sqrt_upper_bound(&eps_sq, bits)?;

    let in_domain = m == 1 || {
        let limit = BigRational::new(1.into(), (m as i64 - 1).into());
        epsilon_upper < limit
    };
    if !in_domain {
        return Ok(CertificateReport {
            verdict: Verdict::Reject(RejectReason::EpsilonOutOfDomain),
            delta,
            delta_row,
            bound: PertBound { m, epsilon_sq: eps_sq, epsilon_upper, pert_upper: None },
            witness_rows,
        });
    }
    let pert = pert_upper(m, &epsilon_upper, bits)?;
    let verdict = if pert < delta {
        Verdict::Accept
    } else {
        Verdict::Reject(RejectReason::PertNotBelowDelta)
    };
    Ok(CertificateReport {
        verdict,
        delta,
        delta_row,
        bound: PertBound { m, epsilon_sq: eps_sq, epsilon_upper, pert_upper: Some(pert) },
        witness_rows,
    })
}

/// Exact certificate check for a nowhere-zero wide matrix.
///
/// `Accept` guarantees `sgn(A)` allows row orthogonality; the
/// sign-preservation argument needs every entry nonzero, so matrices with
/// zeros are rejected up front (see [`verify_superpattern_certificate`] for
/// the relaxed claim).
pub fn verify_certificate_with_bits(a: &ExactMatrix, bits: u32) -> Result<CertificateReport> {
    if !a.is_nowhere_zero() {
        return Err(Error::Invalid(
            "certificate matrices must be nowhere zero; zero entries are not sign-protected".into(),
        ));
    }
    verify_with_delta(a, bits, delta_of)
}

pub fn verify_certificate(a: &ExactMatrix) -> Result<CertificateReport> {
    verify_certificate_with_bits(a, DEFAULT_SQRT_BITS)
}

/// Relaxed check for matrices with zero entries: the margin is taken over
/// nonzero entries only, so `Accept` proves that *some superpattern* of
/// `sgn(A)` allows row orthogonality (zero entries may drift when the rows
/// are re-orthogonalized).
pub fn verify_superpattern_certificate(a: &ExactMatrix, bits: u32) -> Result<CertificateReport> {
    verify_with_delta(a, bits, delta_of_support)
}

/// Configuration for the randomized certificate search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    /// Independent restarts.
    pub max_attempts: usize,
    /// Orthogonalization sweeps per restart.
    pub max_sweeps: usize,
    /// Rounding scale; doubled on rejection.
    pub scale: u64,
    pub scale_doublings: u32,
    pub bits: u32,
    /// Smallest admissible entry relative to its row's largest entry.
    pub clamp_floor: f64,
    /// Keep zero entries pinned at zero and certify a superpattern claim.
    pub mask_zeros: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 1,
            max_attempts: 60,
            max_sweeps: 300,
            scale: 600,
            scale_doublings: 4,
            bits: DEFAULT_SQRT_BITS,
            clamp_floor: 0.02,
            mask_zeros: false,
        }
    }
}

struct FloatRows {
    m: usize,
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl FloatRows {
    fn random(s: &SignPattern, rng: &mut SplitMix64) -> FloatRows {
        let rows = (0..s.rows())
            .map(|i| {
                (0..s.cols())
                    .map(|j| match s.get(i, j) {
                        Sign::Zero => 0.0,
                        sg => sg.as_i8() as f64 * (0.3 + 0.7 * rng.next_f64()),
                    })
                    .collect()
            })
            .collect();
        FloatRows { m: s.rows(), n: s.cols(), rows }
    }

    fn normalize(&mut self) {
        for row in self.rows.iter_mut() {
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                for v in row.iter_mut() {
                    *v /= norm;
                }
            }
        }
    }

    fn max_abs_dot(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.m {
            for j in i + 1..self.m {
                let d: f64 = (0..self.n).map(|c| self.rows[i][c] * self.rows[j][c]).sum();
                worst = worst.max(d.abs());
            }
        }
        worst
    }

    /// One symmetric sweep: both rows of each pair absorb half the overlap.
    fn orthogonalize_sweep(&mut self) {
        for i in 0..self.m {
            for j in i + 1..self.m {
                let d: f64 = (0..self.n).map(|c| self.rows[i][c] * self.rows[j][c]).sum();
                let h = 0.5 * d;
                for c in 0..self.n {
                    let (a, b) = (self.rows[i][c], self.rows[j][c]);
                    self.rows[i][c] = a - h * b;
                    self.rows[j][c] = b - h * a;
                }
            }
        }
        self.normalize();
    }

    /// Push every entry back to its pattern sign, at least `floor` times the
    /// row maximum in magnitude. Returns how many entries needed fixing.
    fn clamp(&mut self, s: &SignPattern, floor: f64) -> usize {
        let mut fixed = 0;
        for i in 0..self.m {
            let row_max =
                self.rows[i].iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
            let min_mag = floor * row_max;
            for j in 0..self.n {
                let want = s.get(i, j);
                if want == Sign::Zero {
                    self.rows[i][j] = 0.0;
                    continue;
                }
                let v = self.rows[i][j];
                let desired = want.as_i8() as f64;
                if v * desired <= 0.0 || v.abs() < min_mag {
                    self.rows[i][j] = desired * min_mag;
                    fixed += 1;
                }
            }
        }
        fixed
    }

    fn signs_match(&self, s: &SignPattern) -> bool {
        for i in 0..self.m {
            for j in 0..self.n {
                let want = s.get(i, j);
                let v = self.rows[i][j];
                let ok = match want {
                    Sign::Zero => v == 0.0,
                    Sign::Plus => v > 0.0,
                    Sign::Minus => v < 0.0,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn round_to_integers(&self, s: &SignPattern, scale: u64) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.m, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                let want = s.get(i, j);
                if want == Sign::Zero {
                    continue;
                }
                let mut v = (self.rows[i][j] * scale as f64).round() as i64;
                if v == 0 {
                    v = want.as_i8() as i64;
                }
                if (v > 0) != (want == Sign::Plus) {
                    v = -v;
                }
                out.set(i, j, rat(v));
            }
        }
        out
    }
}

/// Re-orthogonalize the rows of a float matrix without changing their span:
/// repeatedly fix the row of smallest infinity norm and project the others
/// onto its orthogonal complement. Output rows keep their input 2-norms.
pub fn orthogonalize_rows_f64(a: &FloatMatrix) -> FloatMatrix {
    let m = a.rows;
    let n = a.cols;
    let mut rows: Vec<Vec<f64>> = (0..m).map(|i| a.data[i * n..(i + 1) * n].to_vec()).collect();
    let norms: Vec<f64> = rows.iter().map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt()).collect();
    for (row, &norm) in rows.iter_mut().zip(&norms) {
        if norm > 0.0 {
            for v in row.iter_mut() {
                *v /= norm;
            }
        }
    }
    let mut remaining: Vec<usize> = (0..m).collect();
    while remaining.len() > 1 {
        let pos = remaining
            .iter()
            .enumerate()
            .map(|(p, &r)| (p, rows[r].iter().fold(0.0f64, |acc, v| acc.max(v.abs()))))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .map(|(p, _)| p)
            .unwrap();
        let pivot = remaining.remove(pos);
        let pivot_row = rows[pivot].clone();
        for &r in &remaining {
            let d: f64 = (0..n).map(|c| rows[r][c] * pivot_row[c]).sum();
            for c in 0..n {
                rows[r][c] -= d * pivot_row[c];
            }
            let norm = rows[r].iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                for v in rows[r].iter_mut() {
                    *v /= norm;
                }
            }
        }
    }
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        for c in 0..n {
            data.push(rows[i][c] * norms[i]);
        }
    }
    FloatMatrix { rows: m, cols: n, data, tol: a.tol }
}

/// Randomized search for an integer matrix that [`verify_certificate`]
/// accepts for the pattern `s`. Deterministic given `(cfg.seed, cfg)`;
/// returning `None` is not evidence of impossibility.
pub fn find_certificate(s: &SignPattern, cfg: &SearchConfig) -> Result<Option<ExactMatrix>> {
    if !s.is_wide() {
        return Err(Error::NotWide { rows: s.rows(), cols: s.cols() });
    }
    if !s.is_nowhere_zero() && !cfg.mask_zeros {
        return Err(Error::Invalid(
            "pattern has zero entries; enable mask_zeros for a superpattern search".into(),
        ));
    }
    if (0..s.rows()).any(|i| (0..s.cols()).all(|j| s.get(i, j).is_zero())) {
        return Err(Error::Invalid("pattern has a zero row".into()));
    }
    let masked = cfg.mask_zeros && !s.is_nowhere_zero();
    let mut rng = SplitMix64::new(cfg.seed);
    for _attempt in 0..cfg.max_attempts {
        let mut fr = FloatRows::random(s, &mut rng);
        fr.normalize();
        let mut floor = cfg.clamp_floor;
        let mut stalled = 0usize;
        let mut last_eps = f64::INFINITY;
        for _sweep in 0..cfg.max_sweeps {
            fr.orthogonalize_sweep();
            fr.clamp(s, floor);
            let eps = fr.max_abs_dot();
            if eps < 1e-9 {
                break;
            }
            if eps > 0.7 * last_eps {
                stalled += 1;
                if stalled >= 12 {
                    // convergence stalled against the clamp floor; relax it
                    floor *= 0.5;
                    stalled = 0;
                    if floor < 1e-4 {
                        break;
                    }
                }
            } else {
                stalled = 0;
            }
            last_eps = eps;
        }
        if fr.max_abs_dot() > 1e-4 {
            continue; // restart
        }
        // polish: exact float orthogonalization, kept only if signs survive
        let flat = FloatMatrix::new(fr.m, fr.n, fr.rows.concat())?;
        let polished = orthogonalize_rows_f64(&flat);
        let mut candidate = fr;
        if let Ok(ps) = crate::exact::sgn_of_float(&polished) {
            if ps == *s {
                candidate = FloatRows {
                    m: polished.rows,
                    n: polished.cols,
                    rows: (0..polished.rows)
                        .map(|i| polished.data[i * polished.cols..(i + 1) * polished.cols].to_vec())
                        .collect(),
                };
                candidate.normalize();
            }
        }
        if !candidate.signs_match(s) {
            continue;
        }
        let mut scale = cfg.scale;
        for _ in 0..=cfg.scale_doublings {
            let m = candidate.round_to_integers(s, scale);
            if sgn_of(&m) == *s {
                let report = if masked {
                    verify_superpattern_certificate(&m, cfg.bits)?
                } else {
                    verify_certificate_with_bits(&m, cfg.bits)?
                };
                if report.accepted() {
                    return Ok(Some(m));
                }
            }
            scale = scale.saturating_mul(2);
        }
    }
    Ok(None)
}
