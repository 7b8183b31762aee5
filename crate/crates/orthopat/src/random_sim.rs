//! Random sign patterns: sampling, Monte-Carlo cover-probability estimates,
//! and the exact closed-form bounds they are compared against.
//!
//! Entries are drawn from the three-point distribution with
//! `P(+1) = P(-1) = p` and `P(0) = 1 - 2p`. The greedy cover search gives a
//! one-sided experiment: its success probability on an `m x n` sample with
//! slack `r` is bounded below by `1 - m e^{-m/8} - (m/p)(1-p)^r` whenever
//! `n >= m^2 + m r + 2m/p`. All bound arithmetic is exact rational; the
//! `e^{-m/8}` factor is replaced by the reciprocal of a truncated Taylor
//! partial sum of `e^{m/8}`, which can only make the lower bound smaller.

use crate::combinatorics::{find_cover_exact_guarded, find_cover_greedy, COVER_EXACT_GUARD};
use crate::error::{Error, Result};
use crate::exact::{rat, rational_sqrt_upper_bound, scalar_to_string};
use crate::pattern::{Sign, SignPattern};
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// The entry distribution: `P(+1) = P(-1) = p`, `P(0) = 1 - 2p`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuP {
    p: BigRational,
}

impl MuP {
    pub fn new(p: BigRational) -> Result<MuP> {
        if !p.is_positive() || p > BigRational::new(1.into(), 2.into()) {
            return Err(Error::Domain("p must satisfy 0 < p <= 1/2".into()));
        }
        if p.denom().to_u64().is_none() {
            return Err(Error::Domain("denominator of p must fit in 64 bits".into()));
        }
        Ok(MuP { p })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<MuP> {
        MuP::new(BigRational::new(num.into(), den.into()))
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    /// One exact draw: thresholds `[0, a)` and `[a, 2a)` out of `b` give the
    /// two signs, the rest zero, where `p = a/b`.
    pub fn draw(&self, rng: &mut SplitMix64) -> Sign {
        let a = self.p.numer();
        let b = self.p.denom();
        let b64 = b.to_u64().expect("denominator fits u64");
        let a64 = a.to_u64().expect("numerator fits u64");
        let v = rng.next_below(b64);
        if v < a64 {
            Sign::Plus
        } else if v < 2 * a64 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }
}

/// An i.i.d. sample, deterministic in the seed.
pub fn sample_pattern(m: usize, n: usize, mu: &MuP, seed: u64) -> SignPattern {
    let mut rng = SplitMix64::new(seed);
    sample_pattern_with(m, n, mu, &mut rng)
}

pub fn sample_pattern_with(m: usize, n: usize, mu: &MuP, rng: &mut SplitMix64) -> SignPattern {
    let entries = (0..m * n).map(|_| mu.draw(rng)).collect();
    SignPattern::new(m, n, entries).expect("shape is valid")
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rational upper bound on `e^{-x}` for `x >= 0`: the reciprocal of a
/// truncated Taylor partial sum of `e^x` (every term positive).
fn exp_neg_upper(x: &BigRational, terms: usize) -> BigRational {
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    for k in 1..=terms {
        term = term * x / rat(k as i64);
        sum += &term;
    }
    BigRational::one() / sum
}

/// Exact rational lower bound `1 - m e^{-m/8} - (m/p)(1-p)^r`, clamped to
/// `[0, 1]`.
pub fn cover_lower_bound(m: usize, p: &BigRational, r: usize) -> BigRational {
    let mfrac = rat(m as i64);
    let e_up = exp_neg_upper(&(&mfrac / rat(8)), 64);
    let mut tail = BigRational::one() - p;
    let mut pow = BigRational::one();
    for _ in 0..r {
        pow *= &tail;
    }
    tail = &mfrac / p * pow;
    let bound = BigRational::one() - &mfrac * e_up - tail;
    if bound.is_negative() {
        BigRational::zero()
    } else if bound > BigRational::one() {
        BigRational::one()
    } else {
        bound
    }
}

/// Wilson 95% score interval.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96f64;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// One Monte-Carlo experiment: greedy cover success frequency against the
/// closed-form lower bound.
#[derive(Debug, Clone)]
pub struct SimulationReport {
    pub m: usize,
    pub n: usize,
    pub p: BigRational,
    pub r: usize,
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    /// Exhaustive-search successes, when the exact oracle was enabled.
    pub successes_exact: Option<u64>,
    /// `n >= m^2 + m r + 2m/p`; the closed-form bound only applies when true.
    pub hypothesis_met: bool,
    pub lower_bound: BigRational,
}

impl SimulationReport {
    pub fn empirical(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.successes, self.trials)
    }

    /// Merge two reports over the same configuration (trial counts add).
    pub fn merge(&self, other: &SimulationReport) -> Result<SimulationReport> {
        if self.m != other.m
            || self.n != other.n
            || self.p != other.p
            || self.r != other.r
            || self.seed != other.seed
        {
            return Err(Error::Invalid("cannot merge reports with different configurations".into()));
        }
        Ok(SimulationReport {
            trials: self.trials + other.trials,
            successes: self.successes + other.successes,
            successes_exact: match (self.successes_exact, other.successes_exact) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
            ..self.clone()
        })
    }

    pub fn to_json(&self) -> Value {
        let (lo, hi) = self.wilson();
        json!({
            "m": self.m,
            "n": self.n,
            "p": scalar_to_string(&self.p),
            "r": self.r,
            "trials": self.trials,
            "seed": self.seed,
            "successes": self.successes,
            "successes_exact": self.successes_exact,
            "empirical": self.empirical(),
            "wilson_lo": lo,
            "wilson_hi": hi,
            "lower_bound": scalar_to_string(&self.lower_bound),
            "lower_bound_float": self.lower_bound.to_f64(),
            "hypothesis_met": self.hypothesis_met,
        })
    }

    pub fn csv_header() -> &'static str {
        "m,n,p,r,empirical,lo,hi,bound"
    }

    pub fn csv_row(&self) -> String {
        let (lo, hi) = self.wilson();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.m,
            self.n,
            scalar_to_string(&self.p),
            self.r,
            self.empirical(),
            lo,
            hi,
            self.lower_bound.to_f64().unwrap_or(0.0)
        )
    }
}

/// Run `trials` independent greedy cover searches on fresh samples. Each
/// trial derives its stream from `(seed, trial_index)`, so reports can be
/// split across workers and merged.
pub fn cover_probability(
    m: usize,
    n: usize,
    mu: &MuP,
    r: usize,
    trials: u64,
    seed: u64,
    exact_oracle: bool,
) -> Result<SimulationReport> {
    if m < 2 {
        return Err(Error::Domain("cover experiments need m >= 2".into()));
    }
    if r > m {
        return Err(Error::Domain(format!("slack r = {r} out of range 0..={m}")));
    }
    // hypothesis: n >= m^2 + m r + 2m/p, exactly
    let needed = rat((m * m + m * r) as i64) + rat(2 * m as i64) / mu.p();
    let hypothesis_met = rat(n as i64) >= needed;
    let mut successes = 0u64;
    let mut successes_exact = if exact_oracle { Some(0u64) } else { None };
    for t in 0..trials {
        let mut rng = SplitMix64::substream(seed, t);
        let s = sample_pattern_with(m, n, mu, &mut rng);
        if find_cover_greedy(&s, r)?.is_some() {
            successes += 1;
            if let Some(c) = successes_exact.as_mut() {
                *c += 1; // exactness dominates greedy
            }
        } else if let Some(c) = successes_exact.as_mut() {
            if m <= COVER_EXACT_GUARD.0 && n <= COVER_EXACT_GUARD.1
                && find_cover_exact_guarded(&s, COVER_EXACT_GUARD, None)?.is_some() {
                    *c += 1;
                }
        }
    }
    Ok(SimulationReport {
        m,
        n,
        p: mu.p().clone(),
        r,
        trials,
        seed,
        successes,
        successes_exact,
        hypothesis_met,
        lower_bound: cover_lower_bound(m, mu.p(), r),
    })
}

/// The two closed-form sample-size thresholds at which random patterns
/// allow row orthogonality with high probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdBounds {
    /// `ceil(m^2 + m log_{1/(1-p)} m + omega)` with the asymptotic slack
    /// instantiated as `omega = 4m` by default: the cover-based route.
    pub cover_route: u64,
    /// `ceil(17 m^2 ln m)`: the direct concentration route for the
    /// nowhere-zero (`p = 1/2`) model.
    pub chernoff_route: u64,
}

pub fn threshold_bounds(m: usize, p: &BigRational, omega: Option<f64>) -> Result<ThresholdBounds> {
    if m < 2 {
        return Err(Error::Domain("thresholds need m >= 2".into()));
    }
    let pf = p.to_f64().ok_or_else(|| Error::Domain("p out of float range".into()))?;
    if !(0.0..=0.5).contains(&pf) || pf == 0.0 {
        return Err(Error::Domain("p must satisfy 0 < p <= 1/2".into()));
    }
    let mf = m as f64;
    let omega = omega.unwrap_or(4.0 * mf);
    let log_base = 1.0 / (1.0 - pf);
    let cover = mf * mf + mf * (mf.ln() / log_base.ln()) + omega;
    let chernoff = 17.0 * mf * mf * mf.ln();
    Ok(ThresholdBounds { cover_route: cover.ceil() as u64, chernoff_route: chernoff.ceil() as u64 })
}

/// Exact union-bound sum on the probability that a uniform `+-1` m x m
/// matrix contains a rank-one `r x s` submatrix with `r + s = m + 2`.
pub fn rank1_bound_sum(m: usize) -> Result<(BigRational, f64)> {
    if m < 2 {
        return Err(Error::Domain("bound needs m >= 2".into()));
    }
    let mut acc = BigRational::zero();
    for k in 1..m {
        let c1 = binom(m, k + 1);
        let c2 = binom(m, m + 1 - k);
        let num = c1 * c2;
        let den = BigInt::one() << (k * (m - k));
        acc += BigRational::new(num, den);
    }
    let f = acc.to_f64().unwrap_or(f64::INFINITY);
    Ok((acc, f))
}

/// Certificate-style screening for the nowhere-zero model: a `+-1` sample
/// passes when `epsilon < 1/(m-1)` and `pert_m(epsilon) < 1` (every row has
/// `delta = 1`), so a pass proves its sign pattern allows row orthogonality.
pub fn screening_probability(m: usize, n: usize, trials: u64, seed: u64) -> Result<(u64, u64)> {
    if m < 2 {
        return Err(Error::Domain("screening needs m >= 2".into()));
    }
    let mu = MuP::from_ratio(1, 2)?;
    let mut accepted = 0u64;
    for t in 0..trials {
        let mut rng = SplitMix64::substream(seed, t);
        let s = sample_pattern_with(m, n, &mu, &mut rng);
        // rows are +-1 vectors of squared norm n
        let mut worst: i64 = 0;
        for i in 0..m {
            for k in i + 1..m {
                let mut dot: i64 = 0;
                for j in 0..n {
                    dot += (s.get(i, j).as_i8() as i64) * (s.get(k, j).as_i8() as i64);
                }
                worst = worst.max(dot.abs());
            }
        }
        let eps_sq = BigRational::new((worst * worst).into(), ((n * n) as i64).into());
        let eps_up = rational_sqrt_upper_bound(&eps_sq, 64)?;
        if eps_up < BigRational::new(1.into(), (m as i64 - 1).into()) {
            let pert = crate::certificate::pert_upper(m, &eps_up, 64)?;
            if pert < BigRational::one() {
                accepted += 1;
            }
        }
    }
    Ok((accepted, trials))
}
