//! Combinatorial certificates and obstructions for row orthogonality, and
//! the top-level decision pipeline.
//!
//! A *column-disjoint negative 4-cycle cover* assigns to every unordered row
//! pair a private pair of columns whose sign products against the two rows
//! are `+` and `-`; a pattern with such a cover is sign equivalent to a
//! superpattern of a padded incidence pattern and therefore allows row
//! orthogonality. In the other direction, an `r x s` nowhere-zero submatrix
//! of rank one with `r + s >= n + 2` forbids row orthogonality.

use crate::certificate::{find_certificate, verify_certificate, CertificateReport, SearchConfig};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::pattern::{row_ppo_failure, rows_orthogonality_realizable, Sign, SignPattern};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::time::Instant;

/// Row pair with its candidate plus- and minus-product columns.
type PairCandidates = ((usize, usize), Vec<usize>, Vec<usize>);

/// A row pair together with its assigned `(plus, minus)` column gadget.
type PairAssignment = ((usize, usize), (usize, usize));

/// A negative 4-cycle for every row pair, all columns globally distinct.
#[derive(Debug, Clone)]
pub struct FourCycleCover {
    pub rows: usize,
    /// `((i, k), (plus_col, minus_col))` for every pair `i < k`.
    pub pairs: Vec<((usize, usize), (usize, usize))>,
}

impl FourCycleCover {
    pub fn used_columns(&self) -> BTreeSet<usize> {
        self.pairs.iter().flat_map(|&(_, (j, l))| [j, l]).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs.iter().map(|&((i, k), (j, l))| {
                json!({"rows": [i, k], "plus_col": j, "minus_col": l})
            }).collect::<Vec<_>>()
        })
    }
}

/// Independent validation: every pair present, every gadget a negative
/// 4-cycle, all columns distinct.
pub fn validate_cover(s: &SignPattern, cover: &FourCycleCover) -> bool {
    let m = s.rows();
    if cover.rows != m {
        return false;
    }
    let mut expected: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..m {
        for k in i + 1..m {
            expected.insert((i, k));
        }
    }
    let seen: BTreeSet<(usize, usize)> = cover.pairs.iter().map(|&(p, _)| p).collect();
    if seen != expected {
        return false;
    }
    let mut used = BTreeSet::new();
    for &((i, k), (j, l)) in &cover.pairs {
        if j >= s.cols() || l >= s.cols() || j == l {
            return false;
        }
        if !used.insert(j) || !used.insert(l) {
            return false;
        }
        if s.get(i, j).mul(s.get(k, j)) != Sign::Plus {
            return false;
        }
        if s.get(i, l).mul(s.get(k, l)) != Sign::Minus {
            return false;
        }
    }
    true
}

/// Greedy cover search with slack `r` (column budget `2(m - t) + r` at step
/// `t`). Failure is not evidence of nonexistence.
pub fn find_cover_greedy(s: &SignPattern, r: usize) -> Result<Option<FourCycleCover>> {
    let m = s.rows();
    let n = s.cols();
    if r > m {
        return Err(Error::Domain(format!("slack r = {r} out of range 0..={m}")));
    }
    if m < 2 {
        return Ok(Some(FourCycleCover { rows: m, pairs: Vec::new() }));
    }
    let mut unused = vec![true; n];
    let mut pairs = Vec::new();
    for t in 0..m - 1 {
        let want = 2 * (m - 1 - t) + r;
        let window: Vec<usize> =
            (0..n).filter(|&j| unused[j] && !s.get(t, j).is_zero()).take(want).collect();
        if window.len() < want {
            return Ok(None);
        }
        for &j in &window {
            unused[j] = false;
        }
        let mut avail = vec![true; window.len()];
        for k in t + 1..m {
            let mut plus = None;
            let mut minus = None;
            for (idx, &j) in window.iter().enumerate() {
                if !avail[idx] {
                    continue;
                }
                match s.get(t, j).mul(s.get(k, j)) {
                    Sign::Plus if plus.is_none() => plus = Some((idx, j)),
                    Sign::Minus if minus.is_none() => minus = Some((idx, j)),
                    _ => {}
                }
                if plus.is_some() && minus.is_some() {
                    break;
                }
            }
            let (Some((pi, pj)), Some((mi, mj))) = (plus, minus) else {
                return Ok(None);
            };
            avail[pi] = false;
            avail[mi] = false;
            pairs.push(((t, k), (pj, mj)));
        }
    }
    Ok(Some(FourCycleCover { rows: m, pairs }))
}

/// Default size guard for the exhaustive cover search.
pub const COVER_EXACT_GUARD: (usize, usize) = (6, 24);

/// Exhaustive backtracking cover search; `None` proves no cover exists.
/// Errors if the pattern exceeds the guard or the deadline passes.
pub fn find_cover_exact_guarded(
    s: &SignPattern,
    guard: (usize, usize),
    deadline: Option<Instant>,
) -> Result<Option<FourCycleCover>> {
    let m = s.rows();
    let n = s.cols();
    if m > guard.0 || n > guard.1 {
        return Err(Error::SizeGuard(format!(
            "exact cover search limited to {}x{}, pattern is {m}x{n}",
            guard.0, guard.1
        )));
    }
    if m < 2 {
        return Ok(Some(FourCycleCover { rows: m, pairs: Vec::new() }));
    }
    if n < m * (m - 1) {
        return Ok(None); // not enough columns for disjoint gadgets
    }
    // candidate columns per pair, by product sign
    let mut pair_list: Vec<PairCandidates> = Vec::new();
    for i in 0..m {
        for k in i + 1..m {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for j in 0..n {
                match s.get(i, j).mul(s.get(k, j)) {
                    Sign::Plus => plus.push(j),
                    Sign::Minus => minus.push(j),
                    Sign::Zero => {}
                }
            }
            if plus.is_empty() || minus.is_empty() {
                return Ok(None);
            }
            pair_list.push(((i, k), plus, minus));
        }
    }

    struct Dfs<'a> {
        pair_list: &'a [PairCandidates],
        deadline: Option<Instant>,
    }
    impl Dfs<'_> {
        fn count_free(&self, entry: usize, used: u64) -> usize {
            let (_, plus, minus) = &self.pair_list[entry];
            let p = plus.iter().filter(|&&j| used & (1 << j) == 0).count();
            let q = minus.iter().filter(|&&j| used & (1 << j) == 0).count();
            p * q
        }

        fn run(
            &self,
            remaining: &mut Vec<usize>,
            used: u64,
            chosen: &mut Vec<PairAssignment>,
        ) -> Result<bool> {
            if remaining.is_empty() {
                return Ok(true);
            }
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Domain("exact cover search deadline exceeded".into()));
                }
            }
            // fail-first: pick the pair with the fewest available gadgets
            let (slot, _) = remaining
                .iter()
                .enumerate()
                .map(|(slot, &e)| (slot, self.count_free(e, used)))
                .min_by_key(|&(_, c)| c)
                .unwrap();
            let entry = remaining.swap_remove(slot);
            let (pair, plus, minus) = &self.pair_list[entry];
            for &j in plus {
                if used & (1 << j) != 0 {
                    continue;
                }
                for &l in minus {
                    if l == j || used & (1 << l) != 0 {
                        continue;
                    }
                    chosen.push((*pair, (j, l)));
                    if self.run(remaining, used | (1 << j) | (1 << l), chosen)? {
                        return Ok(true);
                    }
                    chosen.pop();
                }
            }
            remaining.push(entry);
            let last = remaining.len() - 1;
            remaining.swap(slot, last);
            Ok(false)
        }
    }

    let dfs = Dfs { pair_list: &pair_list, deadline };
    let mut remaining: Vec<usize> = (0..pair_list.len()).collect();
    let mut chosen = Vec::new();
    if dfs.run(&mut remaining, 0, &mut chosen)? {
        chosen.sort_by_key(|&(p, _)| p);
        Ok(Some(FourCycleCover { rows: m, pairs: chosen }))
    } else {
        Ok(None)
    }
}

pub fn find_cover_exact(s: &SignPattern) -> Result<Option<FourCycleCover>> {
    find_cover_exact_guarded(s, COVER_EXACT_GUARD, None)
}

/// A rank-one obstruction: `s` many columns agree up to global negation on
/// `r` rows with `r + s >= n + 2`, forbidding row orthogonality for
/// nowhere-zero patterns.
#[derive(Debug, Clone)]
pub struct Rank1Obstruction {
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
    /// Signs of the common column template on `row_set`, first entry `+`.
    pub template: Vec<i8>,
}

impl Rank1Obstruction {
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.row_set,
            "cols": self.col_set,
            "template": self.template,
        })
    }
}

pub const RANK1_GUARD: usize = 12;

/// Search every row subset for a bucket of columns equal up to negation.
pub fn rank1_obstruction(s: &SignPattern) -> Result<Option<Rank1Obstruction>> {
    if !s.is_nowhere_zero() {
        return Err(Error::Invalid("rank-one obstruction needs a nowhere-zero pattern".into()));
    }
    if s.rows() > RANK1_GUARD {
        return Err(Error::SizeGuard(format!("rank-one search limited to {RANK1_GUARD} rows")));
    }
    let m = s.rows();
    let n = s.cols();
    for mask in 1u32..(1 << m) {
        let r = mask.count_ones() as usize;
        if r < 2 {
            continue;
        }
        let rows: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let mut buckets: std::collections::BTreeMap<Vec<i8>, Vec<usize>> = Default::default();
        for j in 0..n {
            let mut key: Vec<i8> = rows.iter().map(|&i| s.get(i, j).as_i8()).collect();
            if key[0] < 0 {
                for v in key.iter_mut() {
                    *v = -*v;
                }
            }
            buckets.entry(key).or_default().push(j);
        }
        for (template, cols) in buckets {
            if r + cols.len() >= n + 2 {
                return Ok(Some(Rank1Obstruction { row_set: rows, col_set: cols, template }));
            }
        }
    }
    Ok(None)
}

/// Independent validation of a claimed obstruction.
pub fn validate_rank1(s: &SignPattern, obs: &Rank1Obstruction) -> bool {
    let r = obs.row_set.len();
    let sc = obs.col_set.len();
    if r < 2 || r + sc < s.cols() + 2 {
        return false;
    }
    if obs.template.len() != r || obs.template.contains(&0) {
        return false;
    }
    for &j in &obs.col_set {
        if j >= s.cols() {
            return false;
        }
        // column must equal +-template on the row set
        let entries: Vec<i8> = obs.row_set.iter().map(|&i| s.get(i, j).as_i8()).collect();
        if entries.contains(&0) {
            return false;
        }
        let direct = entries.iter().zip(&obs.template).all(|(a, b)| a == b);
        let negated = entries.iter().zip(&obs.template).all(|(a, b)| *a == -*b);
        if !direct && !negated {
            return false;
        }
    }
    true
}

/// Evidence attached to a decision.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Evidence {
    /// Accepted exact certificate, with the certifying matrix.
    Certificate(ExactMatrix, CertificateReport),
    Cover(FourCycleCover),
    Rank1(Rank1Obstruction),
    /// Failing row pair; `(i, i)` encodes a zero row.
    PpoFailure((usize, usize)),
    /// Name of a structural condition (used by callers wiring their own
    /// structural arguments into a verdict).
    Structural(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Allows,
    Forbidden,
    Unknown,
}

/// Outcome of the decision pipeline, always carrying re-verified evidence
/// for definite verdicts.
#[derive(Debug, Clone)]
pub struct DecisionVerdict {
    pub status: Status,
    pub evidence: Option<Evidence>,
    /// Which test fired.
    pub provenance: &'static str,
}

impl DecisionVerdict {
    pub fn to_json(&self, s: &SignPattern) -> Value {
        let evidence = match &self.evidence {
            None => Value::Null,
            Some(Evidence::Certificate(m, report)) => json!({
                "kind": "certificate",
                "matrix": m.to_json(),
                "report": report.to_json(),
            }),
            Some(Evidence::Cover(c)) => json!({"kind": "four-cycle-cover", "cover": c.to_json()}),
            Some(Evidence::Rank1(o)) => json!({"kind": "rank-one-submatrix", "obstruction": o.to_json()}),
            Some(Evidence::PpoFailure((i, k))) => {
                if i == k {
                    json!({"kind": "ppo-failure", "zero_row": i})
                } else {
                    json!({"kind": "ppo-failure", "rows": [i, k]})
                }
            }
            Some(Evidence::Structural(name)) => json!({"kind": "structural", "name": name}),
        };
        json!({
            "pattern": s.to_json(),
            "status": match self.status {
                Status::Allows => "allows",
                Status::Forbidden => "forbidden",
                Status::Unknown => "unknown",
            },
            "provenance": self.provenance,
            "evidence": evidence,
        })
    }
}

/// Budgets for [`decide_allows`].
#[derive(Debug, Clone)]
pub struct DecideConfig {
    pub search: SearchConfig,
    pub cover_guard: (usize, usize),
    /// Wall-clock bound for the exhaustive cover search.
    pub cover_deadline_ms: Option<u64>,
    /// Skip the randomized certificate stage entirely.
    pub skip_certificate: bool,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            search: SearchConfig::default(),
            cover_guard: COVER_EXACT_GUARD,
            cover_deadline_ms: Some(5_000),
            skip_certificate: false,
        }
    }
}

fn reverify_ppo_failure(s: &SignPattern, pair: (usize, usize)) -> bool {
    let (i, k) = pair;
    if i == k {
        return (0..s.cols()).all(|j| s.get(i, j).is_zero());
    }
    !rows_orthogonality_realizable(s, i, k)
}

/// The decision pipeline: row-PPO necessary test, rank-one obstruction,
/// cover search (greedy then exhaustive), randomized certificate search.
/// `Allows` and `Forbidden` always carry evidence re-verified by an
/// independent code path; `Unknown` makes no claim.
pub fn decide_allows(s: &SignPattern, cfg: &DecideConfig) -> Result<DecisionVerdict> {
    if !s.is_wide() {
        return Err(Error::NotWide { rows: s.rows(), cols: s.cols() });
    }
    // (1) row PPO is necessary
    if let Some(pair) = row_ppo_failure(s) {
        assert!(reverify_ppo_failure(s, pair));
        return Ok(DecisionVerdict {
            status: Status::Forbidden,
            evidence: Some(Evidence::PpoFailure(pair)),
            provenance: "row-ppo",
        });
    }
    // (2) rank-one obstruction for nowhere-zero patterns
    if s.is_nowhere_zero() && s.rows() <= RANK1_GUARD {
        if let Some(obs) = rank1_obstruction(s)? {
            assert!(validate_rank1(s, &obs));
            return Ok(DecisionVerdict {
                status: Status::Forbidden,
                evidence: Some(Evidence::Rank1(obs)),
                provenance: "rank-one-submatrix",
            });
        }
    }
    // (3) cover search: greedy, then exhaustive within the guard
    if s.cols() >= s.rows() * (s.rows() - 1) {
        let mut cover = find_cover_greedy(s, 0)?;
        if cover.is_none() && s.rows() <= cfg.cover_guard.0 && s.cols() <= cfg.cover_guard.1 {
            let deadline = cfg.cover_deadline_ms.map(|ms| {
                Instant::now() + std::time::Duration::from_millis(ms)
            });
            cover = match find_cover_exact_guarded(s, cfg.cover_guard, deadline) {
                Ok(c) => c,
                Err(Error::Domain(_)) => None, // deadline: treat as no evidence
                Err(e) => return Err(e),
            };
        }
        if let Some(c) = cover {
            assert!(validate_cover(s, &c));
            return Ok(DecisionVerdict {
                status: Status::Allows,
                evidence: Some(Evidence::Cover(c)),
                provenance: "four-cycle-cover",
            });
        }
    }
    // (4) randomized certificate search for nowhere-zero patterns
    if s.is_nowhere_zero() && !cfg.skip_certificate {
        if let Some(m) = find_certificate(s, &cfg.search)? {
            let report = verify_certificate(&m)?;
            assert!(report.accepted());
            assert_eq!(crate::exact::sgn_of(&m), *s);
            return Ok(DecisionVerdict {
                status: Status::Allows,
                evidence: Some(Evidence::Certificate(m, report)),
                provenance: "certificate-search",
            });
        }
    }
    Ok(DecisionVerdict { status: Status::Unknown, evidence: None, provenance: "exhausted" })
}
