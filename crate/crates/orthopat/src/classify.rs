//! Enumeration of nowhere-zero sign patterns up to sign equivalence and
//! classification of the patterns that minimally allow orthogonality.
//!
//! A pattern *minimally allows orthogonality* when it allows row
//! orthogonality but every single-column deletion does not. For square
//! patterns with at most five rows, allowing row orthogonality is equivalent
//! to being row and column PPO, which turns the square stage into a pure
//! pair scan. For one extra column the pipeline is: a deletion that allows
//! (by the square criterion) makes the pattern a non-minimal allower, since
//! a nowhere-zero square realization with orthogonal rows automatically has
//! the SIPP and padding a zero column then perturbing realizes every
//! superpattern. Otherwise the full decision pipeline runs, and minimality
//! follows from the deletions all being non-allowers.

use crate::canonical::canonical_form;
use crate::combinatorics::{decide_allows, DecideConfig, Status};
use crate::error::{Error, Result};
use crate::pattern::{column_ppo, row_ppo, Sign, SignPattern};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Guards for the exhaustive enumeration.
pub const ENUM_MAX_ROWS: usize = 5;
pub const ENUM_MAX_COLS: usize = 6;

/// All nowhere-zero m x n sign-equivalence classes, as canonical forms.
///
/// Every class has a representative whose first row and first column are all
/// `+`, so only the inner `(m-1) x (n-1)` sign choices are enumerated.
pub fn enumerate_classes(m: usize, n: usize) -> Result<Vec<SignPattern>> {
    if m == 0 || n == 0 || m > ENUM_MAX_ROWS || n > ENUM_MAX_COLS {
        return Err(Error::SizeGuard(format!(
            "class enumeration limited to {ENUM_MAX_ROWS}x{ENUM_MAX_COLS}, asked for {m}x{n}"
        )));
    }
    let free = (m - 1) * (n - 1);
    let mut seen: BTreeMap<SignPattern, ()> = BTreeMap::new();
    for mask in 0u64..(1u64 << free) {
        let mut entries = vec![Sign::Plus; m * n];
        let mut bit = 0;
        for i in 1..m {
            for j in 1..n {
                if mask >> bit & 1 == 1 {
                    entries[i * n + j] = Sign::Minus;
                }
                bit += 1;
            }
        }
        let s = SignPattern::new(m, n, entries)?;
        seen.entry(canonical_form(&s)?).or_insert(());
    }
    Ok(seen.into_keys().collect())
}

/// Square patterns with at most five rows allow row orthogonality iff they
/// are row and column PPO.
pub fn square_allows_by_ppo(s: &SignPattern) -> Result<bool> {
    if s.rows() != s.cols() || s.rows() > 5 {
        return Err(Error::SizeGuard("square PPO criterion holds for m = n <= 5".into()));
    }
    if !s.is_nowhere_zero() {
        return Err(Error::Invalid("square PPO criterion needs a nowhere-zero pattern".into()));
    }
    Ok(row_ppo(s) && column_ppo(s))
}

/// One classified equivalence class.
#[derive(Debug, Clone)]
pub struct ClassRecord {
    pub n: usize,
    /// Canonical representative.
    pub pattern: SignPattern,
    pub status: Status,
    pub provenance: String,
    pub minimal: bool,
    /// True when the verdict came back Unknown; the run is then incomplete.
    pub unresolved: bool,
}

#[derive(Debug, Clone)]
pub struct ClassificationRun {
    pub m: usize,
    pub n_range: (usize, usize),
    pub classes: Vec<ClassRecord>,
    /// Set when any class was left unresolved rather than guessed.
    pub incomplete: bool,
    /// Set when the (5, 6) stage used the duplicate-column reduction set
    /// instead of the full enumeration.
    pub restricted: bool,
}

impl ClassificationRun {
    pub fn minimal_classes(&self) -> Vec<&ClassRecord> {
        self.classes.iter().filter(|c| c.minimal).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n_range": [self.n_range.0, self.n_range.1],
            "incomplete": self.incomplete,
            "restricted": self.restricted,
            "classes": self.classes.iter().map(|c| json!({
                "n": c.n,
                "pattern": c.pattern.to_json(),
                "status": match c.status {
                    Status::Allows => "allows",
                    Status::Forbidden => "forbidden",
                    Status::Unknown => "unknown",
                },
                "provenance": c.provenance,
                "minimal": c.minimal,
                "unresolved": c.unresolved,
            })).collect::<Vec<_>>(),
        })
    }

    /// Text table of the minimal representatives, one block per class.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("minimal classes for m = {}\n", self.m));
        if self.incomplete {
            out.push_str("(incomplete: some classes unresolved)\n");
        }
        for rec in self.minimal_classes() {
            out.push_str(&format!("--- {}x{} ---\n{}\n", self.m, rec.n, rec.pattern));
        }
        out
    }
}

/// Configuration for classification runs.
#[derive(Debug, Clone, Default)]
pub struct ClassifyConfig {
    pub decide: DecideConfig,
    /// Run the unrestricted (5, 6) enumeration instead of the reduction set.
    pub full_5x6: bool,
}

/// The 5x4 sign-equivalence classes having a representative with at most
/// five negative entries (every 5x4 class has one).
fn five_by_four_reduction_classes() -> Result<Vec<SignPattern>> {
    let mut seen: BTreeMap<SignPattern, ()> = BTreeMap::new();
    let cells = 20usize;
    // all patterns with at most 5 negatives, via combinations
    fn combos(cells: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..cells {
            cur.push(i);
            combos(cells, k, i + 1, cur, out);
            cur.pop();
        }
    }
    for k in 0..=5 {
        let mut sets = Vec::new();
        combos(cells, k, 0, &mut Vec::new(), &mut sets);
        for set in sets {
            let mut entries = vec![Sign::Plus; cells];
            for &i in &set {
                entries[i] = Sign::Minus;
            }
            let s = SignPattern::new(5, 4, entries)?;
            seen.entry(canonical_form(&s)?).or_insert(());
        }
    }
    Ok(seen.into_keys().collect())
}

/// Candidate 5x6 patterns of the reduction: each 5x4 class extended by
/// duplicating two distinct columns or tripling one.
fn restricted_5x6_candidates() -> Result<Vec<SignPattern>> {
    let mut seen: BTreeMap<SignPattern, ()> = BTreeMap::new();
    for r in five_by_four_reduction_classes()? {
        let col = |j: usize| -> Vec<Sign> { (0..5).map(|i| r.get(i, j)).collect() };
        let mut extend = |extra: &[usize]| -> Result<()> {
            let mut cols: Vec<Vec<Sign>> = (0..4).map(col).collect();
            for &j in extra {
                cols.push(col(j));
            }
            let mut entries = Vec::with_capacity(30);
            for i in 0..5 {
                for c in &cols {
                    entries.push(c[i]);
                }
            }
            let s = SignPattern::new(5, 6, entries)?;
            seen.entry(canonical_form(&s)?).or_insert(());
            Ok(())
        };
        for i in 0..4 {
            for j in i + 1..4 {
                extend(&[i, j])?;
            }
            extend(&[i, i])?;
        }
    }
    Ok(seen.into_keys().collect())
}

fn classify_square(m: usize, classes: Vec<SignPattern>) -> Result<Vec<ClassRecord>> {
    classes
        .into_iter()
        .map(|s| {
            let allows = square_allows_by_ppo(&s)?;
            Ok(ClassRecord {
                n: m,
                pattern: s,
                status: if allows { Status::Allows } else { Status::Forbidden },
                provenance: "square-ppo-criterion".into(),
                // column deletions leave fewer columns than rows, which
                // cannot be row orthogonal, so allowing squares are minimal
                minimal: allows,
                unresolved: false,
            })
        })
        .collect()
}

fn classify_extension(
    n: usize,
    classes: Vec<SignPattern>,
    cfg: &ClassifyConfig,
) -> Result<Vec<ClassRecord>> {
    let mut out = Vec::new();
    for s in classes {
        // a square deletion that allows makes this a non-minimal allower
        let has_allowing_deletion =
            (0..s.cols()).any(|j| square_allows_by_ppo(&s.delete_column(j)).unwrap_or(false));
        let rec = if has_allowing_deletion {
            ClassRecord {
                n,
                pattern: s,
                status: Status::Allows,
                provenance: "allowing-square-deletion".into(),
                minimal: false,
                unresolved: false,
            }
        } else {
            // every deletion fails the square criterion, so minimality
            // reduces to this pattern's own verdict
            let verdict = decide_allows(&s, &cfg.decide)?;
            ClassRecord {
                n,
                pattern: s,
                status: verdict.status,
                provenance: verdict.provenance.into(),
                minimal: verdict.status == Status::Allows,
                unresolved: verdict.status == Status::Unknown,
            }
        };
        out.push(rec);
    }
    Ok(out)
}

/// Classify every class for `n = m ..= max_n` (`max_n <= m + 1`).
///
/// Unknown verdicts mark the run incomplete; they are never silently treated
/// as Forbidden.
pub fn minimal_allows(m: usize, max_n: usize, cfg: &ClassifyConfig) -> Result<ClassificationRun> {
    if m == 0 || m > 5 {
        return Err(Error::SizeGuard("classification supports 1 <= m <= 5".into()));
    }
    if max_n < m || max_n > m + 1 {
        return Err(Error::SizeGuard(
            "classification stages cover n = m and n = m + 1; larger n is out of scope".into(),
        ));
    }
    let mut classes = Vec::new();
    let mut restricted = false;
    for n in m..=max_n {
        if m == 1 {
            // every nonzero 1 x n pattern allows; only n = 1 is minimal
            let s = SignPattern::filled(1, n, Sign::Plus);
            classes.push(ClassRecord {
                n,
                pattern: s,
                status: Status::Allows,
                provenance: "single-row".into(),
                minimal: n == 1,
                unresolved: false,
            });
            continue;
        }
        if n == m {
            classes.extend(classify_square(m, enumerate_classes(m, n)?)?);
        } else if (m, n) == (5, 6) && !cfg.full_5x6 {
            restricted = true;
            classes.extend(classify_extension(n, restricted_5x6_candidates()?, cfg)?);
        } else {
            classes.extend(classify_extension(n, enumerate_classes(m, n)?, cfg)?);
        }
    }
    let incomplete = classes.iter().any(|c| c.unresolved);
    Ok(ClassificationRun { m, n_range: (m, max_n), classes, incomplete, restricted })
}
