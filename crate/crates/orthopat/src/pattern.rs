//! Sign patterns, zero-nonzero patterns, and their elementary combinatorics.
//!
//! A sign pattern is an array over `{+, -, 0}` recording the signs of a real
//! matrix; a znz pattern only records the support. Patterns are compared up
//! to *sign equivalence* (signed row and column permutations). This module
//! holds the representations, the text/JSON formats, and the pairwise row
//! predicates (potential pairwise orthogonality, combinatorial orthogonality,
//! negative 4-cycles) that the decision pipelines build on.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use serde_json::{json, Value};
use std::fmt;

/// One entry of a sign pattern.
///
/// The ordering `Plus < Minus < Zero` is the one used for canonical forms
/// (lexicographically least orbit element).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn of_i64(v: i64) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Greater => Sign::Plus,
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => Sign::Zero,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// Sign product, conforming to real arithmetic.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    /// +1, -1 or 0.
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }
}

/// An m x n array over `{+, -, 0}`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    rows: usize,
    cols: usize,
    entries: Vec<Sign>,
}

/// An m x n array over `{*, 0}`; `true` marks a nonzero position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnzPattern {
    pub rows: usize,
    pub cols: usize,
    pub nonzero: Vec<bool>,
}

impl SignPattern {
    pub fn new(rows: usize, cols: usize, entries: Vec<Sign>) -> Result<SignPattern> {
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("pattern must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(SignPattern { rows, cols, entries })
    }

    pub fn filled(rows: usize, cols: usize, s: Sign) -> SignPattern {
        SignPattern { rows, cols, entries: vec![s; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Sign] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// m <= n.
    pub fn is_wide(&self) -> bool {
        self.rows <= self.cols
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.entries.iter().all(|s| !s.is_zero())
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|s| s.is_zero()).count()
    }

    /// Square with zero diagonal and nonzero off-diagonal entries.
    pub fn is_nonzero_hollow(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.get(i, j).is_zero();
                if (i == j) != z {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> SignPattern {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        SignPattern { rows: self.cols, cols: self.rows, entries }
    }

    /// The pattern with column `j` removed.
    pub fn delete_column(&self, j: usize) -> SignPattern {
        assert!(self.cols > 1 && j < self.cols);
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for c in 0..self.cols {
                if c != j {
                    entries.push(self.get(i, c));
                }
            }
        }
        SignPattern { rows: self.rows, cols: self.cols - 1, entries }
    }

    /// Append the columns of `other` on the right.
    pub fn hstack(&self, other: &SignPattern) -> Result<SignPattern> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack: row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(SignPattern { rows: self.rows, cols, entries })
    }

    pub fn znz(&self) -> ZnzPattern {
        ZnzPattern {
            rows: self.rows,
            cols: self.cols,
            nonzero: self.entries.iter().map(|s| !s.is_zero()).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let s: String = self.entries.iter().map(|e| e.to_char()).collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": s })
    }

    pub fn from_json(v: &Value) -> Result<SignPattern> {
        let rows = v["rows"].as_u64().ok_or_else(|| Error::Json("missing rows".into()))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| Error::Json("missing cols".into()))? as usize;
        let s = v["entries"].as_str().ok_or_else(|| Error::Json("missing entries".into()))?;
        let entries: Option<Vec<Sign>> = s.chars().map(Sign::from_char).collect();
        let entries = entries.ok_or_else(|| Error::Json("bad entry character".into()))?;
        SignPattern::new(rows, cols, entries)
    }

    /// A random signed permutation equivalence of matching shape.
    pub fn random_equivalence(&self, rng: &mut SplitMix64) -> SignedPermEquivalence {
        SignedPermEquivalence::random(self.rows, self.cols, rng)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j).to_char())?;
            }
        }
        Ok(())
    }
}

/// Parse the line-per-row text form: characters `+ - 0`, equal-length rows.
pub fn parse_pattern(text: &str) -> Result<SignPattern> {
    let mut rows_data: Vec<Vec<Sign>> = Vec::new();
    let mut width: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(line.len());
        for (colno, c) in line.chars().enumerate() {
            match Sign::from_char(c) {
                Some(s) => row.push(s),
                None => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: colno + 1,
                        msg: format!("illegal character {c:?}, expected one of + - 0"),
                    })
                }
            }
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: row.len().min(w) + 1,
                    msg: format!("ragged row: expected {w} entries, got {}", row.len()),
                });
            }
        } else {
            width = Some(row.len());
        }
        rows_data.push(row);
    }
    let width = width.ok_or(Error::Parse { line: 1, col: 1, msg: "empty input".into() })?;
    let rows = rows_data.len();
    SignPattern::new(rows, width, rows_data.into_iter().flatten().collect())
}

/// Inverse of [`parse_pattern`]; `Display` renders the same form.
pub fn format_pattern(s: &SignPattern) -> String {
    s.to_string()
}

/// A signed permutation equivalence: `result[i][j] = rs[i] * cs[j] * S[rp[i]][cp[j]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermEquivalence {
    pub row_perm: Vec<usize>,
    pub row_signs: Vec<i8>,
    pub col_perm: Vec<usize>,
    pub col_signs: Vec<i8>,
}

impl SignedPermEquivalence {
    pub fn identity(rows: usize, cols: usize) -> SignedPermEquivalence {
        SignedPermEquivalence {
            row_perm: (0..rows).collect(),
            row_signs: vec![1; rows],
            col_perm: (0..cols).collect(),
            col_signs: vec![1; cols],
        }
    }

    pub fn random(rows: usize, cols: usize, rng: &mut SplitMix64) -> SignedPermEquivalence {
        let mut e = SignedPermEquivalence::identity(rows, cols);
        rng.shuffle(&mut e.row_perm);
        rng.shuffle(&mut e.col_perm);
        for s in e.row_signs.iter_mut() {
            *s = rng.next_sign();
        }
        for s in e.col_signs.iter_mut() {
            *s = rng.next_sign();
        }
        e
    }

    fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.row_perm.len() != rows
            || self.row_signs.len() != rows
            || self.col_perm.len() != cols
            || self.col_signs.len() != cols
        {
            return Err(Error::DimensionMismatch("equivalence shape does not match pattern".into()));
        }
        Ok(())
    }

    pub fn inverse(&self) -> SignedPermEquivalence {
        let m = self.row_perm.len();
        let n = self.col_perm.len();
        let mut inv = SignedPermEquivalence::identity(m, n);
        for i in 0..m {
            inv.row_perm[self.row_perm[i]] = i;
            inv.row_signs[self.row_perm[i]] = self.row_signs[i];
        }
        for j in 0..n {
            inv.col_perm[self.col_perm[j]] = j;
            inv.col_signs[self.col_perm[j]] = self.col_signs[j];
        }
        inv
    }

    /// `self` after `first`: applying the result equals applying `first` then `self`.
    pub fn compose(&self, first: &SignedPermEquivalence) -> SignedPermEquivalence {
        let m = self.row_perm.len();
        let n = self.col_perm.len();
        let mut out = SignedPermEquivalence::identity(m, n);
        for i in 0..m {
            out.row_perm[i] = first.row_perm[self.row_perm[i]];
            out.row_signs[i] = self.row_signs[i] * first.row_signs[self.row_perm[i]];
        }
        for j in 0..n {
            out.col_perm[j] = first.col_perm[self.col_perm[j]];
            out.col_signs[j] = self.col_signs[j] * first.col_signs[self.col_perm[j]];
        }
        out
    }
}

/// Apply a signed permutation equivalence to a pattern.
pub fn apply_equiv(s: &SignPattern, e: &SignedPermEquivalence) -> Result<SignPattern> {
    e.check_shape(s.rows(), s.cols())?;
    let mut entries = Vec::with_capacity(s.rows() * s.cols());
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            let mut v = s.get(e.row_perm[i], e.col_perm[j]);
            if e.row_signs[i] * e.col_signs[j] < 0 {
                v = v.negate();
            }
            entries.push(v);
        }
    }
    SignPattern::new(s.rows(), s.cols(), entries)
}

/// True iff `r` agrees with `s` on every nonzero entry of `s`.
pub fn is_superpattern(r: &SignPattern, s: &SignPattern) -> Result<bool> {
    if r.rows() != s.rows() || r.cols() != s.cols() {
        return Err(Error::DimensionMismatch("superpattern comparison needs equal shapes".into()));
    }
    Ok(s
        .entries()
        .iter()
        .zip(r.entries())
        .all(|(se, re)| se.is_zero() || se == re))
}

/// Outcome of the pair test behind row potential pairwise orthogonality.
///
/// Two pattern rows admit orthogonal realizations iff their entrywise sign
/// products are all zero, or contain both a `+` and a `-` (a sum of nonzero
/// same-signed terms cannot vanish).
pub fn rows_orthogonality_realizable(s: &SignPattern, i: usize, k: usize) -> bool {
    let mut saw_plus = false;
    let mut saw_minus = false;
    for j in 0..s.cols() {
        match s.get(i, j).mul(s.get(k, j)) {
            Sign::Plus => saw_plus = true,
            Sign::Minus => saw_minus = true,
            Sign::Zero => {}
        }
    }
    (!saw_plus && !saw_minus) || (saw_plus && saw_minus)
}

fn row_is_zero(s: &SignPattern, i: usize) -> bool {
    (0..s.cols()).all(|j| s.get(i, j).is_zero())
}

/// No zero row, and every row pair admits orthogonal realizations.
pub fn row_ppo(s: &SignPattern) -> bool {
    if (0..s.rows()).any(|i| row_is_zero(s, i)) {
        return false;
    }
    for i in 0..s.rows() {
        for k in i + 1..s.rows() {
            if !rows_orthogonality_realizable(s, i, k) {
                return false;
            }
        }
    }
    true
}

pub fn column_ppo(s: &SignPattern) -> bool {
    row_ppo(&s.transpose())
}

/// First row pair that breaks row PPO, or a zero row reported as `(i, i)`.
pub fn row_ppo_failure(s: &SignPattern) -> Option<(usize, usize)> {
    for i in 0..s.rows() {
        if row_is_zero(s, i) {
            return Some((i, i));
        }
    }
    for i in 0..s.rows() {
        for k in i + 1..s.rows() {
            if !rows_orthogonality_realizable(s, i, k) {
                return Some((i, k));
            }
        }
    }
    None
}

/// Supports of rows `i` and `k` are disjoint.
pub fn combinatorially_orthogonal(s: &SignPattern, i: usize, k: usize) -> Result<bool> {
    if i >= s.rows() || k >= s.rows() {
        return Err(Error::IndexOutOfRange(format!("rows ({i}, {k}) in a {}-row pattern", s.rows())));
    }
    Ok((0..s.cols()).all(|j| s.get(i, j).is_zero() || s.get(k, j).is_zero()))
}

pub fn has_combinatorially_orthogonal_row_pair(s: &SignPattern) -> bool {
    for i in 0..s.rows() {
        for k in i + 1..s.rows() {
            if combinatorially_orthogonal(s, i, k).unwrap() {
                return true;
            }
        }
    }
    false
}

/// Columns `(j, l)` witnessing a negative 4-cycle between rows `i` and `k`:
/// the sign products at `j` and `l` are `+` and `-` respectively.
///
/// The defining display for negative 4-cycles in the source material repeats
/// one subscript pair; this is the standard reading (two columns with
/// opposite nonzero sign products), which is also the one its applications
/// rely on.
pub fn negative_4cycle(s: &SignPattern, i: usize, k: usize) -> Result<Option<(usize, usize)>> {
    if i == k {
        return Err(Error::Invalid("negative 4-cycle needs two distinct rows".into()));
    }
    if i >= s.rows() || k >= s.rows() {
        return Err(Error::IndexOutOfRange(format!("rows ({i}, {k}) in a {}-row pattern", s.rows())));
    }
    let mut plus = None;
    let mut minus = None;
    for j in 0..s.cols() {
        match s.get(i, j).mul(s.get(k, j)) {
            Sign::Plus if plus.is_none() => plus = Some(j),
            Sign::Minus if minus.is_none() => minus = Some(j),
            _ => {}
        }
        if let (Some(p), Some(m)) = (plus, minus) {
            return Ok(Some((p, m)));
        }
    }
    Ok(None)
}
