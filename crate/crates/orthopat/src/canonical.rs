//! Canonical forms of sign patterns under sign equivalence.
//!
//! The canonical form is the lexicographically least pattern in the orbit of
//! signed row/column permutations, reading entries row-major with the order
//! `+ < - < 0`. Two patterns are sign equivalent iff their canonical forms
//! are equal. The search assigns image rows one at a time, keeps an ordered
//! partition of columns refined by the rows placed so far, and prunes any
//! branch whose prefix already exceeds the best complete image found.

use crate::error::{Error, Result};
use crate::pattern::{Sign, SignPattern};

/// Default cap on `rows * cols` for the exhaustive search.
pub const DEFAULT_CANONICAL_GUARD: usize = 42;

#[derive(Clone)]
struct ColumnState {
    /// Ordered groups of column indices; columns in one group are still
    /// interchangeable given the image rows placed so far.
    groups: Vec<Vec<usize>>,
    /// Per-column sign, fixed by the first nonzero image entry; `0` = free.
    signs: Vec<i8>,
}

struct Search<'a> {
    s: &'a SignPattern,
    m: usize,
    n: usize,
    best: Option<Vec<Sign>>,
}

impl<'a> Search<'a> {
    /// Render one candidate image row and the refined column state.
    fn render(
        &self,
        state: &ColumnState,
        row: usize,
        row_sign: i8,
    ) -> (Vec<Sign>, ColumnState) {
        let mut rendered = Vec::with_capacity(self.n);
        let mut new_groups = Vec::with_capacity(state.groups.len());
        let mut new_signs = state.signs.clone();
        for group in &state.groups {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            let mut zero = Vec::new();
            for &c in group {
                let raw = self.s.get(row, c);
                if raw.is_zero() {
                    zero.push(c);
                    continue;
                }
                let fixed = state.signs[c];
                if fixed == 0 {
                    // Free column: fix its sign so this entry becomes '+'.
                    new_signs[c] = row_sign * raw.as_i8();
                    plus.push(c);
                } else if row_sign * fixed * raw.as_i8() > 0 {
                    plus.push(c);
                } else {
                    minus.push(c);
                }
            }
            for _ in 0..plus.len() {
                rendered.push(Sign::Plus);
            }
            for _ in 0..minus.len() {
                rendered.push(Sign::Minus);
            }
            for _ in 0..zero.len() {
                rendered.push(Sign::Zero);
            }
            for sub in [plus, minus, zero] {
                if !sub.is_empty() {
                    new_groups.push(sub);
                }
            }
        }
        (rendered, ColumnState { groups: new_groups, signs: new_signs })
    }

    fn dfs(&mut self, used: u64, state: &ColumnState, prefix: &mut Vec<Sign>) {
        let depth = prefix.len() / self.n;
        if depth == self.m {
            if self.best.as_ref().is_none_or(|b| prefix.as_slice() < b.as_slice()) {
                self.best = Some(prefix.clone());
            }
            return;
        }
        for row in 0..self.m {
            if used & (1 << row) != 0 {
                continue;
            }
            for row_sign in [1i8, -1] {
                let (rendered, next_state) = self.render(state, row, row_sign);
                prefix.extend_from_slice(&rendered);
                let viable = match &self.best {
                    Some(b) => prefix.as_slice() <= &b[..prefix.len()],
                    None => true,
                };
                if viable {
                    self.dfs(used | (1 << row), &next_state, prefix);
                }
                prefix.truncate(prefix.len() - self.n);
            }
        }
    }
}

pub fn canonical_form_guarded(s: &SignPattern, max_cells: usize) -> Result<SignPattern> {
    let (m, n) = (s.rows(), s.cols());
    if m * n > max_cells {
        return Err(Error::SizeGuard(format!(
            "canonical form search limited to {max_cells} cells, pattern has {}",
            m * n
        )));
    }
    let mut search = Search { s, m, n, best: None };
    let state = ColumnState { groups: vec![(0..n).collect()], signs: vec![0; n] };
    let mut prefix = Vec::with_capacity(m * n);
    search.dfs(0, &state, &mut prefix);
    SignPattern::new(m, n, search.best.expect("orbit is nonempty"))
}

/// Lex-least element of the sign-equivalence orbit (guarded search).
pub fn canonical_form(s: &SignPattern) -> Result<SignPattern> {
    canonical_form_guarded(s, DEFAULT_CANONICAL_GUARD)
}

/// Sign equivalence decided through canonical forms.
pub fn sign_equivalent(a: &SignPattern, b: &SignPattern) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
