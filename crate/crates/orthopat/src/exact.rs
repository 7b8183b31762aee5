//! Exact rational matrices: rank, null spaces, Gram matrices, and certified
//! rational square-root upper bounds.
//!
//! Everything here is exact; floats appear only in [`FloatMatrix`], which is
//! reserved for heuristic search and never used for verdicts. Rank uses
//! fraction-free (Bareiss) elimination over the integers after clearing row
//! denominators; null spaces come from rational reduced row echelon form.

use crate::error::{Error, Result};
use crate::pattern::{Sign, SignPattern, ZnzPattern};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::fmt;

pub type ExactScalar = BigRational;

/// Minimal field interface so elimination can run over Q and over Q(sqrt 2).
#[allow(clippy::should_implement_trait)]
pub trait FieldScalar: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl FieldScalar for BigRational {
    fn zero_elem() -> Self {
        BigRational::zero()
    }
    fn one_elem() -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `num/den`, or just `num` for integers.
pub fn scalar_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn scalar_from_str(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim().parse::<BigInt>().map_err(|_| Error::Json(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Json("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn scalar_to_json(q: &BigRational) -> Value {
    if q.denom().is_one() {
        if let Some(v) = q.numer().to_i64() {
            return json!(v);
        }
    }
    json!(scalar_to_string(q))
}

fn scalar_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat(i))
            } else {
                Err(Error::Json(format!("matrix entries must be integers or \"num/den\" strings, got {n}")))
            }
        }
        Value::String(s) => scalar_from_str(s),
        other => Err(Error::Json(format!("bad matrix entry {other}"))),
    }
}

/// An m x n matrix of arbitrary-precision rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<ExactMatrix> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> ExactMatrix {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        let data = rows.iter().flatten().map(|&v| rat(v)).collect();
        ExactMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_wide(&self) -> bool {
        self.rows <= self.cols
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product shapes".into()));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if FieldScalar::is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Scale row `i` by `c`.
    pub fn scale_row(&mut self, i: usize, c: &BigRational) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    /// Exact dot product of rows `i` and `k`.
    pub fn row_dot(&self, i: usize, k: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for j in 0..self.cols {
            acc += self.get(i, j) * self.get(k, j);
        }
        acc
    }

    pub fn zero_count(&self) -> usize {
        self.data.iter().filter(|v| Zero::is_zero(*v)).count()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.data.iter().all(|v| !Zero::is_zero(v))
    }

    /// Concatenate `other` on the right.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(ExactMatrix { rows: self.rows, cols, data })
    }

    pub fn to_f64(&self) -> FloatMatrix {
        let data = self.data.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
        FloatMatrix { rows: self.rows, cols: self.cols, data, tol: None }
    }

    pub fn to_json(&self) -> Value {
        let data: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(scalar_to_json).collect()))
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "data": data })
    }

    pub fn from_json(v: &Value) -> Result<ExactMatrix> {
        let rows = v["rows"].as_u64().ok_or_else(|| Error::Json("missing rows".into()))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| Error::Json("missing cols".into()))? as usize;
        let rows_json = v["data"].as_array().ok_or_else(|| Error::Json("missing data".into()))?;
        if rows_json.len() != rows {
            return Err(Error::Json("data row count mismatch".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in rows_json {
            let row = row.as_array().ok_or_else(|| Error::Json("data rows must be arrays".into()))?;
            if row.len() != cols {
                return Err(Error::Json("data column count mismatch".into()));
            }
            for entry in row {
                data.push(scalar_from_json(entry)?);
            }
        }
        ExactMatrix::new(rows, cols, data)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(scalar_to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Entrywise signs.
pub fn sgn_of(a: &ExactMatrix) -> SignPattern {
    let entries = a
        .data
        .iter()
        .map(|q| {
            if Zero::is_zero(q) {
                Sign::Zero
            } else if q.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SignPattern::new(a.rows, a.cols, entries).expect("shape is valid")
}

/// Entrywise support.
pub fn znz_of(a: &ExactMatrix) -> ZnzPattern {
    sgn_of(a).znz()
}

pub fn sgn_of_float(a: &FloatMatrix) -> Result<SignPattern> {
    let mut entries = Vec::with_capacity(a.rows * a.cols);
    for &v in &a.data {
        if v.is_nan() {
            return Err(Error::Invalid("NaN entry has no sign".into()));
        }
        entries.push(if v > 0.0 {
            Sign::Plus
        } else if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Zero
        });
    }
    SignPattern::new(a.rows, a.cols, entries)
}

/// Entrywise support of a float matrix.
pub fn znz_of_float(a: &FloatMatrix) -> Result<ZnzPattern> {
    Ok(sgn_of_float(a)?.znz())
}

/// The exact Gram matrix `A * A^T`.
pub fn gram(a: &ExactMatrix) -> ExactMatrix {
    let mut g = ExactMatrix::zero(a.rows, a.rows);
    for i in 0..a.rows {
        for k in i..a.rows {
            let d = a.row_dot(i, k);
            g.set(i, k, d.clone());
            g.set(k, i, d);
        }
    }
    g
}

pub fn is_diagonal(a: &ExactMatrix) -> bool {
    (0..a.rows).all(|i| (0..a.cols).all(|j| i == j || Zero::is_zero(a.get(i, j))))
}

/// Rank by fraction-free (Bareiss) elimination.
///
/// Row denominators are cleared first; the elimination then stays in the
/// integers, each division being exact by the Sylvester identity.
pub fn rank_exact(a: &ExactMatrix) -> usize {
    let mut m: Vec<Vec<BigInt>> = (0..a.rows)
        .map(|i| {
            let lcm = a.row(i).iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            a.row(i).iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        for r in pivot_row + 1..rows {
            for c in col + 1..cols {
                let t = (&m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c]) / &prev;
                m[r][c] = t;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_row += 1;
    }
    pivot_row
}

/// Reduced row echelon form over any field; returns pivot column indices.
pub fn field_rref<T: FieldScalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = T::one_elem().div(&m[pr][col]);
        for c in col..cols {
            m[pr][c] = m[pr][c].mul(&inv);
        }
        for r in 0..rows {
            if r != pr && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let t = m[r][c].sub(&f.mul(&m[pr][c]));
                    m[r][c] = t;
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// Null-space basis over any field, one vector per free column.
pub fn field_nullspace<T: FieldScalar>(rows: usize, cols: usize, entries: Vec<T>) -> Vec<Vec<T>> {
    assert_eq!(entries.len(), rows * cols);
    let mut m: Vec<Vec<T>> = entries.chunks(cols).map(|c| c.to_vec()).collect();
    let pivots = field_rref(&mut m);
    let pivot_set: Vec<Option<usize>> = {
        let mut ps = vec![None; cols];
        for (r, &c) in pivots.iter().enumerate() {
            ps[c] = Some(r);
        }
        ps
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![T::zero_elem(); cols];
        v[free] = T::one_elem();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = m[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Exact null-space basis of `A` (vectors `v` with `A v = 0`).
pub fn nullspace_exact(a: &ExactMatrix) -> Vec<Vec<BigRational>> {
    field_nullspace(a.rows, a.cols, a.data.clone())
}

/// Rational `u` with `u^2 >= q` and `u - sqrt(q) <= 2^-bits * max(1, sqrt(q))`.
///
/// Exact when `q` is the square of a rational.
pub fn rational_sqrt_upper_bound(q: &BigRational, bits: u32) -> Result<BigRational> {
    if q.is_negative() {
        return Err(Error::Domain("square root of a negative rational".into()));
    }
    if Zero::is_zero(q) {
        return Ok(BigRational::zero());
    }
    let k: BigInt = BigInt::one() << bits;
    let radicand = q.numer() * q.denom() * &k * &k;
    let floor = radicand.sqrt();
    let c = if &floor * &floor == radicand { floor } else { floor + 1 };
    Ok(BigRational::new(c, q.denom() * k))
}

/// An m x n float matrix with a rank tolerance; heuristic use only.
#[derive(Debug, Clone)]
pub struct FloatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
    /// Rank tolerance; `None` means `1e-9 * max |entry|`.
    pub tol: Option<f64>,
}

impl FloatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<FloatMatrix> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch("float matrix shape".into()));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("float matrix entries must be finite".into()));
        }
        Ok(FloatMatrix { rows, cols, data, tol: None })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn effective_tol(&self) -> f64 {
        self.tol.unwrap_or_else(|| {
            1e-9 * self.data.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0)
        })
    }

    /// Rank by Gaussian elimination with partial pivoting and tolerance.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<f64>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let tol = self.effective_tol();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let (best, mag) = (pr..self.rows)
                .map(|r| (r, m[r][col].abs()))
                .fold((pr, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag <= tol {
                continue;
            }
            m.swap(pr, best);
            for r in pr + 1..self.rows {
                let f = m[r][col] / m[pr][col];
                for c in col..self.cols {
                    m[r][c] -= f * m[pr][c];
                }
            }
            pr += 1;
        }
        pr
    }
}
