//! Exact arithmetic in Q(sqrt 2), the field of numbers `a + b*sqrt(2)` with
//! rational `a`, `b`.
//!
//! A few named matrices have entries involving `sqrt 2`; representing them in
//! this quadratic extension keeps every computation on them exact. Division
//! multiplies by the conjugate; the norm `a^2 - 2 b^2` vanishes only at zero
//! because `sqrt 2` is irrational.

use crate::error::{Error, Result};
use crate::exact::{field_nullspace, scalar_to_string, FieldScalar};
use crate::pattern::{Sign, SignPattern};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

/// `a + b * sqrt(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sqrt2Ext {
    pub a: BigRational,
    pub b: BigRational,
}

impl Sqrt2Ext {
    pub fn new(a: BigRational, b: BigRational) -> Sqrt2Ext {
        Sqrt2Ext { a, b }
    }

    pub fn from_int(v: i64) -> Sqrt2Ext {
        Sqrt2Ext::new(crate::exact::rat(v), BigRational::zero())
    }

    /// `v * sqrt(2)`.
    pub fn sqrt2_times(v: i64) -> Sqrt2Ext {
        Sqrt2Ext::new(BigRational::zero(), crate::exact::rat(v))
    }

    /// `n/d + (sn/sd) sqrt(2)`.
    pub fn from_parts(n: i64, d: i64, sn: i64, sd: i64) -> Sqrt2Ext {
        Sqrt2Ext::new(crate::exact::ratio(n, d), crate::exact::ratio(sn, sd))
    }

    pub fn rational(&self) -> Option<&BigRational> {
        if Zero::is_zero(&self.b) {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Sign of the real number `a + b sqrt 2`.
    pub fn sign(&self) -> Sign {
        let za = Zero::is_zero(&self.a);
        let zb = Zero::is_zero(&self.b);
        if za && zb {
            return Sign::Zero;
        }
        if zb {
            return if self.a.is_positive() { Sign::Plus } else { Sign::Minus };
        }
        if za {
            return if self.b.is_positive() { Sign::Plus } else { Sign::Minus };
        }
        if self.a.is_positive() == self.b.is_positive() {
            return if self.a.is_positive() { Sign::Plus } else { Sign::Minus };
        }
        // opposite signs: compare a^2 with 2 b^2
        let a2 = &self.a * &self.a;
        let b2 = (&self.b * &self.b) * crate::exact::rat(2);
        if a2 > b2 {
            if self.a.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            }
        } else if self.b.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 2f64.sqrt()
    }
}

impl FieldScalar for Sqrt2Ext {
    fn zero_elem() -> Self {
        Sqrt2Ext::new(BigRational::zero(), BigRational::zero())
    }
    fn one_elem() -> Self {
        Sqrt2Ext::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        Sqrt2Ext::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn sub(&self, o: &Self) -> Self {
        Sqrt2Ext::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        let two = crate::exact::rat(2);
        Sqrt2Ext::new(&self.a * &o.a + (&self.b * &o.b) * &two, &self.a * &o.b + &self.b * &o.a)
    }
    fn div(&self, o: &Self) -> Self {
        let two = crate::exact::rat(2);
        let norm = &o.a * &o.a - (&o.b * &o.b) * &two;
        assert!(!Zero::is_zero(&norm), "division by zero in Q(sqrt 2)");
        let num = self.mul(&Sqrt2Ext::new(o.a.clone(), -o.b.clone()));
        Sqrt2Ext::new(num.a / &norm, num.b / &norm)
    }
    fn neg(&self) -> Self {
        Sqrt2Ext::new(-self.a.clone(), -self.b.clone())
    }
}

impl fmt::Display for Sqrt2Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", scalar_to_string(&self.a))
        } else if Zero::is_zero(&self.a) {
            write!(f, "{}√2", scalar_to_string(&self.b))
        } else {
            write!(f, "{}+{}√2", scalar_to_string(&self.a), scalar_to_string(&self.b))
        }
    }
}

/// An m x n matrix over Q(sqrt 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Sqrt2Ext>,
}

impl QuadMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Sqrt2Ext>) -> Result<QuadMatrix> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch("quad matrix shape".into()));
        }
        Ok(QuadMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> QuadMatrix {
        QuadMatrix { rows, cols, data: vec![FieldScalar::zero_elem(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Sqrt2Ext {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Sqrt2Ext) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_wide(&self) -> bool {
        self.rows <= self.cols
    }

    pub fn transpose(&self) -> QuadMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        QuadMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &QuadMatrix) -> Result<QuadMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("quad matrix product shapes".into()));
        }
        let mut out = QuadMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `A A^T`, exact.
    pub fn gram(&self) -> QuadMatrix {
        self.mul(&self.transpose()).expect("shapes agree")
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn sgn(&self) -> SignPattern {
        let entries = self.data.iter().map(|v| v.sign()).collect();
        SignPattern::new(self.rows, self.cols, entries).expect("shape is valid")
    }

    pub fn nullspace(&self) -> Vec<Vec<Sqrt2Ext>> {
        field_nullspace(self.rows, self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        self.cols - self.nullspace().len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let data: Vec<serde_json::Value> = (0..self.rows)
            .map(|i| {
                serde_json::Value::Array(
                    (0..self.cols)
                        .map(|j| {
                            let e = self.get(i, j);
                            serde_json::json!([
                                scalar_to_string(&e.a),
                                scalar_to_string(&e.b)
                            ])
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "field": "Q(sqrt2)",
            "data": data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn field_axioms_spot_checks() {
        let x = Sqrt2Ext::from_parts(1, 2, 3, 4); // 1/2 + 3/4 sqrt2
        let y = Sqrt2Ext::from_parts(-2, 1, 1, 3);
        let z = x.mul(&y).div(&y);
        assert_eq!(z, x);
        assert_eq!(x.sub(&x), FieldScalar::zero_elem());
        let sqrt2 = Sqrt2Ext::sqrt2_times(1);
        assert_eq!(sqrt2.mul(&sqrt2), Sqrt2Ext::from_int(2));
    }

    #[test]
    fn sign_of_mixed_values() {
        // 3 - 2 sqrt2 = 0.17... > 0
        assert_eq!(Sqrt2Ext::new(rat(3), rat(-2)).sign(), Sign::Plus);
        // 1 - sqrt2 < 0
        assert_eq!(Sqrt2Ext::new(rat(1), rat(-1)).sign(), Sign::Minus);
        // -1 + sqrt2 > 0
        assert_eq!(Sqrt2Ext::new(rat(-1), rat(1)).sign(), Sign::Plus);
        assert_eq!(Sqrt2Ext::new(rat(0), rat(0)).sign(), Sign::Zero);
        assert_eq!(Sqrt2Ext::new(ratio(-1, 2), rat(0)).sign(), Sign::Minus);
    }

    #[test]
    fn nullspace_in_extension() {
        // rows (1, sqrt2) and (sqrt2, 2) are proportional
        let m = QuadMatrix::new(
            2,
            2,
            vec![
                Sqrt2Ext::from_int(1),
                Sqrt2Ext::sqrt2_times(1),
                Sqrt2Ext::sqrt2_times(1),
                Sqrt2Ext::from_int(2),
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for i in 0..2 {
            let mut acc: Sqrt2Ext = FieldScalar::zero_elem();
            for j in 0..2 {
                acc = acc.add(&m.get(i, j).mul(&ns[0][j]));
            }
            assert!(acc.is_zero());
        }
    }
}
