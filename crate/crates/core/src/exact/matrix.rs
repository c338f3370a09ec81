//! Dense integer matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use super::rational;
use crate::error::{Error, Result};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = BigInt::from(d);
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// `det(X·I - M)` by the Faddeev–LeVerrier recurrence; every division in
    /// it is exact over the integers.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        let n = self.require_square()?;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        // m_k = A m_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A m_k) / k
        let mut m = Self::identity(n);
        for k in 1..=n {
            let am = self.checked_mul(&m)?;
            let c = -am.trace() / BigInt::from(k);
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                m.entries[i * n + i] += &c;
            }
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Inverse over the integers, if it exists.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let det = self.determinant()?;
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular);
        }
        let q = rational::to_rational_rows(&self.to_rows());
        let inv = rational::invert(&q).ok_or(Error::NotUnimodular)?;
        let mut entries = Vec::with_capacity(n * n);
        for v in inv.iter().flatten() {
            if !v.is_integer() {
                return Err(Error::NotUnimodular);
            }
            entries.push(v.to_integer());
        }
        Self::new(n, n, entries)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant()
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
    }

    /// `P · M · P⁻¹` for unimodular `P`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        let inv = p.inverse()?;
        p.checked_mul(self)?.checked_mul(&inv)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "incompatible matrix shapes"
        );
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "incompatible matrix shapes"
        );
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

/// Free-function form of [`IntMatrix::char_poly`].
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    m.char_poly()
}

/// Free-function form of [`IntMatrix::determinant`].
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    m.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            IntMatrix::identity(2).char_poly().unwrap(),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        let f = IntMatrix::from_rows(&[[0, -1], [1, 1]]);
        assert_eq!(f.char_poly().unwrap(), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(
            IntMatrix::zeros(3, 3).char_poly().unwrap(),
            IntPolynomial::monomial(3)
        );
        assert!(matches!(
            IntMatrix::zeros(2, 3).char_poly(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_examples() {
        for n in 0..6 {
            assert_eq!(IntMatrix::identity(n).determinant().unwrap(), BigInt::one());
        }
        assert_eq!(
            IntMatrix::from_rows(&[[0, -1], [1, 1]])
                .determinant()
                .unwrap(),
            BigInt::one()
        );
        assert_eq!(
            IntMatrix::diagonal(&[2, 3]).determinant().unwrap(),
            BigInt::from(6)
        );
        let pivoting = IntMatrix::from_rows(&[[0, 2, 1], [3, 0, 0], [1, 1, 1]]);
        // cofactor expansion along the second row: -3 * (2*1 - 1*1)
        assert_eq!(pivoting.determinant().unwrap(), BigInt::from(-3));
        assert!(IntMatrix::zeros(1, 2).determinant().is_err());
    }

    #[test]
    fn inverse_of_companion() {
        let f = IntMatrix::from_rows(&[[0, -1], [1, 1]]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[[1, 1], [-1, 0]]));
        assert_eq!(&f * &inv, IntMatrix::identity(2));
        assert_eq!(
            IntMatrix::diagonal(&[2, 1]).inverse(),
            Err(Error::NotUnimodular)
        );
    }
}
