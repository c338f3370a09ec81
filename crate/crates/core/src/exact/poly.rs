//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, stored in
/// ascending exponent order with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Pseudo-remainder scaled by a *positive* factor `|lc(b)|^(deg a - deg b + 1)`,
    /// so the result is a positive multiple of the true remainder of `a` by `b`.
    pub fn signed_pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by the zero polynomial");
        let lc = b.leading_coeff().unwrap().clone();
        let lc_abs = lc.abs();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            let rlc = r.leading_coeff().unwrap().clone();
            // r <- |lc| * r - sign(lc) * rlc * X^shift * b
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc_abs).collect();
            let factor = if lc.is_negative() { -rlc } else { rlc };
            for (k, bc) in b.coeffs.iter().enumerate() {
                next[k + shift] -= &factor * bc;
            }
            r = Self::new(next);
        }
        r
    }

    /// Number of sign changes in a sequence of nonzero-or-zero integers,
    /// ignoring zeros.
    pub(crate) fn sign_variations<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for v in values {
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                continue;
            };
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("{s}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Whether `gcd(p, p')` is constant over the rationals.
pub fn poly_is_squarefree(p: &IntPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    Ok(rational_gcd(p, &p.derivative()).degree() == Some(0))
}

/// Primitive gcd over Q (returned with positive leading coefficient).
pub fn rational_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !y.is_zero() {
        let r = x.signed_pseudo_rem(&y).primitive_part();
        x = y;
        y = r;
    }
    if x.leading_coeff().is_some_and(Signed::is_negative) {
        -&x
    } else {
        x
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...`, each entry a positive multiple of
/// the classical rational Sturm polynomial.
pub fn sturm_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.clone(), p.derivative().primitive_part()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = chain[n - 2]
            .signed_pseudo_rem(&chain[n - 1])
            .primitive_part();
        chain.push(-&r);
    }
    chain
}

/// Number of distinct real roots of a squarefree polynomial, by counting sign
/// variations of its Sturm chain at minus and plus infinity.
pub fn sturm_real_root_count(p: &IntPolynomial) -> Result<usize> {
    if !poly_is_squarefree(p)? {
        return Err(Error::NotSquarefree);
    }
    let chain = sturm_chain(p);
    let at_pos: Vec<BigInt> = chain
        .iter()
        .map(|q| q.leading_coeff().unwrap().clone())
        .collect();
    let at_neg: Vec<BigInt> = chain
        .iter()
        .map(|q| {
            let lc = q.leading_coeff().unwrap().clone();
            if q.degree().unwrap() % 2 == 1 {
                -lc
            } else {
                lc
            }
        })
        .collect();
    let v_neg = IntPolynomial::sign_variations(&at_neg);
    let v_pos = IntPolynomial::sign_variations(&at_pos);
    Ok(v_neg - v_pos)
}

/// `X^deg p * p(1/X)`, with its sign fixed to match the leading sign of `p`.
pub fn reciprocal_poly(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let rev = IntPolynomial::new(p.coeffs.iter().rev().cloned().collect());
    let same_sign =
        rev.leading_coeff().unwrap().is_positive() == p.leading_coeff().unwrap().is_positive();
    Ok(if same_sign { rev } else { -&rev })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn trims_and_displays() {
        let q = p(&[1, -1, 0, 0, 1, 0, 0]);
        assert_eq!(q.degree(), Some(4));
        assert_eq!(q.to_string(), "X^4 - X + 1");
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0]).to_string(), "0");
    }

    #[test]
    fn squarefree_examples() {
        assert!(poly_is_squarefree(&p(&[1, -1, 1])).unwrap());
        assert!(!poly_is_squarefree(&p(&[1, -2, 1])).unwrap());
        assert!(poly_is_squarefree(&p(&[1, -1, 0, 0, 1])).unwrap());
        assert_eq!(
            poly_is_squarefree(&IntPolynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_real_root_count(&p(&[1, -1, 1])).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&p(&[-2, 0, 1])).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&p(&[0, 1])).unwrap(), 1);
        assert_eq!(
            sturm_real_root_count(&p(&[1, -2, 1])),
            Err(Error::NotSquarefree)
        );
        // (X-1)(X-2)(X+3)(X^2+1)
        let q = &(&(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[3, 1])) * &p(&[1, 0, 1]);
        assert_eq!(sturm_real_root_count(&q).unwrap(), 3);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal_poly(&p(&[1, -1, 1])).unwrap(), p(&[1, -1, 1]));
        assert_eq!(
            reciprocal_poly(&p(&[1, -1, 0, 0, 1])).unwrap(),
            p(&[1, 0, 0, -1, 1])
        );
        assert_eq!(reciprocal_poly(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(reciprocal_poly(&p(&[0, 1])), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = &p(&[1, 1, 1]) * &p(&[-3, 2]);
        let g = &p(&[1, 1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(rational_gcd(&f, &g), p(&[1, 1, 1]));
    }
}
