//! Modular arithmetic and elementary number theory on machine words.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bound below which [`minus_one_is_qr`] cross-checks itself against
/// exhaustive squaring.
pub const QR_ORACLE_BOUND: u64 = 4096;

/// An element of `Z/m`, `m ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`. Panics if `modulus == 0`.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        Self::new((value as i128).rem_euclid(m) as u64, modulus)
    }

    pub fn minus_one(modulus: u64) -> Self {
        Self::new(modulus - 1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn same_modulus(self, rhs: Self) -> Result<()> {
        if self.modulus == rhs.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, rhs.modulus))
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.same_modulus(rhs)?;
        let v = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Ok(Self::new(v as u64, self.modulus))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.same_modulus(rhs)?;
        Ok(Self::new(
            mul_mod(self.value, rhs.value, self.modulus),
            self.modulus,
        ))
    }

    pub fn pow(self, exp: u64) -> Self {
        Self::new(pow_mod(self.value, exp, self.modulus), self.modulus)
    }

    pub fn is_one(self) -> bool {
        self.value == 1 % self.modulus
    }

    pub fn is_minus_one(self) -> bool {
        self.value == (self.modulus - 1) % self.modulus
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Neg for Residue {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(self.modulus - self.value, self.modulus)
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Deterministic primality for every `u64` (Miller–Rabin with a base set
/// proven sufficient below 2^64). Zero is rejected.
pub fn is_prime(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("is_prime(0) is undefined".into()));
    }
    Ok(num_prime::nt_funcs::is_prime64(n))
}

/// Prime factorization as `prime -> exponent`; `1` factors as the empty map.
pub fn factorize(n: u64) -> Result<BTreeMap<u64, u32>> {
    match n {
        0 => Err(Error::InvalidArgument("cannot factor 0".into())),
        1 => Ok(BTreeMap::new()),
        _ => Ok(num_prime::nt_funcs::factorize64(n)
            .into_iter()
            .map(|(p, e)| (p, e as u32))
            .collect()),
    }
}

/// Multiplicative order of `a` in `(Z/m)^×`, `None` if `a` is not a unit.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let phi = factorize(m)
        .ok()?
        .iter()
        .map(|(&p, &e)| (p - 1) * p.pow(e - 1))
        .product::<u64>();
    let mut order = phi;
    for &q in factorize(phi).ok()?.keys() {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Whether `c` generates `(Z/p)^×`, checked by `c^((p-1)/q) ≠ 1` for every
/// prime `q | p - 1`.
pub fn is_primitive_root(c: u64, p: u64) -> bool {
    if c.is_multiple_of(p) {
        return false;
    }
    let factors = factorize(p - 1).unwrap_or_default();
    factors.keys().all(|&q| pow_mod(c, (p - 1) / q, p) != 1)
}

/// Smallest positive primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> Result<Residue> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p)? {
        return Err(Error::NotOddPrime(p));
    }
    (2..p)
        .find(|&c| is_primitive_root(c, p))
        .map(|c| Residue::new(c, p))
        .ok_or(Error::NotOddPrime(p))
}

/// Answer to "is −1 a square modulo t?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusOneQr {
    pub modulus: u64,
    pub is_qr: bool,
    /// `k` with `k² ≡ −1 (mod t)` and `k ≤ t/2`, present iff `is_qr`.
    pub witness: Option<u64>,
}

/// Decides whether −1 is a quadratic residue modulo `t ≥ 2` from the prime
/// factorization (no prime factor ≡ 3 mod 4 and `4 ∤ t`), reconstructing a
/// witness with per-prime square roots, Hensel lifting and CRT.
pub fn minus_one_is_qr(t: u64) -> Result<MinusOneQr> {
    minus_one_is_qr_with_oracle(t, QR_ORACLE_BOUND)
}

/// As [`minus_one_is_qr`], cross-checking against exhaustive squaring when
/// `t ≤ oracle_bound`.
pub fn minus_one_is_qr_with_oracle(t: u64, oracle_bound: u64) -> Result<MinusOneQr> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "modulus {t} must be at least 2"
        )));
    }
    let factors = factorize(t)?;
    let blocked = factors.get(&2).is_some_and(|&e| e >= 2) || factors.keys().any(|&p| p % 4 == 3);
    let answer = if blocked {
        MinusOneQr {
            modulus: t,
            is_qr: false,
            witness: None,
        }
    } else {
        // CRT accumulation: x ≡ acc (mod m)
        let (mut acc, mut m) = (0u64, 1u64);
        for (&p, &e) in &factors {
            let pe = p.pow(e);
            let r = if p == 2 {
                1
            } else {
                sqrt_minus_one_prime_power(p, e, pe)
            };
            let inv = inv_mod(m % pe, pe).expect("coprime prime powers");
            let diff = (r as i128 - acc as i128).rem_euclid(pe as i128) as u64;
            let k = mul_mod(diff, inv, pe);
            acc += m * k;
            m *= pe;
        }
        let w = acc.min(t - acc);
        MinusOneQr {
            modulus: t,
            is_qr: true,
            witness: Some(w),
        }
    };
    if t <= oracle_bound {
        let exhaustive = minus_one_is_qr_exhaustive(t);
        if exhaustive.is_qr != answer.is_qr {
            panic!("quadratic-residue decision disagrees with exhaustive search for t = {t}");
        }
    }
    Ok(answer)
}

fn sqrt_minus_one_prime_power(p: u64, e: u32, pe: u64) -> u64 {
    let nonresidue = (2..p)
        .find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)
        .expect("p is an odd prime");
    let mut x = pow_mod(nonresidue, (p - 1) / 4, p);
    // Newton/Hensel: x <- x - (x^2 + 1) / (2x)
    let mut modulus = p;
    for _ in 1..e {
        modulus = (modulus * p).min(pe);
        let f = (mul_mod(x, x, modulus) + 1) % modulus;
        let inv = inv_mod(mul_mod(2, x, modulus), modulus).expect("2x is a unit");
        x = (x + modulus - mul_mod(f, inv, modulus)) % modulus;
    }
    debug_assert_eq!((mul_mod(x, x, pe) + 1) % pe, 0);
    x
}

/// Exhaustive search for the smallest `k` with `k² ≡ −1 (mod t)`.
pub fn minus_one_is_qr_exhaustive(t: u64) -> MinusOneQr {
    let witness = (0..t).find(|&k| (mul_mod(k, k, t) + 1).is_multiple_of(t));
    MinusOneQr {
        modulus: t,
        is_qr: witness.is_some(),
        witness,
    }
}

/// 2-adic valuation; `0` maps to `u32::MAX`.
pub fn two_adic_valuation(n: u64) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        n.trailing_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(41).unwrap());
        assert!(!is_prime(1).unwrap());
        assert!(is_prime(18446744073709551557).unwrap());
        assert_eq!(factorize(25).unwrap(), BTreeMap::from([(5, 2)]));
        assert!(factorize(1).unwrap().is_empty());
        assert!(is_prime(0).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(7).unwrap().value(), 3);
        assert_eq!(primitive_root(5).unwrap().value(), 2);
        assert_eq!(primitive_root(17).unwrap().value(), 3);
        assert_eq!(primitive_root(41).unwrap().value(), 6);
        assert_eq!(primitive_root(9), Err(Error::NotOddPrime(9)));
        assert_eq!(primitive_root(2), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn minus_one_examples() {
        assert_eq!(minus_one_is_qr(5).unwrap().witness, Some(2));
        assert!(!minus_one_is_qr(6).unwrap().is_qr);
        assert!(!minus_one_is_qr(3).unwrap().is_qr);
        assert!(!minus_one_is_qr(4).unwrap().is_qr);
        assert_eq!(minus_one_is_qr(2).unwrap().witness, Some(1));
        assert!(minus_one_is_qr(1).is_err());
        let big = minus_one_is_qr_with_oracle(5 * 5 * 13 * 13 * 2, 0).unwrap();
        let w = big.witness.unwrap();
        assert_eq!((w * w + 1) % big.modulus, 0);
    }

    #[test]
    fn residue_arithmetic() {
        let a = Residue::new(3, 7);
        assert!(a.pow(3).is_minus_one());
        assert_eq!(a.checked_mul(Residue::new(5, 7)).unwrap().value(), 1);
        assert_eq!(
            a.checked_add(Residue::new(1, 5)),
            Err(Error::ModulusMismatch(7, 5))
        );
        assert_eq!(Residue::from_i64(-1, 5).value(), 4);
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(2, 4), None);
    }
}
