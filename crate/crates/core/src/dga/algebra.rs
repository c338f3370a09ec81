//! Free graded-commutative algebras over `Q` with a differential, using the
//! Koszul conventions `x·y = (−1)^{|x||y|} y·x` and
//! `d(xy) = dx·y + (−1)^{|x|} x·dy`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector over the generators, in generator order. Ordered so that
/// earlier generators sort first (`a < b < c`, `a < a²`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational combination of monomials of one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElement {
    algebra: u64,
    terms: BTreeMap<Monomial, BigRational>,
}

impl AlgElement {
    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let terms = if k.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect()
        };
        Self {
            algebra: self.algebra,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }
}

/// A validated free graded-commutative differential graded algebra.
#[derive(Debug, Clone)]
pub struct GcAlgebra {
    id: u64,
    generators: Vec<Generator>,
    differential: Vec<AlgElement>,
}

impl GcAlgebra {
    /// Builds the algebra from generators and their differentials, given as
    /// sparse `(exponents, coefficient)` lists. Rejects non-homogeneous
    /// differentials and `d∘d ≠ 0`.
    pub fn new(
        generators: Vec<Generator>,
        differential: Vec<Vec<(Vec<u32>, BigRational)>>,
    ) -> Result<Self> {
        let n = generators.len();
        if differential.len() != n {
            return Err(Error::InvalidAlgebra(
                "one differential per generator required".into(),
            ));
        }
        if let Some(g) = generators.iter().find(|g| g.degree == 0) {
            return Err(Error::InvalidAlgebra(format!(
                "generator {} has degree 0",
                g.name
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidAlgebra(format!(
                    "generator {} declared twice",
                    g.name
                )));
            }
        }
        let id = NEXT_ALGEBRA_ID.fetch_add(1, AtomicOrdering::Relaxed);
        let mut alg = GcAlgebra {
            id,
            generators,
            differential: Vec::new(),
        };
        let mut diffs = Vec::with_capacity(n);
        for (i, terms) in differential.into_iter().enumerate() {
            let mut e = alg.zero();
            for (exps, c) in terms {
                if exps.len() != n {
                    return Err(Error::InvalidAlgebra(
                        "exponent vector length mismatch".into(),
                    ));
                }
                let m = Monomial(exps);
                if !alg.monomial_is_nonzero(&m) {
                    continue;
                }
                e.add_term(m, c);
            }
            let want = alg.generators[i].degree + 1;
            if let Some(bad) = e.terms.keys().find(|m| alg.monomial_degree(m) != want) {
                return Err(Error::InvalidAlgebra(format!(
                    "d({}) has a term of degree {} instead of {want}: {}",
                    alg.generators[i].name,
                    alg.monomial_degree(bad),
                    alg.monomial_name(bad)
                )));
            }
            diffs.push(e);
        }
        alg.differential = diffs;
        for i in 0..n {
            let dd = alg.differential(&alg.differential[i].clone())?;
            if !dd.is_zero() {
                return Err(Error::InvalidAlgebra(format!(
                    "d(d({})) = {} is not zero",
                    alg.generators[i].name,
                    alg.format(&dd)
                )));
            }
        }
        Ok(alg)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement {
            algebra: self.id,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AlgElement {
        self.monomial_element(Monomial::one(self.ngens()), BigRational::one())
    }

    pub fn gen(&self, i: usize) -> AlgElement {
        self.monomial_element(Monomial::generator(self.ngens(), i), BigRational::one())
    }

    /// Generator by name; panics on unknown names.
    pub fn named(&self, name: &str) -> AlgElement {
        let i = self
            .generator_index(name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        self.gen(i)
    }

    pub fn monomial_element(&self, m: Monomial, c: BigRational) -> AlgElement {
        let mut e = self.zero();
        if self.monomial_is_nonzero(&m) {
            e.add_term(m, c);
        }
        e
    }

    pub fn constant(&self, c: i64) -> AlgElement {
        self.one()
            .scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// The stored differential of generator `i`.
    pub fn generator_differential(&self, i: usize) -> &AlgElement {
        &self.differential[i]
    }

    pub fn monomial_is_nonzero(&self, m: &Monomial) -> bool {
        m.0.iter()
            .zip(&self.generators)
            .all(|(&e, g)| !g.is_odd() || e <= 1)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree(&self, x: &AlgElement) -> Result<Option<u32>> {
        let mut degs = x.terms.keys().map(|m| self.monomial_degree(m));
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        if degs.any(|d| d != first) {
            return Err(Error::InvalidArgument("element is not homogeneous".into()));
        }
        Ok(Some(first))
    }

    fn check(&self, x: &AlgElement) -> Result<()> {
        if x.algebra == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Sign and product of two monomials, `None` if an odd generator repeats.
    fn multiply_monomials(&self, m1: &Monomial, m2: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        // odd generators of m1 with index greater than j that m2's odd j must pass
        let mut odd_after = 0u32;
        let n = self.ngens();
        let mut suffix_odd = vec![0u32; n + 1];
        for i in (0..n).rev() {
            let odd = self.generators[i].is_odd() && m1.0[i] == 1;
            suffix_odd[i] = suffix_odd[i + 1] + odd as u32;
        }
        let mut out = m1.0.clone();
        for j in 0..n {
            if m2.0[j] == 0 {
                continue;
            }
            if self.generators[j].is_odd() {
                if m1.0[j] == 1 {
                    return None;
                }
                odd_after += suffix_odd[j + 1];
            }
            out[j] += m2.0[j];
        }
        if odd_after % 2 == 1 {
            negative = true;
        }
        Some((negative, Monomial(out)))
    }

    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                if let Some((neg, m)) = self.multiply_monomials(m1, m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, x: &AlgElement, k: u32) -> Result<AlgElement> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Element of a single monomial with coefficient one, written as the
    /// ordered product of its generator powers.
    fn monomial_as_product_parts(&self, m: &Monomial) -> Vec<(usize, u32)> {
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }

    fn differential_of_monomial(&self, m: &Monomial) -> AlgElement {
        let parts = self.monomial_as_product_parts(m);
        let mut out = self.zero();
        for (k, &(i, e)) in parts.iter().enumerate() {
            let dg = &self.differential[i];
            if dg.is_zero() {
                continue;
            }
            let mut prefix = Monomial::one(self.ngens());
            for &(j, f) in &parts[..k] {
                prefix.0[j] = f;
            }
            let mut suffix = Monomial::one(self.ngens());
            for &(j, f) in &parts[k + 1..] {
                suffix.0[j] = f;
            }
            let sign = if self.monomial_degree(&prefix) % 2 == 1 {
                -1
            } else {
                1
            };
            // d(g^e) = e·g^(e−1)·dg for even g; odd g has e = 1
            let mut rest = Monomial::one(self.ngens());
            rest.0[i] = e - 1;
            let coeff = BigRational::from_integer(BigInt::from(sign * e as i64));
            let middle = self
                .multiply(&self.monomial_element(rest, coeff), dg)
                .expect("same algebra");
            let left = self
                .multiply(&self.monomial_element(prefix, BigRational::one()), &middle)
                .expect("same algebra");
            let term = self
                .multiply(&left, &self.monomial_element(suffix, BigRational::one()))
                .expect("same algebra");
            out = out.add(&term).expect("same algebra");
        }
        out
    }

    /// Linear extension of the generator differentials by the Leibniz rule.
    pub fn differential(&self, x: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        let mut out = self.zero();
        for (m, c) in &x.terms {
            let dm = self.differential_of_monomial(m);
            for (m2, c2) in dm.terms {
                out.add_term(m2, c * c2);
            }
        }
        Ok(out)
    }

    /// All nonzero monomials of total degree `degree`, in canonical order.
    pub fn basis(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.ngens()];
        self.basis_rec(0, degree, &mut current, &mut out);
        out.sort();
        out
    }

    fn basis_rec(&self, i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let max = if g.is_odd() { 1 } else { remaining / g.degree };
        for e in 0..=max.min(remaining / g.degree) {
            current[i] = e;
            self.basis_rec(i + 1, remaining - e * g.degree, current, out);
        }
        current[i] = 0;
    }

    /// Coordinates of a homogeneous element in `basis`; `None` if some term
    /// is outside the basis.
    pub fn coordinates(&self, x: &AlgElement, basis: &[Monomial]) -> Option<Vec<BigRational>> {
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in &x.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coordinates(&self, coords: &[BigRational], basis: &[Monomial]) -> AlgElement {
        let mut out = self.zero();
        for (m, c) in basis.iter().zip(coords) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Part of `x` whose exponent of generator `i` equals `power`.
    pub fn component_by_exponent(&self, x: &AlgElement, i: usize, power: u32) -> AlgElement {
        let mut out = self.zero();
        for (m, c) in &x.terms {
            if m.0[i] == power {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        let parts: Vec<String> = self
            .monomial_as_product_parts(m)
            .into_iter()
            .map(|(i, e)| {
                let name = &self.generators[i].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable form such as `2*a*A - b*B`.
    pub fn format(&self, x: &AlgElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in x.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let name = self.monomial_name(m);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&name);
            } else {
                out.push_str(&format!("{abs}*{name}"));
            }
        }
        out
    }

    /// Algebra endomorphism sending generator `i` to `images[i]`.
    pub fn endomorphism(&self, images: Vec<AlgElement>) -> Result<Endomorphism> {
        if images.len() != self.ngens() {
            return Err(Error::DimensionMismatch(
                "one image per generator required".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            self.check(img)?;
            if let Some(d) = self.degree(img)? {
                if d != self.generators[i].degree {
                    return Err(Error::InvalidArgument(format!(
                        "image of {} has degree {d}",
                        self.generators[i].name
                    )));
                }
            }
        }
        Ok(Endomorphism {
            algebra: self.id,
            images,
        })
    }

    pub fn identity(&self) -> Endomorphism {
        Endomorphism {
            algebra: self.id,
            images: (0..self.ngens()).map(|i| self.gen(i)).collect(),
        }
    }

    pub fn apply(&self, t: &Endomorphism, x: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        if t.algebra != self.id {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.zero();
        let mut powers: BTreeMap<(usize, u32), AlgElement> = BTreeMap::new();
        for (m, c) in &x.terms {
            let mut acc = self.monomial_element(Monomial::one(self.ngens()), c.clone());
            for (i, e) in self.monomial_as_product_parts(m) {
                let p = match powers.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = self.power(&t.images[i], e)?;
                        powers.insert((i, e), p.clone());
                        p
                    }
                };
                acc = self.multiply(&acc, &p)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Whether `d∘T = T∘d` on every generator.
    pub fn commutes_with_differential(&self, t: &Endomorphism) -> Result<bool> {
        for i in 0..self.ngens() {
            let lhs = self.differential(&t.images[i])?;
            let rhs = self.apply(t, &self.differential[i])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Algebra map determined by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    algebra: u64,
    images: Vec<AlgElement>,
}

impl Endomorphism {
    pub fn images(&self) -> &[AlgElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &AlgElement {
        &self.images[i]
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    /// x:2, y:3, z:3 with d = 0.
    fn small() -> GcAlgebra {
        let gens = vec![
            Generator {
                name: "x".into(),
                degree: 2,
            },
            Generator {
                name: "y".into(),
                degree: 3,
            },
            Generator {
                name: "z".into(),
                degree: 3,
            },
        ];
        GcAlgebra::new(gens, vec![vec![], vec![], vec![]]).unwrap()
    }

    #[test]
    fn koszul_products() {
        let a = small();
        let (x, y, z) = (a.named("x"), a.named("y"), a.named("z"));
        let yz = a.multiply(&y, &z).unwrap();
        let zy = a.multiply(&z, &y).unwrap();
        assert_eq!(zy, yz.neg());
        assert!(a.multiply(&y, &y).unwrap().is_zero());
        assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&y, &x).unwrap());
        assert_eq!(a.format(&yz), "y*z");
        assert_eq!(a.format(&zy), "-y*z");
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = small();
        let b = small();
        assert_eq!(
            a.multiply(&a.named("x"), &b.named("x")),
            Err(Error::AlgebraMismatch)
        );
    }

    #[test]
    fn invalid_differentials() {
        let gens = vec![
            Generator {
                name: "x".into(),
                degree: 2,
            },
            Generator {
                name: "y".into(),
                degree: 3,
            },
        ];
        let bad_degree = GcAlgebra::new(gens.clone(), vec![vec![], vec![(vec![1, 0], q(1))]]);
        assert!(matches!(bad_degree, Err(Error::InvalidAlgebra(_))));
        let gens = vec![
            Generator {
                name: "x".into(),
                degree: 2,
            },
            Generator {
                name: "y".into(),
                degree: 1,
            },
        ];
        // d(y) = x is fine; d(x) = x*y would give d(d(x)) = x^2 ≠ 0
        let not_square_zero = GcAlgebra::new(
            gens,
            vec![vec![(vec![1, 1], q(1))], vec![(vec![1, 0], q(1))]],
        );
        assert!(matches!(not_square_zero, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn basis_sizes() {
        let a = small();
        assert_eq!(a.basis(6).len(), 2); // x^3, y*z
        assert_eq!(a.basis(1).len(), 0);
        assert_eq!(a.basis(0).len(), 1);
    }
}
