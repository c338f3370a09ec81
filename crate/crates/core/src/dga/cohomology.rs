//! Deciding exactness in one degree through linear functionals that vanish
//! on the image of the differential.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::{AlgElement, GcAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::exact::rational::{kernel, primitive_integer_vector};

/// Integer functionals on degree `k` whose common kernel is `d(A^{k−1})`.
#[derive(Debug, Clone)]
pub struct ExactnessTest {
    degree: u32,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    functionals: Vec<Vec<(usize, BigInt)>>,
    image_rank: usize,
}

impl ExactnessTest {
    pub fn new(alg: &GcAlgebra, degree: u32) -> Self {
        let basis = alg.basis(degree);
        let index: BTreeMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let images: Vec<Vec<BigRational>> = if degree == 0 {
            Vec::new()
        } else {
            alg.basis(degree - 1)
                .into_iter()
                .map(|m| {
                    let dm = alg
                        .differential(&alg.monomial_element(m, BigRational::from_integer(1.into())))
                        .expect("same algebra");
                    alg.coordinates(&dm, &basis)
                        .expect("differential is homogeneous")
                })
                .filter(|row| row.iter().any(|x| !x.is_zero()))
                .collect()
        };
        let functionals: Vec<Vec<(usize, BigInt)>> = if images.is_empty() {
            (0..basis.len())
                .map(|i| vec![(i, BigInt::from(1))])
                .collect()
        } else {
            kernel(&images, basis.len())
                .iter()
                .map(|v| {
                    primitive_integer_vector(v)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                })
                .collect()
        };
        let image_rank = basis.len() - functionals.len();
        Self {
            degree,
            basis,
            index,
            functionals,
            image_rank,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Rank of `d` into this degree.
    pub fn image_rank(&self) -> usize {
        self.image_rank
    }

    pub fn functional_count(&self) -> usize {
        self.functionals.len()
    }

    fn evaluate_all(&self, alg: &GcAlgebra, y: &AlgElement) -> Result<Vec<BigRational>> {
        if let Some(d) = alg.degree(y)? {
            if d != self.degree {
                return Err(Error::InvalidArgument(format!(
                    "element of degree {d} tested in degree {}",
                    self.degree
                )));
            }
        }
        let mut coords: BTreeMap<usize, &BigRational> = BTreeMap::new();
        for (m, c) in y.terms() {
            coords.insert(self.index[m], c);
        }
        Ok(self
            .functionals
            .iter()
            .map(|f| {
                f.iter()
                    .fold(BigRational::zero(), |acc, (i, c)| match coords.get(i) {
                        Some(&x) => acc + x * BigRational::from_integer(c.clone()),
                        None => acc,
                    })
            })
            .collect())
    }

    pub fn is_exact(&self, alg: &GcAlgebra, y: &AlgElement) -> Result<bool> {
        Ok(self.evaluate_all(alg, y)?.iter().all(Zero::is_zero))
    }

    /// The `λ` with `y − λ·z` exact, or `None` if `y` is not cohomologous to
    /// a multiple of `z`. Errors when `z` itself is exact.
    pub fn coefficient_against(
        &self,
        alg: &GcAlgebra,
        y: &AlgElement,
        z: &AlgElement,
    ) -> Result<Option<BigRational>> {
        let fz = self.evaluate_all(alg, z)?;
        let fy = self.evaluate_all(alg, y)?;
        let Some(k) = fz.iter().position(|x| !x.is_zero()) else {
            return Err(Error::InvalidArgument("reference class is exact".into()));
        };
        let lambda = &fy[k] / &fz[k];
        let consistent = fy.iter().zip(&fz).all(|(a, b)| *a == &lambda * b);
        Ok(consistent.then_some(lambda))
    }

    /// Index and value of the first functional not vanishing on `y`, a
    /// certificate that `y` is not exact.
    pub fn nonexactness_witness(
        &self,
        alg: &GcAlgebra,
        y: &AlgElement,
    ) -> Result<Option<(usize, BigRational)>> {
        Ok(self
            .evaluate_all(alg, y)?
            .into_iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero()))
    }

    /// A functional as `(monomial name, coefficient)` pairs.
    pub fn describe_functional(&self, alg: &GcAlgebra, k: usize) -> Vec<(String, BigInt)> {
        self.functionals[k]
            .iter()
            .map(|(i, c)| (alg.monomial_name(&self.basis[*i]), c.clone()))
            .collect()
    }
}
