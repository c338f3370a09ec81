//! Extending maps on the degree-2 generators to the whole algebra, and the
//! integrality condition a map on `H²` must meet to lift through the
//! transgression.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::algebra::{AlgElement, Endomorphism, GcAlgebra};
use crate::error::{Error, Result};
use crate::exact::rational::{rref, solve};
use crate::exact::{hermite_normal_form, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    /// Images of the higher generators must be integral combinations.
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    /// `d(T g) = T(d g)` has no solution in the span of the generators.
    Inconsistent,
    /// Only a non-integral solution exists; carries it.
    NonIntegral(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(Endomorphism),
    Rejected {
        generator: String,
        reason: RejectReason,
    },
}

impl Extension {
    pub fn endomorphism(&self) -> Option<&Endomorphism> {
        match self {
            Extension::Extended(t) => Some(t),
            Extension::Rejected { .. } => None,
        }
    }
}

/// Indices of the degree-2 generators, which must be closed.
pub fn base_generators(alg: &GcAlgebra) -> Result<Vec<usize>> {
    let base: Vec<usize> = (0..alg.ngens())
        .filter(|&i| alg.generators()[i].degree == 2)
        .collect();
    if let Some(&i) = base
        .iter()
        .find(|&&i| !alg.generator_differential(i).is_zero())
    {
        return Err(Error::InvalidAlgebra(format!(
            "degree-2 generator {} is not closed",
            alg.generators()[i].name
        )));
    }
    Ok(base)
}

/// Extends `T(g_j) = Σ_i M_ij g_i` on the degree-2 generators by solving
/// `d(T g) = T(d g)` degree by degree within the span of the generators of
/// the same degree. Requires `d` injective on each such span.
pub fn extend_automorphism(
    alg: &GcAlgebra,
    base_map: &IntMatrix,
    coefficients: Coefficients,
) -> Result<Extension> {
    let base = base_generators(alg)?;
    let k = base.len();
    if base_map.rows() != k || base_map.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "base map must be {k}x{k}, got {}x{}",
            base_map.rows(),
            base_map.cols()
        )));
    }
    let n = alg.ngens();
    let mut images: Vec<Option<AlgElement>> = vec![None; n];
    for (j, &gj) in base.iter().enumerate() {
        let mut img = alg.zero();
        for (i, &gi) in base.iter().enumerate() {
            let c = BigRational::from_integer(base_map.get(i, j).clone());
            img = img.add(&alg.gen(gi).scale(&c))?;
        }
        images[gj] = Some(img);
    }
    let mut rest: Vec<usize> = (0..n).filter(|i| images[*i].is_none()).collect();
    rest.sort_by_key(|&i| (alg.generators()[i].degree, i));
    let mut degrees: Vec<u32> = rest.iter().map(|&i| alg.generators()[i].degree).collect();
    degrees.dedup();
    for deg in degrees {
        let layer: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&i| alg.generators()[i].degree == deg)
            .collect();
        let target_basis = alg.basis(deg + 1);
        // columns: coordinates of d(h) for h in the layer
        let columns: Vec<Vec<BigRational>> = layer
            .iter()
            .map(|&h| {
                alg.coordinates(alg.generator_differential(h), &target_basis)
                    .expect("homogeneous")
            })
            .collect();
        let matrix: Vec<Vec<BigRational>> = (0..target_basis.len())
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        let mut check = matrix.clone();
        if rref(&mut check).len() < layer.len() {
            return Err(Error::InvalidAlgebra(format!(
                "differential is not injective on degree-{deg} generators"
            )));
        }
        let partial = partial_endomorphism(alg, &images)?;
        for &g in &layer {
            let dg = alg.generator_differential(g);
            for m in dg.terms().keys() {
                if let Some(i) = (0..n).find(|&i| m.exponent(i) > 0 && images[i].is_none()) {
                    return Err(Error::InvalidAlgebra(format!(
                        "d({}) involves {} before it is determined",
                        alg.generators()[g].name,
                        alg.generators()[i].name
                    )));
                }
            }
            let rhs = alg.apply(&partial, dg)?;
            let rhs = alg.coordinates(&rhs, &target_basis).expect("homogeneous");
            let Some(x) = solve(&matrix, &rhs) else {
                return Ok(Extension::Rejected {
                    generator: alg.generators()[g].name.clone(),
                    reason: RejectReason::Inconsistent,
                });
            };
            let mut img = alg.zero();
            for (&h, c) in layer.iter().zip(&x) {
                img = img.add(&alg.gen(h).scale(c))?;
            }
            if coefficients == Coefficients::Integer && x.iter().any(|c| !c.is_integer()) {
                return Ok(Extension::Rejected {
                    generator: alg.generators()[g].name.clone(),
                    reason: RejectReason::NonIntegral(alg.format(&img)),
                });
            }
            images[g] = Some(img);
        }
    }
    let t = alg.endomorphism(images.into_iter().map(Option::unwrap).collect())?;
    assert!(
        alg.commutes_with_differential(&t)?,
        "extension does not commute with d"
    );
    Ok(Extension::Extended(t))
}

fn partial_endomorphism(alg: &GcAlgebra, images: &[Option<AlgElement>]) -> Result<Endomorphism> {
    alg.endomorphism(
        images
            .iter()
            .map(|x| x.clone().unwrap_or_else(|| alg.zero()))
            .collect(),
    )
}

/// Integer quadratic images of the degree-3 generators in the polynomial
/// ring on the degree-2 generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransgressionData {
    pub base: Vec<String>,
    pub fibre: Vec<String>,
    /// Coefficients over the quadratic monomials `g_i g_j`, `i ≤ j`, in
    /// lexicographic order of `(i, j)`.
    pub images: Vec<Vec<i64>>,
    lattice: Vec<Vec<i128>>,
}

pub fn quadratic_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * k - i * i.saturating_sub(1) / 2 + (j - i)
}

fn quadratic_monomials(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect()
}

impl TransgressionData {
    pub fn new(base: Vec<String>, fibre: Vec<String>, images: Vec<Vec<i64>>) -> Result<Self> {
        let k = base.len();
        let width = k * (k + 1) / 2;
        if images.len() != fibre.len() || images.iter().any(|v| v.len() != width) {
            return Err(Error::DimensionMismatch(
                "transgression images must be quadratic in the base".into(),
            ));
        }
        let hnf = hermite_normal_form(
            images
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        let lattice = hnf
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_i128().expect("small lattice"))
                    .collect()
            })
            .collect();
        Ok(Self {
            base,
            fibre,
            images,
            lattice,
        })
    }

    /// Base = degree-2 generators, fibre = degree-3 generators, images =
    /// their differentials.
    pub fn from_algebra(alg: &GcAlgebra) -> Result<Self> {
        let base = base_generators(alg)?;
        let k = base.len();
        let fibre: Vec<usize> = (0..alg.ngens())
            .filter(|&i| alg.generators()[i].degree == 3)
            .collect();
        let mut images = Vec::new();
        for &f in &fibre {
            let mut v = vec![0i64; k * (k + 1) / 2];
            for (m, c) in alg.generator_differential(f).terms() {
                let vars: Vec<usize> = base
                    .iter()
                    .enumerate()
                    .flat_map(|(pos, &g)| std::iter::repeat_n(pos, m.exponent(g) as usize))
                    .collect();
                if vars.len() != 2 || !c.is_integer() {
                    return Err(Error::InvalidAlgebra(format!(
                        "d({}) is not an integral quadratic polynomial in the degree-2 generators",
                        alg.generators()[f].name
                    )));
                }
                v[quadratic_index(k, vars[0], vars[1])] = c
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidAlgebra("coefficient too large".into()))?;
            }
            images.push(v);
        }
        let names = |ix: &[usize]| {
            ix.iter()
                .map(|&i| alg.generators()[i].name.clone())
                .collect()
        };
        Self::new(names(&base), names(&fibre), images)
    }

    /// `A ↦ p·bc, B ↦ q·ac, C ↦ r·ab` on the base `(a, b, c)`.
    pub fn three_variable(p: i64, q: i64, r: i64) -> Self {
        let k = 3;
        let mut images = vec![vec![0; 6]; 3];
        images[0][quadratic_index(k, 1, 2)] = p;
        images[1][quadratic_index(k, 0, 2)] = q;
        images[2][quadratic_index(k, 0, 1)] = r;
        let names = |s: &[&str]| s.iter().map(|x| x.to_string()).collect();
        Self::new(names(&["a", "b", "c"]), names(&["A", "B", "C"]), images).expect("well-formed")
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    /// `T(p)` for a quadratic `p`, with `T(g_j) = Σ_i M_ij g_i`.
    pub fn transform(&self, m: &[i64], poly: &[i64]) -> Vec<i128> {
        let k = self.base.len();
        let mut out = vec![0i128; poly.len()];
        for (idx, (i, j)) in quadratic_monomials(k).into_iter().enumerate() {
            let c = poly[idx] as i128;
            if c == 0 {
                continue;
            }
            for r in 0..k {
                let mri = m[r * k + i] as i128;
                if mri == 0 {
                    continue;
                }
                for s in 0..k {
                    let msj = m[s * k + j] as i128;
                    if msj != 0 {
                        out[quadratic_index(k, r, s)] += c * mri * msj;
                    }
                }
            }
        }
        out
    }

    fn lattice_contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        for row in &self.lattice {
            let Some(pc) = row.iter().position(|&x| x != 0) else {
                continue;
            };
            if v[..pc].iter().any(|&x| x != 0) || v[pc] % row[pc] != 0 {
                return false;
            }
            let q = v[pc] / row[pc];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// First fibre generator whose transformed image leaves the lattice.
    pub fn first_violation(&self, m: &[i64]) -> Option<usize> {
        self.images
            .iter()
            .position(|img| !self.lattice_contains(&self.transform(m, img)))
    }

    pub fn format_quadratic(&self, v: &[i128]) -> String {
        let k = self.base.len();
        let terms: Vec<String> = quadratic_monomials(k)
            .into_iter()
            .zip(v)
            .filter(|(_, &c)| c != 0)
            .map(|((i, j), c)| {
                let mono = if i == j {
                    format!("{}^2", self.base[i])
                } else {
                    format!("{}*{}", self.base[i], self.base[j])
                };
                format!("{c}*{mono}")
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn matrix_entries_i64(m: &IntMatrix) -> Result<Vec<i64>> {
    m.entries()
        .iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::InvalidArgument("matrix entry exceeds i64".into()))
        })
        .collect()
}

/// Whether `T(τ(v))` lies in the integer span of the `τ` images for every
/// fibre generator `v`.
pub fn admissible_h2_matrix(m: &IntMatrix, tau: &TransgressionData) -> Result<bool> {
    let k = tau.base_len();
    if m.rows() != k || m.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected a {k}x{k} matrix"
        )));
    }
    if !m.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    Ok(tau.first_violation(&matrix_entries_i64(m)?).is_none())
}

/// All `k! · 2^k` signed permutation matrices in a fixed order.
pub fn signed_permutations(k: usize) -> Vec<IntMatrix> {
    let mut perms = Vec::new();
    permutations(&mut (0..k).collect::<Vec<_>>(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..(1u32 << k) {
            let mut m = IntMatrix::zeros(k, k);
            for (col, &row) in p.iter().enumerate() {
                let s = if signs >> col & 1 == 1 { -1 } else { 1 };
                m.set(row, col, BigInt::from(s));
            }
            out.push(m);
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

pub fn is_diagonal(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

pub fn enumerate_admissible_signed_permutations(tau: &TransgressionData) -> Vec<IntMatrix> {
    signed_permutations(tau.base_len())
        .into_iter()
        .filter(|m| admissible_h2_matrix(m, tau).expect("signed permutations are unimodular"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularSweep {
    pub bound: i64,
    pub matrices: u64,
    pub unimodular: u64,
    pub admissible: u64,
    pub admissible_diagonal: u64,
    /// Admissible matrices that are not diagonal, in enumeration order.
    pub non_diagonal: Vec<IntMatrix>,
}

fn det3(m: &[i64; 9]) -> i64 {
    m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6])
}

/// Every 3×3 matrix with entries in `[−bound, bound]` and determinant `±1`,
/// tested for admissibility.
pub fn unimodular_sweep(tau: &TransgressionData, bound: i64) -> Result<UnimodularSweep> {
    if tau.base_len() != 3 {
        return Err(Error::InvalidArgument(
            "the bounded sweep is implemented for three base variables".into(),
        ));
    }
    if !(0..=4).contains(&bound) {
        return Err(Error::InvalidArgument(format!(
            "sweep bound {bound} outside 0..=4"
        )));
    }
    let width = (2 * bound + 1) as u64;
    let total = width.pow(9);
    let first_row_count = width.pow(3);
    let decode = |mut code: u64, out: &mut [i64]| {
        for x in out.iter_mut() {
            *x = (code % width) as i64 - bound;
            code /= width;
        }
    };
    let partial: Vec<(u64, u64, u64, Vec<[i64; 9]>)> = (0..first_row_count)
        .into_par_iter()
        .map(|head| {
            let mut m = [0i64; 9];
            decode(head, &mut m[0..3]);
            let (mut uni, mut adm, mut diag) = (0, 0, 0);
            let mut odd = Vec::new();
            for tail in 0..width.pow(6) {
                decode(tail, &mut m[3..9]);
                if det3(&m).abs() != 1 {
                    continue;
                }
                uni += 1;
                if tau.first_violation(&m).is_some() {
                    continue;
                }
                adm += 1;
                if m[1] == 0 && m[2] == 0 && m[3] == 0 && m[5] == 0 && m[6] == 0 && m[7] == 0 {
                    diag += 1;
                } else {
                    odd.push(m);
                }
            }
            (uni, adm, diag, odd)
        })
        .collect();
    let mut sweep = UnimodularSweep {
        bound,
        matrices: total,
        unimodular: 0,
        admissible: 0,
        admissible_diagonal: 0,
        non_diagonal: Vec::new(),
    };
    for (u, a, d, odd) in partial {
        sweep.unimodular += u;
        sweep.admissible += a;
        sweep.admissible_diagonal += d;
        sweep.non_diagonal.extend(
            odd.iter()
                .map(|m| IntMatrix::from_rows(&[&m[0..3], &m[3..6], &m[6..9]])),
        );
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::model::minimal_model;

    #[test]
    fn quadratic_indexing() {
        let k = 4;
        let all = quadratic_monomials(k);
        for (idx, (i, j)) in all.iter().enumerate() {
            assert_eq!(quadratic_index(k, *i, *j), idx);
            assert_eq!(quadratic_index(k, *j, *i), idx);
        }
    }

    #[test]
    fn sign_map_extends() {
        let alg = minimal_model();
        let t = extend_automorphism(
            &alg,
            &IntMatrix::diagonal(&[-1, 1, 1]),
            Coefficients::Integer,
        )
        .unwrap();
        let t = t.endomorphism().unwrap();
        let img = |name: &str| alg.format(t.image(alg.generator_index(name).unwrap()));
        assert_eq!(img("A"), "A");
        assert_eq!(img("B"), "-B");
        assert_eq!(img("C"), "-C");
        assert_eq!(img("alpha"), "-alpha");
        assert_eq!(img("beta"), "-beta");
        let id = extend_automorphism(&alg, &IntMatrix::identity(3), Coefficients::Integer).unwrap();
        assert_eq!(id.endomorphism().unwrap(), &alg.identity());
    }

    #[test]
    fn swap_needs_half_integers() {
        let alg = minimal_model();
        let swap = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let r = extend_automorphism(&alg, &swap, Coefficients::Integer).unwrap();
        assert_eq!(
            r,
            Extension::Rejected {
                generator: "A".into(),
                reason: RejectReason::NonIntegral("1/2*B".into())
            }
        );
        assert!(matches!(
            extend_automorphism(&alg, &swap, Coefficients::Rational).unwrap(),
            Extension::Extended(_)
        ));
        let tau = TransgressionData::from_algebra(&alg).unwrap();
        assert!(!admissible_h2_matrix(&swap, &tau).unwrap());
        assert!(admissible_h2_matrix(&IntMatrix::diagonal(&[-1, 1, 1]), &tau).unwrap());
        assert_eq!(
            admissible_h2_matrix(&IntMatrix::diagonal(&[2, 1, 1]), &tau),
            Err(Error::NotUnimodular)
        );
    }

    #[test]
    fn signed_permutation_counts() {
        let tau = TransgressionData::from_algebra(&minimal_model()).unwrap();
        assert_eq!(tau, TransgressionData::three_variable(1, 2, 3));
        assert_eq!(signed_permutations(3).len(), 48);
        let adm = enumerate_admissible_signed_permutations(&tau);
        assert_eq!(adm.len(), 8);
        assert!(adm.iter().all(is_diagonal));
        assert_eq!(
            enumerate_admissible_signed_permutations(&TransgressionData::three_variable(1, 1, 1))
                .len(),
            48
        );
    }

    #[test]
    fn small_sweep() {
        let tau = TransgressionData::three_variable(1, 2, 3);
        let s = unimodular_sweep(&tau, 1).unwrap();
        assert_eq!(s.matrices, 3u64.pow(9));
        assert_eq!(s.admissible, 8);
        assert!(s.non_diagonal.is_empty());
    }
}
