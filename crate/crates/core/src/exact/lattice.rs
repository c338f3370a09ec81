//! Integer lattices: kernels, Hermite normal form and the intertwiner
//! lattice `{G : G·F1 = F2·G}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Z-basis of the integer kernel `{x ∈ Z^N : A x = 0}`, in Hermite normal form.
///
/// Column operations reduce `A` to column echelon form while tracking the
/// unimodular transform; the transform columns that map to zero columns span
/// the saturated kernel.
pub fn integer_kernel(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    // Work on columns: col[j] = (A column j, U column j).
    let mut acols: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect();
    let mut ucols: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..cols).map(|i| BigInt::from((i == j) as i64)).collect())
        .collect();

    let mut pivot = 0;
    for i in 0..rows {
        if pivot == cols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot..cols).filter(|&j| !acols[j][i].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    acols.swap(pivot, j);
                    ucols.swap(pivot, j);
                    pivot += 1;
                }
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&j| acols[j][i].abs()).unwrap();
            for &j in &nonzero {
                if j == p {
                    continue;
                }
                let q = acols[j][i].div_floor(&acols[p][i]);
                let (pa, pu) = (acols[p].clone(), ucols[p].clone());
                for (x, y) in acols[j].iter_mut().zip(&pa) {
                    *x -= &q * y;
                }
                for (x, y) in ucols[j].iter_mut().zip(&pu) {
                    *x -= &q * y;
                }
            }
        }
    }
    hermite_normal_form(ucols[pivot..].to_vec())
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: pivots
/// positive, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped. Two generating sets span the same lattice iff their HNFs agree.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&i) = nonzero.first() {
                    rows.swap(r, i);
                    if rows[r][c].is_negative() {
                        for x in rows[r].iter_mut() {
                            *x = -&*x;
                        }
                    }
                    pivots.push((r, c));
                    r += 1;
                }
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            let prow = rows[p].clone();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = rows[i][c].div_floor(&prow[c]);
                for (x, y) in rows[i].iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows.truncate(r);
    for &(pr, pc) in &pivots {
        let prow = rows[pr].clone();
        for row in rows.iter_mut().take(pr) {
            let q = row[pc].div_floor(&prow[pc]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

/// Whether `v` lies in the Z-span of the rows of an HNF basis.
pub fn hnf_contains(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in hnf {
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if v[..pc].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = v[pc].div_rem(&row[pc]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Matrix of the linear map `G ↦ G·F1 − F2·G` acting on row-major `vec(G)`.
pub fn intertwiner_operator(f1: &IntMatrix, f2: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    let n = f1.rows();
    if !f1.is_square() || !f2.is_square() || f2.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "intertwiner needs equal square sizes, got {}x{} and {}x{}",
            f1.rows(),
            f1.cols(),
            f2.rows(),
            f2.cols()
        )));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut op = vec![vec![BigInt::zero(); n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            let eq = &mut op[idx(i, j)];
            for k in 0..n {
                eq[idx(i, k)] += f1.get(k, j);
                eq[idx(k, j)] -= f2.get(i, k);
            }
        }
    }
    Ok(op)
}

/// Z-basis (Hermite-reduced) of `{G ∈ M(n×n; Z) : G·F1 = F2·G}`. Empty iff
/// only the zero matrix solves the equation.
pub fn intertwiner_lattice(f1: &IntMatrix, f2: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let n = f1.rows();
    let op = intertwiner_operator(f1, f2)?;
    integer_kernel(&op, n * n)
        .into_iter()
        .map(|v| IntMatrix::new(n, n, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel spanned by (2, -1), not (4, -2).
        let k = integer_kernel(&ints(&[&[2, 4]]), 2);
        assert_eq!(k, ints(&[&[2, -1]]));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_normal_form(ints(&[&[2, 3], &[4, 5]]));
        let b = hermite_normal_form(ints(&[&[2, 1], &[0, 1]]));
        assert_eq!(a, b);
        assert!(hnf_contains(&a, &ints(&[&[6, 9]])[0]));
        assert!(!hnf_contains(
            &hermite_normal_form(ints(&[&[2, 0]])),
            &ints(&[&[1, 0]])[0]
        ));
    }

    #[test]
    fn identity_commutant_is_everything() {
        let id = IntMatrix::identity(2);
        assert_eq!(intertwiner_lattice(&id, &id).unwrap().len(), 4);
    }

    #[test]
    fn companion_commutant_is_spanned_by_one_and_f() {
        let f = IntMatrix::from_rows(&[[0, -1], [1, 1]]);
        let lattice = intertwiner_lattice(&f, &f).unwrap();
        let expected = hermite_normal_form(vec![
            IntMatrix::identity(2).entries().to_vec(),
            f.entries().to_vec(),
        ]);
        let got: Vec<Vec<BigInt>> = lattice.iter().map(|g| g.entries().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let r = intertwiner_lattice(&IntMatrix::identity(2), &IntMatrix::identity(3));
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }
}
