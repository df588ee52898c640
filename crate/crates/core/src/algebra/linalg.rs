//! Exact Gaussian elimination over the rationals.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::mpoly::{Exponents, MPoly};
use super::rat::Rat;
use crate::error::{Error, Result};

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (QMatrix::from_rows(a).expect("shape preserved"), pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Rank of a list of row vectors (0 for an empty list).
pub fn rank_of_rows(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    rank(&QMatrix::from_rows(rows.to_vec()).expect("uniform rows"))
}

pub fn det(m: &QMatrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(d)
}

pub fn inverse(m: &QMatrix) -> Result<QMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let aug = QMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] >= n {
        return Err(Error::Precondition("matrix is singular".into()));
    }
    Ok(QMatrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rat>> {
    let (r, piv) = rref(m);
    let cols = m.cols();
    let pivset: BTreeSet<usize> = piv.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivset.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &p) in piv.iter().enumerate() {
            v[p] = -r[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &QMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = m.cols();
    let aug = QMatrix::from_fn(m.rows(), cols + 1, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, piv) = rref(&aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &p) in piv.iter().enumerate() {
        x[p] = r[(row, cols)].clone();
    }
    Some(x)
}

/// Coefficient matrix of `polys` over the union of their monomials,
/// columns sorted by exponent vector.
pub fn coefficient_matrix(polys: &[MPoly]) -> (Vec<Exponents>, Vec<Vec<Rat>>) {
    let monos: BTreeSet<Exponents> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e.clone()))
        .collect();
    let monos: Vec<Exponents> = monos.into_iter().collect();
    let rows = polys
        .iter()
        .map(|p| monos.iter().map(|e| p.coefficient(e)).collect())
        .collect();
    (monos, rows)
}

/// Dimension of the linear span of `polys`.
pub fn span_rank(polys: &[MPoly]) -> usize {
    let (monos, rows) = coefficient_matrix(polys);
    if monos.is_empty() {
        return 0;
    }
    rank_of_rows(&rows)
}

/// Whether two families of polynomials span the same vector space.
pub fn same_span(a: &[MPoly], b: &[MPoly]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && span_rank(&all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn inverse_and_det() {
        let a = QMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(det(&a).unwrap(), int(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, QMatrix::from_i64(&[&[4, -1], &[-7, 2]]));
        assert!(inverse(&QMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let a = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let ker = nullspace(&a);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let x = solve(&a, &[int(3), int(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(3), int(6)]);
        assert!(solve(&a, &[int(1), int(1)]).is_none());
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(xs in proptest::collection::vec(-4i64..5, 18)) {
            let a = QMatrix::from_fn(3, 3, |i, j| int(xs[3 * i + j]));
            let b = QMatrix::from_fn(3, 3, |i, j| rat(xs[9 + 3 * i + j], 2));
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
            if let Ok(inv) = inverse(&a) {
                prop_assert_eq!(a.mul(&inv).unwrap(), QMatrix::identity(3));
            }
        }
    }
}
