//! Quadratic equations of `X_{2r}`, the closure of the symplectic orbit of
//! the identity in the space of symmetric `2r x 2r` matrices.

use crate::algebra::{MPoly, SymLayout};
use crate::error::{Error, Result};

/// `N_{i,j}`, the `(i,j)` entry of `Z Omega Z` for the symbolic symmetric `Z`.
pub fn n_entry(r: usize, i: usize, j: usize) -> MPoly {
    let l = SymLayout::new(2 * r);
    let mut acc = MPoly::zero(&l.vars());
    for k in 0..r {
        acc = &acc - &(&l.var(i, k + r) * &l.var(k, j));
        acc = &acc + &(&l.var(i, k) * &l.var(k + r, j));
    }
    acc
}

/// The `(2r+1)(r-1)` quadrics cutting out `X_{2r}`: first `N_{i,j}` for
/// `i < j`, `j != r+i` in row-major order, then `N_{l,r+l} - N_{l+1,r+l+1}`.
pub fn orbit_equations(r: usize) -> Result<Vec<MPoly>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let mut eqs = Vec::with_capacity((2 * r + 1) * (r - 1));
    for i in 0..2 * r - 1 {
        for j in i + 1..2 * r {
            if j != r + i {
                eqs.push(n_entry(r, i, j));
            }
        }
    }
    for l in 0..r - 1 {
        eqs.push(&n_entry(r, l, r + l) - &n_entry(r, l + 1, r + l + 1));
    }
    debug_assert_eq!(eqs.len(), (2 * r + 1) * (r - 1));
    Ok(eqs)
}

pub fn equation_count(r: usize) -> usize {
    (2 * r + 1) * (r - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg;

    #[test]
    fn counts() {
        for (r, n) in [(1, 0), (2, 5), (3, 14), (4, 27)] {
            assert_eq!(orbit_equations(r).unwrap().len(), n);
            assert_eq!(equation_count(r), n);
        }
        assert!(orbit_equations(0).is_err());
    }

    #[test]
    fn equations_are_independent_quadrics() {
        for r in 2..=4 {
            let eqs = orbit_equations(r).unwrap();
            assert!(eqs.iter().all(|p| p.is_homogeneous() && p.total_degree() == Some(2)));
            assert_eq!(linalg::span_rank(&eqs), eqs.len());
        }
    }

    #[test]
    fn r2_first_equation() {
        // N_{0,1} = -z02*z01 - z03*z11 + z00*z21 + z01*z31
        let e = &orbit_equations(2).unwrap()[0];
        assert_eq!(e.to_string(), "z00*z12 - z01*z02 + z01*z13 - z03*z11");
    }
}
