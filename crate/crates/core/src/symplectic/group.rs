//! The symplectic group `Sp(2r)` and a seeded sampler of its rational points.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg;
use crate::algebra::rat::{self, Rat};
use crate::algebra::QMatrix;
use crate::error::{Error, Result};

/// The standard form `[[0, I], [-I, 0]]`.
pub fn omega(r: usize) -> QMatrix {
    QMatrix::from_fn(2 * r, 2 * r, |i, j| {
        if j == i + r {
            Rat::one()
        } else if i == j + r {
            -Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Exact test of `M^t Omega M = Omega`.
pub fn is_symplectic(m: &QMatrix) -> bool {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let o = omega(m.rows() / 2);
    QMatrix::chain(&[&m.transpose(), &o, m]) == o
}

/// A `2r x 2r` rational matrix known to satisfy `M^t Omega M = Omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMat {
    r: usize,
    matrix: QMatrix,
}

impl SymplecticMat {
    pub fn new(m: QMatrix) -> Result<Self> {
        if !is_symplectic(&m) {
            return Err(Error::invariant("matrix is not symplectic", m.to_string()));
        }
        Ok(SymplecticMat {
            r: m.rows() / 2,
            matrix: m,
        })
    }

    pub fn identity(r: usize) -> Self {
        SymplecticMat {
            r,
            matrix: QMatrix::identity(2 * r),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> QMatrix {
        self.matrix
    }

    pub fn compose(&self, other: &SymplecticMat) -> SymplecticMat {
        SymplecticMat {
            r: self.r,
            matrix: self.matrix.mul(&other.matrix).expect("same size"),
        }
    }

    /// `M Z M^t`.
    pub fn act(&self, z: &QMatrix) -> QMatrix {
        QMatrix::chain(&[&self.matrix, z, &self.matrix.transpose()])
    }
}

/// The pair permutation `pi (+) pi`, sending `e_i -> e_pi(i)` and
/// `e_{r+i} -> e_{r+pi(i)}`.
pub fn pair_permutation(pi: &[usize]) -> QMatrix {
    let r = pi.len();
    let mut m = QMatrix::zeros(2 * r, 2 * r);
    for (i, &p) in pi.iter().enumerate() {
        m[(p, i)] = Rat::one();
        m[(r + p, r + i)] = Rat::one();
    }
    m
}

/// Lower Borel element `[[A, 0], [B, A^{-t}]]` with `A^t B` symmetric, built
/// as `B = A^{-t} S` for a unipotent lower triangular `A` and symmetric `S`.
fn borel(r: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    let a = QMatrix::from_fn(r, r, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Rat::one(),
        std::cmp::Ordering::Greater => rat::int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Less => Rat::zero(),
    });
    let mut s = QMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let v = rat::int(rng.gen_range(-2..=2));
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    let a_inv_t = linalg::inverse(&a).expect("unipotent").transpose();
    let b = a_inv_t.mul(&s).expect("square");
    QMatrix::from_fn(2 * r, 2 * r, |i, j| match (i < r, j < r) {
        (true, true) => a[(i, j)].clone(),
        (true, false) => Rat::zero(),
        (false, true) => b[(i - r, j)].clone(),
        (false, false) => a_inv_t[(i - r, j - r)].clone(),
    })
}

/// Deterministic random element of `Sp(2r)` with small integer entries.
/// Seed 0 is reserved for the identity.
pub fn random_symplectic(r: usize, seed: u64) -> Result<SymplecticMat> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if seed == 0 {
        return Ok(SymplecticMat::identity(r));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pi: Vec<usize> = (0..r).collect();
    pi.shuffle(&mut rng);
    let mut m = QMatrix::chain(&[&borel(r, &mut rng), &pair_permutation(&pi)]);
    if rng.gen_bool(0.5) {
        m = m.mul(&omega(r)).expect("square");
    }
    m = m.mul(&borel(r, &mut rng)).expect("square");
    if rng.gen_bool(0.5) {
        m = m.mul(&omega(r)).expect("square");
        m = m.mul(&borel(r, &mut rng)).expect("square");
    }
    debug_assert!(is_symplectic(&m));
    SymplecticMat::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn omega_is_symplectic() {
        for r in 1..5 {
            assert!(is_symplectic(&omega(r)));
            assert!(is_symplectic(&pair_permutation(&(0..r).rev().collect::<Vec<_>>())));
        }
        assert!(!is_symplectic(&QMatrix::diagonal(&[rat::int(2), rat::int(1)])));
        assert!(!is_symplectic(&QMatrix::identity(3)));
    }

    #[test]
    fn seed_zero_is_identity() {
        assert_eq!(random_symplectic(3, 0).unwrap(), SymplecticMat::identity(3));
        assert!(random_symplectic(0, 1).is_err());
    }

    #[test]
    fn samples_are_symplectic_and_distinct() {
        for r in 1..=3 {
            let mut seen = HashSet::new();
            for seed in 1..=100u64 {
                let m = random_symplectic(r, seed).unwrap();
                assert!(is_symplectic(m.matrix()));
                assert_eq!(m, random_symplectic(r, seed).unwrap());
                seen.insert(m.matrix().to_string());
            }
            if r > 1 {
                assert!(seen.len() >= 95, "r={r}: only {} distinct", seen.len());
            }
        }
    }
}
