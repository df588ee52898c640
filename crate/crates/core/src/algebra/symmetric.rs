//! Symmetric matrices of indeterminates `z_{i,j}` and their minors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::matrix::{subsets, PolyMatrix, QMatrix};
use super::mpoly::{MPoly, Vars};
use super::rat::Rat;
use crate::error::{Error, Result};

pub use super::mpoly::lowest_degree_part;

/// Row-major upper-triangle indexing of a `size x size` symmetric matrix:
/// `(0,0), (0,1), ..., (0,size-1), (1,1), ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymLayout {
    size: usize,
}

impl SymLayout {
    pub fn new(size: usize) -> Self {
        assert!(size >= 1, "symmetric layout of size 0");
        SymLayout { size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of distinct entries, `size(size+1)/2`.
    pub fn len(&self) -> usize {
        self.size * (self.size + 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(j < self.size, "symmetric index out of range");
        i * self.size + j - i * (i + 1) / 2
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::with_capacity(self.len());
        for i in 0..self.size {
            for j in i..self.size {
                v.push((i, j));
            }
        }
        v
    }

    pub fn name(&self, i: usize, j: usize) -> String {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if self.size <= 10 {
            format!("z{i}{j}")
        } else {
            format!("z{i}_{j}")
        }
    }

    /// The shared variable list `z00, z01, ...` for this size.
    pub fn vars(&self) -> Arc<Vars> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vars>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("variable cache poisoned");
        guard
            .entry(self.size)
            .or_insert_with(|| Vars::new(self.pairs().into_iter().map(|(i, j)| self.name(i, j))))
            .clone()
    }

    pub fn var(&self, i: usize, j: usize) -> MPoly {
        MPoly::var(&self.vars(), self.index(i, j))
    }

    pub fn upper_entries(&self, m: &QMatrix) -> Vec<Rat> {
        self.pairs().into_iter().map(|(i, j)| m[(i, j)].clone()).collect()
    }

    pub fn matrix_from_upper(&self, v: &[Rat]) -> QMatrix {
        assert_eq!(v.len(), self.len(), "upper-triangle length");
        QMatrix::from_fn(self.size, self.size, |i, j| v[self.index(i, j)].clone())
    }
}

/// The `(n+1) x (n+1)` symmetric matrix with entry `z_{min(i,j),max(i,j)}`.
pub fn symmetric_indeterminate_matrix(n: usize) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let layout = SymLayout::new(n + 1);
    Ok(PolyMatrix::from_fn(n + 1, n + 1, |i, j| layout.var(i, j)))
}

/// All `k x k` minors, ordered lexicographically by row set then column set.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<Vec<MPoly>> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return Err(Error::OutOfRange(format!(
            "minor size {k} for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let rs = subsets(m.rows(), k);
    let cs = subsets(m.cols(), k);
    let mut out = Vec::with_capacity(rs.len() * cs.len());
    for r in &rs {
        for c in &cs {
            out.push(m.minor_det(r, c));
        }
    }
    Ok(out)
}
