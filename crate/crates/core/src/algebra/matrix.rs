//! Dense row-major matrices over rationals and over polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rat::{self, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rat>;
pub type PolyMatrix = Matrix<MPoly>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rat::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Rat::zero() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat::int(x)).collect()).collect())
            .expect("well-formed literal")
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices; panics on mismatched shapes.
    pub fn chain(ms: &[&QMatrix]) -> QMatrix {
        let mut acc = ms[0].clone();
        for m in &ms[1..] {
            acc = acc.mul(m).expect("chain dimensions");
        }
        acc
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)]))
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)]))
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        self.map(|x| x * c)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> Rat {
        self.data
            .iter()
            .map(num_traits::Signed::abs)
            .max()
            .unwrap_or_else(Rat::zero)
    }

    fn check_shape(&self, other: &QMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Rows of reduced fraction strings, the canonical serialization.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rat::to_string).collect())
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<QMatrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| rat::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(rat::to_f64)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_string_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl PolyMatrix {
    pub fn eval(&self, point: &[Rat]) -> QMatrix {
        self.map(|p| p.eval(point))
    }

    pub fn substitute(&self, images: &[MPoly]) -> PolyMatrix {
        self.map(|p| p.substitute(images))
    }

    /// Determinant of the square submatrix on `rows` x `cols`, by Laplace
    /// expansion along rows with memoization over column subsets.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> MPoly {
        assert_eq!(rows.len(), cols.len(), "square minor");
        assert!(cols.len() <= 31, "minor too large");
        let vars = self[(0, 0)].vars().clone();
        let k = rows.len();
        let mut memo: HashMap<u32, MPoly> = HashMap::new();
        fn go(
            m: &PolyMatrix,
            rows: &[usize],
            cols: &[usize],
            mask: u32,
            memo: &mut HashMap<u32, MPoly>,
            vars: &std::sync::Arc<super::mpoly::Vars>,
        ) -> MPoly {
            let used = cols.len() - mask.count_ones() as usize;
            if mask == 0 {
                return MPoly::one(vars);
            }
            if let Some(p) = memo.get(&mask) {
                return p.clone();
            }
            let i = rows[used];
            let mut acc = MPoly::zero(vars);
            let mut seen = 0;
            for (j, &c) in cols.iter().enumerate() {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = &m[(i, c)];
                if !entry.is_zero() {
                    let sub = go(m, rows, cols, mask & !(1 << j), memo, vars);
                    let term = entry * &sub;
                    acc = if seen % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                seen += 1;
            }
            memo.insert(mask, acc.clone());
            acc
        }
        go(self, rows, cols, (1u32 << k) - 1, &mut memo, &vars)
    }

    pub fn det(&self) -> Result<MPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor_det(&idx, &idx))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    #[test]
    fn product_and_transpose() {
        let a = QMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), QMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), QMatrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&QMatrix::zeros(3, 1)).is_err());
        assert_eq!(a.mul_vec(&[int(1), int(1)]), vec![int(3), int(7)]);
    }

    #[test]
    fn string_round_trip() {
        let a = QMatrix::diagonal(&[crate::algebra::rat::rat(1, 2), int(-3)]);
        let rows = a.to_string_rows();
        assert_eq!(rows[0], vec!["1/2", "0"]);
        assert_eq!(QMatrix::from_string_rows(&rows).unwrap(), a);
        assert_eq!(a.to_string(), "[[1/2, 0], [0, -3]]");
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(4, 2)[0], vec![0, 1]);
        assert_eq!(subsets(4, 2)[5], vec![2, 3]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
