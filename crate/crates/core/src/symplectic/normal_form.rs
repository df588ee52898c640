//! Symplectic congruence normal forms for points of `X_{2r}`.
//!
//! A point `Z` is first split by an exact rational symplectic change of basis
//! `R0` into a diagonal `D` with `Z = R0 D R0^t`:
//!
//! * full rank (`Z Omega Z = lambda Omega`): a symplectic basis of pairs
//!   `(e, f)` with `f = T e / Z(e,e)`, `T = -Omega Z`, diagonalizes `Z`;
//! * rank `k <= r` (`Z Omega Z = 0`): `Z = sum c_i u_i u_i^t` with `u_i` in the
//!   isotropic image of `Z`, completed to a symplectic basis.
//!
//! The diagonal `D` is then moved onto `I_k` (or the identity) by the block
//! matrices `diag(a, 1/a)` and `[[0, -1/b], [b, 0]]` on each coordinate pair.
//! This needs square roots; when they are all rational the witness is exact,
//! otherwise it is evaluated in complex double precision and certified by its
//! residual.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::{is_symplectic, omega, pair_permutation};
use super::strata::{classify_point, standard_point, StratumLabel};
use crate::algebra::matrix::Matrix;
use crate::algebra::rat::{self, Rat};
use crate::algebra::{linalg, ProjSymPoint, QMatrix};
use crate::error::{Error, Result};

pub const RESIDUAL_BOUND: f64 = 1e-9;

type CMatrix = Matrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Exact(QMatrix),
    Approximate(CMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rat),
    Approximate(Complex64),
}

/// `witness * target * witness^t = scale * Z`, where `Z` is the normalized
/// integer matrix of the input point.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResult {
    pub r: usize,
    pub label: StratumLabel,
    pub target: QMatrix,
    pub witness: Witness,
    pub scale: Scalar,
    /// Max-norm residual of both the congruence (on the input scaled to
    /// max-norm 1) and `W^t Omega W = Omega`. Zero in exact mode.
    pub certificate: f64,
}

impl NormalFormResult {
    pub fn is_exact(&self) -> bool {
        matches!(self.witness, Witness::Exact(_))
    }

    pub fn mode(&self) -> &'static str {
        if self.is_exact() {
            "exact"
        } else {
            "approximate"
        }
    }
}

#[derive(Serialize)]
struct Wire<'a> {
    r: usize,
    label: String,
    mode: &'a str,
    target: Vec<Vec<String>>,
    witness: serde_json::Value,
    scale: serde_json::Value,
    certificate: f64,
}

fn complex_json(z: &Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

impl Serialize for NormalFormResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let witness = match &self.witness {
            Witness::Exact(m) => serde_json::json!(m.to_string_rows()),
            Witness::Approximate(m) => serde_json::Value::Array(
                m.to_rows()
                    .iter()
                    .map(|r| serde_json::Value::Array(r.iter().map(complex_json).collect()))
                    .collect(),
            ),
        };
        let scale = match &self.scale {
            Scalar::Exact(x) => serde_json::json!(rat::to_string(x)),
            Scalar::Approximate(z) => complex_json(z),
        };
        Wire {
            r: self.r,
            label: self.label.to_string(),
            mode: self.mode(),
            target: self.target.to_string_rows(),
            witness,
            scale,
            certificate: self.certificate,
        }
        .serialize(s)
    }
}

fn form(a: &[Rat], m: &QMatrix, b: &[Rat]) -> Rat {
    a.iter().zip(m.mul_vec(b)).map(|(x, y)| x * y).sum()
}

fn is_square(x: &Rat) -> bool {
    rat::sqrt_exact(x).is_some()
}

/// Small integer combinations of a basis, in a fixed order.
fn candidates(basis: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = basis.len();
    let mut out: Vec<Vec<Rat>> = basis.to_vec();
    let combo = |i: usize, j: usize, a: i64, b: i64| -> Vec<Rat> {
        basis[i]
            .iter()
            .zip(&basis[j])
            .map(|(x, y)| x * rat::int(a) + y * rat::int(b))
            .collect()
    };
    for (a, b) in [(1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, 1), (2, 3), (3, 2)] {
        for i in 0..n {
            for j in i + 1..n {
                out.push(combo(i, j, a, b));
            }
        }
    }
    out
}

/// Symplectic basis diagonalizing a full-rank `Z` with `Z Omega Z = lambda
/// Omega`. Returns rows `e_1..e_r, f_1..f_r` as a matrix `R` with
/// `R Z R^t` diagonal, preferring `Z(e,e)/mu` to be a square when `mu` is given.
fn full_rank_basis(z: &QMatrix, lambda: &Rat, mu: Option<&Rat>) -> Result<QMatrix> {
    let n = z.rows();
    let r = n / 2;
    let om = omega(r);
    let t = om.mul(z)?.scale(&-Rat::one());
    let mut space: Vec<Vec<Rat>> = QMatrix::identity(n).to_rows();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for _ in 0..r {
        let cands = candidates(&space);
        let ok = |e: &Vec<Rat>| {
            let a = form(e, z, e);
            !a.is_zero() && mu.is_none_or(|m| is_square(&(&a / m)))
        };
        let e = cands
            .iter()
            .find(|e| ok(e))
            .or_else(|| cands.iter().find(|e| !form(e, z, e).is_zero()))
            .cloned()
            .ok_or_else(|| Error::invariant("degenerate form on a symplectic complement", z.to_string()))?;
        let alpha = form(&e, z, &e);
        let f: Vec<Rat> = t.mul_vec(&e).into_iter().map(|x| x / &alpha).collect();
        debug_assert!(form(&e, &om, &f).is_one());
        debug_assert_eq!(form(&f, z, &f), lambda / &alpha);
        // omega-complement of <e, f> inside the current space
        let rows: Vec<Vec<Rat>> = vec![
            space.iter().map(|b| form(b, &om, &e)).collect(),
            space.iter().map(|b| form(b, &om, &f)).collect(),
        ];
        let kernel = if space.len() > 2 {
            linalg::nullspace(&QMatrix::from_rows(rows)?)
        } else {
            Vec::new()
        };
        space = kernel
            .iter()
            .map(|c| {
                (0..n)
                    .map(|idx| c.iter().zip(&space).map(|(ci, b)| ci * &b[idx]).sum())
                    .collect()
            })
            .collect();
        es.push(e);
        fs.push(f);
    }
    es.extend(fs);
    QMatrix::from_rows(es)
}

/// Columns `u_1..u_k` spanning an isotropic subspace, completed to a
/// symplectic matrix whose first `k` columns are the `u_i`.
pub fn complete_isotropic(r: usize, us: &[Vec<Rat>]) -> Result<QMatrix> {
    let n = 2 * r;
    let om = omega(r);
    let mut lag: Vec<Vec<Rat>> = us.to_vec();
    for u in us {
        for v in us {
            if !form(u, &om, v).is_zero() {
                return Err(Error::Precondition("vectors are not isotropic".into()));
            }
        }
    }
    if linalg::rank_of_rows(&lag) != lag.len() {
        return Err(Error::Precondition("vectors are dependent".into()));
    }
    let unit = |j: usize| -> Vec<Rat> { (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect() };
    while lag.len() < r {
        let perp: Vec<Vec<Rat>> = if lag.is_empty() {
            QMatrix::identity(n).to_rows()
        } else {
            let rows: Vec<Vec<Rat>> = lag.iter().map(|u| om.transpose().mul_vec(u)).collect();
            linalg::nullspace(&QMatrix::from_rows(rows)?)
        };
        let mut pool: Vec<Vec<Rat>> = (0..n).map(unit).filter(|e| lag.iter().all(|u| form(u, &om, e).is_zero())).collect();
        pool.extend(perp);
        let next = pool
            .into_iter()
            .find(|v| {
                let mut t = lag.clone();
                t.push(v.clone());
                linalg::rank_of_rows(&t) == t.len()
            })
            .ok_or_else(|| Error::invariant("cannot extend isotropic set", format!("{lag:?}")))?;
        lag.push(next);
    }
    // U^t Omega F0 = I, then F = F0 + U (S/2) with S = F0^t Omega F0
    let u = QMatrix::from_rows(lag.clone())?.transpose();
    let ut_om = u.transpose().mul(&om)?;
    let mut f0_cols = Vec::with_capacity(r);
    for j in 0..r {
        let rhs: Vec<Rat> = (0..r).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        f0_cols.push(linalg::solve(&ut_om, &rhs).ok_or_else(|| Error::invariant("no dual vector", u.to_string()))?);
    }
    let f0 = QMatrix::from_rows(f0_cols)?.transpose();
    let s = QMatrix::chain(&[&f0.transpose(), &om, &f0]);
    let f = f0.add(&u.mul(&s.scale(&rat::rat(1, 2)))?)?;
    let w = QMatrix::from_fn(n, n, |i, j| if j < r { u[(i, j)].clone() } else { f[(i, j - r)].clone() });
    if !is_symplectic(&w) {
        return Err(Error::invariant("completion is not symplectic", w.to_string()));
    }
    Ok(w)
}

/// `Z = W0 diag(c_1..c_k, 0..0) W0^t` with `W0` rational symplectic, for
/// `Z Omega Z = 0`.
fn isotropic_split(r: usize, z: &QMatrix) -> Result<(QMatrix, Vec<Rat>)> {
    let n = 2 * r;
    let mut rest = z.clone();
    let mut us = Vec::new();
    let mut cs: Vec<Rat> = Vec::new();
    let basis = QMatrix::identity(n).to_rows();
    let cands = candidates(&basis);
    while !rest.is_zero() {
        let value = |x: &Vec<Rat>| form(x, &rest, x);
        let good = |x: &Vec<Rat>| {
            let q = value(x);
            !q.is_zero() && cs.first().is_none_or(|c0| is_square(&(c0 * &q)))
        };
        let x = cands
            .iter()
            .find(|x| good(x))
            .or_else(|| cands.iter().find(|x| !value(x).is_zero()))
            .cloned()
            .ok_or_else(|| Error::invariant("symmetric form without anisotropic vector", rest.to_string()))?;
        let q = value(&x);
        let u = rest.mul_vec(&x);
        let c = q.recip();
        let uut = QMatrix::from_fn(n, n, |i, j| &u[i] * &u[j] * &c);
        rest = rest.sub(&uut)?;
        us.push(u);
        cs.push(c);
    }
    let w0 = complete_isotropic(r, &us)?;
    Ok((w0, cs))
}

/// Exact square root of `x / s`, if rational.
fn root(x: &Rat, s: &Rat) -> Option<Rat> {
    rat::sqrt_exact(&(x / s))
}

fn csqrt(x: Complex64) -> Complex64 {
    x.sqrt()
}

/// Per-pair types of a diagonal point with `alpha_i alpha_{r+i} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pair {
    Upper,
    Lower,
    Empty,
}

struct DiagonalPlan {
    pairs: Vec<Pair>,
    perm: QMatrix,
}

fn plan(r: usize, d: &[Rat]) -> DiagonalPlan {
    let pairs: Vec<Pair> = (0..r)
        .map(|i| {
            if !d[i].is_zero() {
                Pair::Upper
            } else if !d[r + i].is_zero() {
                Pair::Lower
            } else {
                Pair::Empty
            }
        })
        .collect();
    let mut pi: Vec<usize> = (0..r).filter(|&i| pairs[i] != Pair::Empty).collect();
    pi.extend((0..r).filter(|&i| pairs[i] == Pair::Empty));
    DiagonalPlan {
        pairs,
        perm: pair_permutation(&pi),
    }
}

/// Exact witness for a diagonal `D`: `W I' W^t = D / sigma` with the pair
/// blocks of the proof, composed with the pair permutation taking `I_k` to
/// the support pattern `I'`.
fn diagonal_exact(r: usize, d: &[Rat], full: bool) -> Option<(QMatrix, Rat)> {
    let n = 2 * r;
    let mut w = QMatrix::identity(n);
    if full {
        let lambda = &d[0] * &d[r];
        let mu0 = rat::sqrt_exact(&lambda)?;
        for mu in [mu0.clone(), -mu0] {
            let roots: Option<Vec<Rat>> = (0..r).map(|i| root(&d[i], &mu)).collect();
            if let Some(a) = roots {
                for (i, ai) in a.iter().enumerate() {
                    w[(i, i)] = ai.clone();
                    w[(r + i, r + i)] = ai.recip();
                }
                return Some((w, mu.recip()));
            }
        }
        return None;
    }
    let p = plan(r, d);
    let nonzero: Vec<&Rat> = d.iter().filter(|x| !x.is_zero()).collect();
    for sigma in nonzero {
        let mut ok = true;
        let mut wm = QMatrix::identity(n);
        for i in 0..r {
            match p.pairs[i] {
                Pair::Upper => match root(&d[i], sigma) {
                    Some(a) => {
                        wm[(i, i)] = a.clone();
                        wm[(r + i, r + i)] = a.recip();
                    }
                    None => ok = false,
                },
                Pair::Lower => match root(&d[r + i], sigma) {
                    Some(b) => {
                        wm[(i, i)] = Rat::zero();
                        wm[(r + i, r + i)] = Rat::zero();
                        wm[(i, r + i)] = -b.recip();
                        wm[(r + i, i)] = b;
                    }
                    None => ok = false,
                },
                Pair::Empty => {}
            }
            if !ok {
                break;
            }
        }
        if ok {
            return Some((wm.mul(&p.perm).expect("square"), sigma.recip()));
        }
    }
    None
}

/// Complex witness for a diagonal `D`, same construction as the exact one.
fn diagonal_approx(r: usize, d: &[Rat], full: bool) -> (CMatrix, Complex64) {
    let n = 2 * r;
    let c = |x: &Rat| Complex64::new(rat::to_f64(x), 0.0);
    let mut w = Matrix::from_fn(n, n, |i, j| if i == j { Complex64::one() } else { Complex64::zero() });
    if full {
        let mu = csqrt(c(&d[0]) * c(&d[r]));
        for i in 0..r {
            let a = csqrt(c(&d[i]) / mu);
            w[(i, i)] = a;
            w[(r + i, r + i)] = a.inv();
        }
        return (w, mu.inv());
    }
    let p = plan(r, d);
    let sigma = c(d.iter().find(|x| !x.is_zero()).expect("nonzero diagonal"));
    for i in 0..r {
        match p.pairs[i] {
            Pair::Upper => {
                let a = csqrt(c(&d[i]) / sigma);
                w[(i, i)] = a;
                w[(r + i, r + i)] = a.inv();
            }
            Pair::Lower => {
                let b = csqrt(c(&d[r + i]) / sigma);
                w[(i, i)] = Complex64::zero();
                w[(r + i, r + i)] = Complex64::zero();
                w[(i, r + i)] = -b.inv();
                w[(r + i, i)] = b;
            }
            Pair::Empty => {}
        }
    }
    (cmul(&w, &to_complex(&p.perm)), sigma.inv())
}

fn to_complex(m: &QMatrix) -> CMatrix {
    m.map(|x| Complex64::new(rat::to_f64(x), 0.0))
}

fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a[(i, k)] * b[(k, j)]).sum())
}

fn max_dist(a: &CMatrix, b: &CMatrix) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

fn diagonal_entries(m: &QMatrix) -> Option<Vec<Rat>> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m[(i, j)].is_zero() {
                return None;
            }
        }
    }
    Some((0..m.rows()).map(|i| m[(i, i)].clone()).collect())
}

/// Normal form of a point of `X_{2r}`: a symplectic witness `W` and target
/// `I_k` (or the identity) with `W target W^t` proportional to `Z`.
pub fn normal_form(r: usize, z: &ProjSymPoint) -> Result<NormalFormResult> {
    let label = classify_point(r, z)?;
    let k = match label {
        StratumLabel::OutsideX => {
            return Err(Error::Precondition(format!("point is not on X_{}", 2 * r)));
        }
        StratumLabel::FullRank => 2 * r,
        StratumLabel::Rank(k) => k,
    };
    let full = k == 2 * r;
    let zm = z.matrix();
    let target = standard_point(r, k);

    let attempt = |mu: Option<&Rat>| -> Result<(QMatrix, Vec<Rat>)> {
        if let Some(d) = diagonal_entries(&zm) {
            return Ok((QMatrix::identity(2 * r), d));
        }
        if full {
            let lambda = QMatrix::chain(&[&zm, &omega(r), &zm])[(0, r)].clone();
            let rm = full_rank_basis(&zm, &lambda, mu)?;
            let d = QMatrix::chain(&[&rm, &zm, &rm.transpose()]);
            let diag = diagonal_entries(&d).ok_or_else(|| Error::invariant("basis does not diagonalize", d.to_string()))?;
            Ok((linalg::inverse(&rm)?, diag))
        } else {
            let (w0, cs) = isotropic_split(r, &zm)?;
            let mut d = vec![Rat::zero(); 2 * r];
            for (i, c) in cs.into_iter().enumerate() {
                d[i] = c;
            }
            Ok((w0, d))
        }
    };

    let mut splits = Vec::new();
    if full {
        let lambda = QMatrix::chain(&[&zm, &omega(r), &zm])[(0, r)].clone();
        if let Some(m) = rat::sqrt_exact(&lambda) {
            splits.push(attempt(Some(&m))?);
            splits.push(attempt(Some(&-m))?);
        }
    }
    if splits.is_empty() {
        splits.push(attempt(None)?);
    }

    for (r0, d) in &splits {
        if let Some((wd, scale)) = diagonal_exact(r, d, full) {
            let w = r0.mul(&wd)?;
            let lhs = QMatrix::chain(&[&w, &target, &w.transpose()]);
            if !is_symplectic(&w) || lhs != zm.scale(&scale) {
                return Err(Error::invariant("exact normal form failed verification", w.to_string()));
            }
            return Ok(NormalFormResult {
                r,
                label,
                target,
                witness: Witness::Exact(w),
                scale: Scalar::Exact(scale),
                certificate: 0.0,
            });
        }
    }

    let (r0, d) = &splits[0];
    let (wd, scale) = diagonal_approx(r, d, full);
    let w = cmul(&to_complex(r0), &wd);
    let norm = rat::to_f64(&zm.max_abs());
    let wt = Matrix::from_fn(w.cols(), w.rows(), |i, j| w[(j, i)]);
    let lhs = cmul(&cmul(&w, &to_complex(&target)), &wt).map(|x| x / (scale * norm));
    let zn = to_complex(&zm).map(|x| x / norm);
    let om = to_complex(&omega(r));
    let sym = cmul(&cmul(&wt, &om), &w);
    let certificate = max_dist(&lhs, &zn).max(max_dist(&sym, &om));
    if !(certificate <= RESIDUAL_BOUND) {
        return Err(Error::invariant(
            format!("approximate normal form residual {certificate:e} exceeds {RESIDUAL_BOUND:e}"),
            zm.to_string(),
        ));
    }
    Ok(NormalFormResult {
        r,
        label,
        target,
        witness: Witness::Approximate(w),
        scale: Scalar::Approximate(scale),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn point(m: &QMatrix) -> ProjSymPoint {
        ProjSymPoint::new(m).unwrap()
    }

    #[test]
    fn diagonal_full_rank_example() {
        let z = QMatrix::diagonal(&[int(4), int(1), rat(1, 4), int(1)]);
        let res = normal_form(2, &point(&z)).unwrap();
        let Witness::Exact(w) = &res.witness else { panic!("expected exact mode") };
        // the point normalizes to diag(16, 4, 1, 4); the witness is unchanged
        assert_eq!(w, &QMatrix::diagonal(&[int(2), int(1), rat(1, 2), int(1)]));
        assert_eq!(res.target, QMatrix::identity(4));
        assert_eq!(res.label, StratumLabel::FullRank);
    }

    #[test]
    fn fixed_points_have_identity_witness() {
        for r in 1..=3 {
            for k in 1..=r {
                let res = normal_form(r, &point(&standard_point(r, k))).unwrap();
                assert_eq!(res.witness, Witness::Exact(QMatrix::identity(2 * r)));
                assert_eq!(res.target, standard_point(r, k));
            }
        }
    }

    #[test]
    fn mixed_pair_block() {
        let z = QMatrix::diagonal(&[int(1), int(0), int(0), int(1)]);
        let res = normal_form(2, &point(&z)).unwrap();
        let Witness::Exact(w) = &res.witness else { panic!("expected exact mode") };
        assert!(is_symplectic(w));
        assert_eq!(res.target, standard_point(2, 2));
        assert_eq!(QMatrix::chain(&[w, &res.target, &w.transpose()]), z);
    }

    #[test]
    fn negative_lambda_goes_approximate() {
        let z = QMatrix::diagonal(&[int(1), int(1), int(-1), int(-1)]);
        let res = normal_form(2, &point(&z)).unwrap();
        assert!(!res.is_exact());
        assert!(res.certificate <= RESIDUAL_BOUND);
    }

    #[test]
    fn outside_points_are_rejected() {
        let z = standard_point(2, 3);
        assert!(matches!(normal_form(2, &point(&z)), Err(Error::Precondition(_))));
    }

    #[test]
    fn completion_of_isotropic_vectors() {
        let u = vec![int(1), int(1), int(0), int(0)];
        let w = complete_isotropic(2, std::slice::from_ref(&u)).unwrap();
        assert_eq!(w.col(0), u);
        assert!(complete_isotropic(2, &[vec![int(1), int(0), int(0), int(0)], vec![int(0), int(0), int(1), int(0)]]).is_err());
    }
}
