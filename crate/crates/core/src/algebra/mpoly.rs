//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rat::{self, Rat};
use crate::error::{Error, Result};

/// An ordered list of variable names shared by the polynomials of one ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Vars> {
        Arc::new(Vars {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub type Exponents = Vec<u32>;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: Arc<Vars>,
    terms: BTreeMap<Exponents, Rat>,
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl MPoly {
    pub fn zero(vars: &Arc<Vars>) -> Self {
        MPoly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vars>, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<Vars>) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn var(vars: &Arc<Vars>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rat::one())
    }

    pub fn monomial(vars: &Arc<Vars>, exps: Exponents, c: Rat) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: u32) -> MPoly {
        MPoly {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "evaluation point length");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= rat::pow(x, k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images must share one ring.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.vars.len(), "substitution length");
        let target = match images.first() {
            Some(p) => Arc::clone(&p.vars),
            None => return self.clone(),
        };
        // cache powers per variable
        let mut cache: BTreeMap<(usize, u32), MPoly> = BTreeMap::new();
        let mut acc = MPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, k))
                    .or_insert_with(|| images[i].pow(k))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Moves the polynomial into another ring via a variable index map.
    pub fn rename(&self, target: &Arc<Vars>, map: &[usize]) -> MPoly {
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    ne[map[i]] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_ring(&self, other: &MPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials live in different rings"
        );
    }

    /// Terms in canonical display order: total degree descending, then
    /// exponent vectors descending (so `z00` sorts before `z01`).
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| total(b).cmp(&total(a)).then_with(|| b.cmp(a)));
        v
    }
}

/// Lowest-degree homogeneous component.
pub fn lowest_degree_part(p: &MPoly) -> Result<MPoly> {
    match p.min_degree() {
        Some(d) => Ok(p.homogeneous_part(d)),
        None => Err(Error::InvalidArgument(
            "lowest degree part of the zero polynomial".into(),
        )),
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = MPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    /// Canonical form, e.g. `3*z01^2 - z00*z11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(i), k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rat::to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat::to_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
