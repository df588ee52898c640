//! Pointed full-dimensional rational cones in rank 2 and 3.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::rat;
use crate::algebra::Rat;
use crate::error::{Error, Result};

pub type Ray = Vec<BigInt>;

pub fn primitive(v: &[BigInt]) -> Ray {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigInt], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rat::from_integer(x.clone()))
        .sum()
}

fn cross(a: &[BigInt], b: &[BigInt]) -> Ray {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn det2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn to_rats(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// A pointed, full-dimensional cone. Rays are its extremal rays as
/// primitive integer vectors, sorted lexicographically; facets are the
/// primitive inward normals, also sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeQ {
    #[serde(serialize_with = "crate::cli::json::integer_rows")]
    rays: Vec<Ray>,
    #[serde(skip)]
    facets: Vec<Ray>,
}

impl ConeQ {
    /// Builds the cone spanned by rational generators. Redundant and
    /// repeated generators are discarded.
    pub fn new(gens: &[Vec<Rat>]) -> Result<Self> {
        let ints: Vec<Ray> = gens.iter().map(|g| rat::primitive_integer_vector(g)).collect();
        Self::from_rays(&ints)
    }

    pub fn from_rays(gens: &[Ray]) -> Result<Self> {
        let d = match gens.first() {
            Some(g) => g.len(),
            None => return Err(Error::InvalidArgument("cone with no generators".into())),
        };
        if !(2..=3).contains(&d) {
            return Err(Error::Unsupported(format!("cones of rank {d}")));
        }
        let mut rays: Vec<Ray> = Vec::new();
        for g in gens {
            if g.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "generator of length {} in rank {d}",
                    g.len()
                )));
            }
            if g.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArgument("zero generator".into()));
            }
            let p = primitive(g);
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        let facets = facet_normals(&rays, d)?;
        let needed = d - 1;
        let mut extremal: Vec<Ray> = rays
            .into_iter()
            .filter(|v| facets.iter().filter(|n| dot(n, v).is_zero()).count() >= needed)
            .collect();
        extremal.sort();
        Ok(ConeQ {
            rays: extremal,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.rays[0].len()
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn facets(&self) -> &[Ray] {
        &self.facets
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|n| !dot_rat(n, x).is_negative())
    }

    pub fn contains_in_interior(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|n| dot_rat(n, x).is_positive())
    }

    pub fn contains_ray(&self, v: &[BigInt]) -> bool {
        self.facets.iter().all(|n| !dot(n, v).is_negative())
    }

    pub fn contains_cone(&self, other: &ConeQ) -> bool {
        other.rays.iter().all(|v| self.contains_ray(v))
    }

    /// True when `x` is a positive multiple of one of the extremal rays.
    pub fn is_on_extremal_ray(&self, x: &[Rat]) -> bool {
        let p = rat::primitive_integer_vector(x);
        self.rays.contains(&p)
    }

    /// Rays lying on the facet with inward normal `n`.
    pub fn facet_rays(&self, n: &[BigInt]) -> Vec<Ray> {
        self.rays
            .iter()
            .filter(|v| dot(n, v).is_zero())
            .cloned()
            .collect()
    }

    /// A point in the interior: the sum of the extremal rays.
    pub fn interior_point(&self) -> Vec<Rat> {
        let d = self.dim();
        let mut s = vec![BigInt::zero(); d];
        for v in &self.rays {
            for (a, b) in s.iter_mut().zip(v) {
                *a += b;
            }
        }
        to_rats(&s)
    }
}

impl fmt::Display for ConeQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        write!(f, "cone[{}]", rays.join(", "))
    }
}

fn facet_normals(rays: &[Ray], d: usize) -> Result<Vec<Ray>> {
    let mut candidates: Vec<Ray> = Vec::new();
    match d {
        2 => {
            for v in rays {
                let n = vec![-v[1].clone(), v[0].clone()];
                candidates.push(n.clone());
                candidates.push(n.into_iter().map(|x| -x).collect());
            }
        }
        _ => {
            for (i, a) in rays.iter().enumerate() {
                for b in &rays[i + 1..] {
                    let n = cross(a, b);
                    if n.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let n = primitive(&n);
                    candidates.push(n.iter().map(|x| -x).collect());
                    candidates.push(n);
                }
            }
        }
    }
    let mut facets: Vec<Ray> = Vec::new();
    for n in candidates {
        if facets.contains(&n) {
            continue;
        }
        if rays.iter().any(|v| dot(&n, v).is_negative()) {
            continue;
        }
        let on: Vec<&Ray> = rays.iter().filter(|v| dot(&n, v).is_zero()).collect();
        if on.len() == rays.len() {
            return Err(Error::Precondition(
                "cone generators do not span the ambient space".into(),
            ));
        }
        facets.push(n);
    }
    if d == 2 && rays.len() < 2 {
        return Err(Error::Precondition(
            "cone generators do not span the ambient space".into(),
        ));
    }
    let rows: Vec<Vec<Rat>> = facets.iter().map(|n| to_rats(n)).collect();
    if facets.is_empty() || crate::algebra::linalg::rank_of_rows(&rows) < d {
        return Err(Error::Precondition(
            "cone is not pointed or not full-dimensional".into(),
        ));
    }
    facets.sort();
    Ok(facets)
}

/// Orders rays of a pointed rank-2 cone counterclockwise.
pub(crate) fn angular_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    let d = det2(a, b);
    if d.is_positive() {
        Ordering::Less
    } else if d.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    fn ray(v: &[i64]) -> Ray {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn redundant_generators_drop() {
        let c = ConeQ::from_rays(&[ray(&[1, 0]), ray(&[2, 1]), ray(&[0, 1]), ray(&[2, 0])]).unwrap();
        assert_eq!(c.rays(), &[ray(&[0, 1]), ray(&[1, 0])]);
        assert!(c.contains(&[int(1), int(5)]));
        assert!(!c.contains(&[int(-1), int(5)]));
        assert!(!c.contains_in_interior(&[int(0), int(5)]));
    }

    #[test]
    fn rank3_square_cone() {
        let c = ConeQ::from_rays(&[
            ray(&[1, 0, 1]),
            ray(&[0, 1, 1]),
            ray(&[-1, 0, 1]),
            ray(&[0, -1, 1]),
            ray(&[0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        assert!(c.contains_in_interior(&[int(0), int(0), int(1)]));
    }

    #[test]
    fn non_pointed_rejected() {
        assert!(ConeQ::from_rays(&[ray(&[1, 0]), ray(&[-1, 0]), ray(&[0, 1])]).is_err());
        assert!(ConeQ::from_rays(&[ray(&[1, 0, 0]), ray(&[0, 1, 0])]).is_err());
    }
}
