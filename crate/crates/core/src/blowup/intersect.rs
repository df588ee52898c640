//! Top self-intersections `(aH - bE)^n` on the blow-up of a smooth variety
//! along a smooth center, from the Segre classes of the normal bundle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::restriction::{restriction_coefficients, RestrictionReport};
use super::series;
use crate::algebra::rat::{self, int};
use crate::algebra::Rat;
use crate::error::{Error, Result};

/// Segre classes `s_0 .. s_{center_dim}` of the normal bundle, as multiples
/// of powers of a class `h` on the center with `h^{center_dim} = 1`. The
/// ambient hyperplane class restricts to `m h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreData {
    pub center_dim: usize,
    pub codim: usize,
    pub m: i64,
    #[serde(serialize_with = "crate::cli::json::rationals")]
    pub segre: Vec<Rat>,
}

impl SegreData {
    pub fn new(center_dim: usize, codim: usize, m: i64, segre: Vec<Rat>) -> Result<Self> {
        if segre.len() != center_dim + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} Segre classes for a center of dimension {center_dim}",
                segre.len()
            )));
        }
        if !segre[0].is_one() {
            return Err(Error::InvalidArgument("s_0 must be 1".into()));
        }
        if codim == 0 {
            return Err(Error::InvalidArgument("center of codimension 0".into()));
        }
        Ok(SegreData {
            center_dim,
            codim,
            m,
            segre,
        })
    }

    /// Segre data from `c(T_Z) / c(T_X|_Z)`.
    pub fn from_chern(
        center_dim: usize,
        codim: usize,
        m: i64,
        c_tz: &[Rat],
        c_tx_restricted: &[Rat],
    ) -> Result<Self> {
        Self::new(center_dim, codim, m, segre_from_chern(c_tz, c_tx_restricted, center_dim)?)
    }
}

/// `s(N) = c(T_Z) / c(T_X|_Z)` through degree `center_dim`.
pub fn segre_from_chern(c_tz: &[Rat], c_tx_restricted: &[Rat], center_dim: usize) -> Result<Vec<Rat>> {
    for (name, s) in [("c(T_Z)", c_tz), ("c(T_X|Z)", c_tx_restricted)] {
        match s.first() {
            Some(c) if c.is_one() => {}
            Some(c) if c.is_zero() => {
                return Err(Error::Precondition(format!("{name} has zero constant term")))
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "{name} must have constant term 1"
                )))
            }
        }
    }
    series::div(c_tz, c_tx_restricted, center_dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientData {
    pub dim: usize,
    /// Degree `H^dim`.
    pub h_top: i64,
}

impl AmbientData {
    pub fn new(dim: usize, h_top: i64) -> Result<Self> {
        if h_top < 1 {
            return Err(Error::InvalidArgument(format!("H^n = {h_top} must be positive")));
        }
        Ok(AmbientData { dim, h_top })
    }
}

pub fn blowup_power(a: i64, b: i64, n: usize, ambient: &AmbientData, segre: &SegreData) -> Result<BigInt> {
    if n != ambient.dim {
        return Err(Error::DimensionMismatch(format!(
            "power {n} on an ambient space of dimension {}",
            ambient.dim
        )));
    }
    if segre.codim + segre.center_dim != n {
        return Err(Error::DimensionMismatch(format!(
            "center of dimension {} and codimension {} in dimension {n}",
            segre.center_dim, segre.codim
        )));
    }
    let pw = |x: i64, e: usize| rat::pow(&int(x), e as u32);
    let mut total = pw(a, n) * int(ambient.h_top);
    for j in segre.codim..=n {
        let term = Rat::from_integer(rat::binomial(n as u64, j as u64))
            * pw(a, n - j)
            * pw(b, j)
            * pw(segre.m, n - j)
            * &segre.segre[j - segre.codim];
        total -= term;
    }
    if !total.is_integer() {
        return Err(Error::invariant(
            "intersection number is not an integer",
            rat::to_string(&total),
        ));
    }
    Ok(total.to_integer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Quadric surfaces tangent to nine lines in `P^3`.
    NineLines,
    /// Conics tangent to five conics.
    Chasles,
    /// Symplectic quadrics tangent to six lines.
    SixLinesSymplectic,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::NineLines, Preset::SixLinesSymplectic, Preset::Chasles];

    pub fn name(self) -> &'static str {
        match self {
            Preset::NineLines => "nine-lines",
            Preset::Chasles => "chasles",
            Preset::SixLinesSymplectic => "six-lines-symplectic",
        }
    }

    pub fn expected(self) -> i64 {
        match self {
            Preset::NineLines => 92,
            Preset::Chasles => 3264,
            Preset::SixLinesSymplectic => 40,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Preset> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown preset {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionInputs {
    pub a: i64,
    pub b: i64,
    pub n: usize,
    pub ambient: AmbientData,
    pub segre: SegreData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionResult {
    #[serde(serialize_with = "crate::cli::json::bigint")]
    pub value: BigInt,
    pub inputs: IntersectionInputs,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction: Option<RestrictionReport>,
}

impl IntersectionInputs {
    pub fn evaluate(self) -> Result<IntersectionResult> {
        let value = blowup_power(self.a, self.b, self.n, &self.ambient, &self.segre)?;
        Ok(IntersectionResult {
            value,
            inputs: self,
            restriction: None,
        })
    }
}

/// Veronese embedding of `P^k` in `P^{k(k+3)/2}` as the center.
fn veronese_inputs(k: usize, a: i64, b: i64) -> Result<IntersectionInputs> {
    let n = k * (k + 3) / 2;
    let c_tz = series::linear_power(1, k as u32 + 1, k);
    let c_tx = series::linear_power(2, n as u32 + 1, k);
    Ok(IntersectionInputs {
        a,
        b,
        n,
        ambient: AmbientData::new(n, 1)?,
        segre: SegreData::from_chern(k, n - k, 2, &c_tz, &c_tx)?,
    })
}

/// Chern class of the tangent bundle of `G(1,4)` restricted to the Veronese
/// threefold, given `sigma_{1,1}|_V = coeff * h^2` and `sigma_1|_V = 2h`.
pub fn grassmannian_tangent_on_veronese(coeff: i64) -> Vec<Rat> {
    let deg = 3;
    // c(S^v) = 1 + sigma_1 + sigma_11, c(Q) = 1 / c(S)
    let c_s_dual = vec![int(1), int(2), int(coeff)];
    let c_s = vec![int(1), int(-2), int(coeff)];
    let c_q = series::inverse(&c_s, deg).expect("unit constant term");
    series::tensor_chern(&c_s_dual, 2, &c_q, 3, deg)
}

fn six_lines_inputs(a: i64, b: i64, coeff: i64) -> Result<IntersectionInputs> {
    let c_tz = series::linear_power(1, 4, 3);
    let c_tx = grassmannian_tangent_on_veronese(coeff);
    Ok(IntersectionInputs {
        a,
        b,
        n: 6,
        ambient: AmbientData::new(6, 5)?,
        segre: SegreData::from_chern(3, 3, 2, &c_tz, &c_tx)?,
    })
}

pub fn preset_inputs(p: Preset) -> Result<(IntersectionInputs, Option<RestrictionReport>)> {
    Ok(match p {
        Preset::NineLines => (veronese_inputs(3, 2, 1)?, None),
        // tangency to a conic is the class 6H - 2E on complete conics
        Preset::Chasles => (veronese_inputs(2, 6, 2)?, None),
        Preset::SixLinesSymplectic => {
            let report = restriction_coefficients(0)?;
            if !report.consistent() {
                return Err(Error::invariant(
                    "restriction coefficients are inconsistent",
                    format!("{report:?}"),
                ));
            }
            (six_lines_inputs(2, 1, report.sigma11 as i64)?, Some(report))
        }
    })
}

pub fn run_preset(p: Preset) -> Result<IntersectionResult> {
    let (inputs, restriction) = preset_inputs(p)?;
    let mut res = inputs.evaluate()?;
    res.restriction = restriction;
    Ok(res)
}

/// `(2H - E)^6` on the blow-up of `G(1,4)` along the Veronese threefold.
pub fn symplectic_tangency_number() -> Result<BigInt> {
    Ok(run_preset(Preset::SixLinesSymplectic)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn veronese_segre() {
        let s = veronese_inputs(2, 1, 0).unwrap().segre.segre;
        assert_eq!(s, ints(&[1, -9, 51]));
        let s = veronese_inputs(3, 1, 0).unwrap().segre.segre;
        assert_eq!(s, ints(&[1, -16, 146, -996]));
    }

    #[test]
    fn identity_quotient() {
        let c = ints(&[1, 4, 6]);
        assert_eq!(segre_from_chern(&c, &c, 2).unwrap(), ints(&[1, 0, 0]));
        assert!(segre_from_chern(&ints(&[1]), &ints(&[0, 1]), 2).is_err());
    }

    #[test]
    fn point_blowup() {
        // blowing up a point of P^n: (aH - bE)^n = a^n - b^n
        for n in 1..6usize {
            let amb = AmbientData::new(n, 1).unwrap();
            let seg = SegreData::new(0, n, 1, ints(&[1])).unwrap();
            let v = blowup_power(3, 2, n, &amb, &seg).unwrap();
            assert_eq!(v, BigInt::from(3i64.pow(n as u32) - 2i64.pow(n as u32)));
        }
    }

    #[test]
    fn tangent_of_grassmannian() {
        assert_eq!(grassmannian_tangent_on_veronese(2), ints(&[1, 10, 46, 120]));
    }

    #[test]
    fn mismatched_dimensions() {
        let amb = AmbientData::new(5, 1).unwrap();
        let seg = SegreData::new(2, 2, 2, ints(&[1, 0, 0])).unwrap();
        assert!(blowup_power(1, 1, 5, &amb, &seg).is_err());
        assert!(AmbientData::new(3, 0).is_err());
        assert!("ten-lines".parse::<Preset>().is_err());
    }
}
