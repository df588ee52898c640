//! Low Chern classes of the tangent bundle of `LG(r, 2r)` and the dimension
//! of the space of conics in it.

use serde::Serialize;

use super::ring::{generator_product, lg_dimension, SchubertElt, StrictPartition};
use crate::algebra::rat::{int, rat};
use crate::algebra::{MPoly, Rat, Vars};
use crate::error::{Error, Result};

/// The tangent bundle is `Sym^2 S^v`. Its total Chern class through degree 2
/// is `1 + a c_1 + b c_1^2 + c c_2` in the Chern classes of `S^v`; the ring
/// relation `s_1^2 = 2 s_2` then collapses `c_2(T)` onto `s_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernReport {
    pub r: usize,
    #[serde(serialize_with = "crate::cli::json::rational")]
    pub c1_coefficient: Rat,
    #[serde(serialize_with = "crate::cli::json::rational")]
    pub c1_squared_coefficient: Rat,
    #[serde(serialize_with = "crate::cli::json::rational")]
    pub c2_coefficient: Rat,
    pub c1: SchubertElt,
    pub c2: SchubertElt,
}

pub fn chern_tangent(r: usize) -> Result<ChernReport> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
    }
    let names: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
    let vars = Vars::new(names);
    let a = |i: usize| MPoly::var(&vars, i);

    // total Chern class of Sym^2 through degree 2, from the roots a_i + a_j
    let mut total = MPoly::one(&vars);
    for i in 0..r {
        for j in i..r {
            let factor = &MPoly::one(&vars) + &(&a(i) + &a(j));
            total = (&total * &factor).truncate(2);
        }
    }
    let deg1 = total.homogeneous_part(1);
    let deg2 = total.homogeneous_part(2);

    // e1 = sum a_i, e2 = sum_{i<j} a_i a_j; read off coefficients
    let mut e = vec![0u32; r];
    e[0] = 1;
    let c1_coefficient = deg1.coefficient(&e);
    e[0] = 2;
    let c1_squared_coefficient = deg2.coefficient(&e);
    e[0] = 1;
    e[1] = 1;
    let c2_coefficient = deg2.coefficient(&e) - &c1_squared_coefficient * int(2);

    let e1 = (0..r).fold(MPoly::zero(&vars), |acc, i| &acc + &a(i));
    let mut e2 = MPoly::zero(&vars);
    for i in 0..r {
        for j in i + 1..r {
            e2 = &e2 + &(&a(i) * &a(j));
        }
    }
    let rebuilt = &e1.pow(2).scale(&c1_squared_coefficient) + &e2.scale(&c2_coefficient);
    if deg1 != e1.scale(&c1_coefficient) || deg2 != rebuilt {
        return Err(Error::invariant(
            "Chern class expansion is not symmetric in the expected form",
            format!("{deg1} | {deg2}"),
        ));
    }

    let s1 = SchubertElt::basis(r, StrictPartition::new(vec![1])?);
    let s2 = SchubertElt::basis(r, StrictPartition::new(vec![2])?);
    let c1 = s1.scale(&c1_coefficient);
    let c2 = generator_product(r, 1, 1)?
        .scale(&c1_squared_coefficient)
        .add(&s2.scale(&c2_coefficient))?;

    let expected_c1 = s1.scale(&int(r as i64 + 1));
    let expected_c2 = s2.scale(&int((r * r + 2 * r) as i64));
    if c1 != expected_c1 || c2 != expected_c2 {
        return Err(Error::invariant(
            "Chern classes disagree with the closed form",
            format!("c1 = {c1}, c2 = {c2}"),
        ));
    }
    Ok(ChernReport {
        r,
        c1_coefficient,
        c1_squared_coefficient,
        c2_coefficient,
        c1,
        c2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliDimension {
    pub r: usize,
    pub dimension: i64,
    /// `dim LG + c_1 . line class * 2 - 3`.
    pub via_stable_maps: i64,
    /// `dim SG(r - 2, 2r) + 6`.
    pub via_fibration: i64,
}

/// Dimension of the space of conics in `LG(r, 2r)`, checked against the
/// stable-map count and the Grassmannian-fibration model.
pub fn moduli_dimension(r: usize) -> Result<ModuliDimension> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
    }
    let ri = r as i64;
    let dimension = (ri * ri + 5 * ri - 2) / 2;
    let via_stable_maps = lg_dimension(r) as i64 + 2 * (ri + 1) - 3;
    let sg_twice = 2 * (2 * ri * ri - 4 * ri) - (3 * (ri - 2) * (ri - 2) - ri + 2);
    let via_fibration = sg_twice / 2 + 6;
    if sg_twice % 2 != 0 || via_stable_maps != dimension || via_fibration != dimension {
        return Err(Error::invariant(
            "dimension identities disagree",
            format!("{dimension} / {via_stable_maps} / {via_fibration}"),
        ));
    }
    Ok(ModuliDimension {
        r,
        dimension,
        via_stable_maps,
        via_fibration,
    })
}

/// The coefficient `(r^2 + r - 2) / 2` in closed form.
pub fn c1_squared_closed_form(r: usize) -> Rat {
    let ri = r as i64;
    rat(ri * ri + ri - 2, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let c = chern_tangent(2).unwrap();
        assert_eq!(c.c1.to_string(), "3*s[1]");
        assert_eq!(c.c2.to_string(), "8*s[2]");
        let c = chern_tangent(3).unwrap();
        assert_eq!(c.c1.to_string(), "4*s[1]");
        assert_eq!(c.c2.to_string(), "15*s[2]");
    }

    #[test]
    fn intermediate_coefficients() {
        for r in 2..=20 {
            let c = chern_tangent(r).unwrap();
            assert_eq!(c.c1_coefficient, int(r as i64 + 1));
            assert_eq!(c.c1_squared_coefficient, c1_squared_closed_form(r));
            assert_eq!(c.c2_coefficient, int(r as i64 + 2));
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dimension(2).unwrap().dimension, 6);
        assert_eq!(moduli_dimension(3).unwrap().dimension, 11);
        assert!(moduli_dimension(1).is_err());
    }
}
