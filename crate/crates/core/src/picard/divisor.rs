//! Divisor classes and the two Picard-group ledgers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::rat::{self, int};
use crate::algebra::Rat;
use crate::error::{Error, Result};

/// Which basis the coordinates of a [`DivClass`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Basis {
    /// `H, E_1, .., E_{r-1}` on the wonderful compactification.
    #[serde(rename = "S2r")]
    S2r,
    /// `Delta, D_unb` on the space of conics.
    #[serde(rename = "K")]
    K,
}

impl Basis {
    pub fn names(self, rank: usize) -> Vec<String> {
        match self {
            Basis::S2r => std::iter::once("H".to_string())
                .chain((1..rank).map(|i| format!("E{i}")))
                .collect(),
            Basis::K => vec!["Delta".into(), "D_unb".into()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    basis: Basis,
    coords: Vec<Rat>,
}

impl DivClass {
    pub fn new(basis: Basis, coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("divisor class of rank 0".into()));
        }
        if basis == Basis::K && coords.len() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "K-basis classes have rank 2, got {}",
                coords.len()
            )));
        }
        Ok(DivClass { basis, coords })
    }

    pub fn from_i64(basis: Basis, coords: &[i64]) -> Result<Self> {
        Self::new(basis, coords.iter().map(|&c| int(c)).collect())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn lattice_rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> DivClass {
        DivClass {
            basis: self.basis,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Primitive integer vector on the same ray.
    pub fn primitive_ray(&self) -> Vec<BigInt> {
        rat::primitive_integer_vector(&self.coords)
    }

    fn check_compatible(&self, other: &DivClass) -> Result<()> {
        if self.basis != other.basis || self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot combine {self} with {other}"
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DivClass) -> Result<DivClass> {
        self.check_compatible(other)?;
        Ok(DivClass {
            basis: self.basis,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &DivClass) -> Result<DivClass> {
        self.try_add(&other.scale(&int(-1)))
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        self.try_add(rhs).expect("incompatible divisor classes")
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        self.try_sub(rhs).expect("incompatible divisor classes")
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rat::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for DivClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DivClass", 2)?;
        st.serialize_field("basis", &self.basis)?;
        let coords: Vec<String> = self.coords.iter().map(rat::to_string).collect();
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

/// A ledger entry is either a fully known class or, for large r, only the
/// H-coefficient with the undetermined E-coefficients named explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LedgerEntry {
    Class(DivClass),
    Partial { h: Rat, unknown: Vec<String> },
}

impl Serialize for LedgerEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LedgerEntry::Class(c) => c.serialize(s),
            LedgerEntry::Partial { h, unknown } => {
                let mut st = s.serialize_struct("Partial", 2)?;
                st.serialize_field("H", &rat::to_string(h))?;
                let unk: BTreeMap<&str, &str> =
                    unknown.iter().map(|n| (n.as_str(), "unknown")).collect();
                st.serialize_field("unknown", &unk)?;
                st.end()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ledger {
    pub r: usize,
    pub basis: Basis,
    pub basis_names: Vec<String>,
    pub entries: BTreeMap<String, LedgerEntry>,
    /// Names of the Cox ring generators, in the conventional order.
    pub cox_generators: Vec<String>,
}

impl Ledger {
    pub fn get(&self, name: &str) -> Option<&DivClass> {
        match self.entries.get(name) {
            Some(LedgerEntry::Class(c)) => Some(c),
            _ => None,
        }
    }

    pub fn class(&self, name: &str) -> Result<&DivClass> {
        self.get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no known class named {name}")))
    }

    /// The classes of the Cox ring generators, when all of them are known.
    pub fn generator_classes(&self) -> Result<Vec<DivClass>> {
        self.cox_generators
            .iter()
            .map(|n| self.class(n).cloned())
            .collect()
    }
}

fn s_class(coords: &[i64]) -> LedgerEntry {
    LedgerEntry::Class(DivClass::from_i64(Basis::S2r, coords).expect("nonempty"))
}

/// Picard ledger of the wonderful compactification of symplectic quadrics
/// in `P^{2r-1}`, in the basis `H, E_1, .., E_{r-1}`.
pub fn ledger_s(r: usize) -> Result<Ledger> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "ledger needs r >= 2, got {r}"
        )));
    }
    let mut entries = BTreeMap::new();
    match r {
        2 => {
            entries.insert("D1".into(), s_class(&[1, 0]));
            entries.insert("D2".into(), s_class(&[2, -1]));
            entries.insert("E1".into(), s_class(&[0, 1]));
            entries.insert("S".into(), s_class(&[2, -2]));
        }
        3 => {
            entries.insert("D1".into(), s_class(&[1, 0, 0]));
            entries.insert("D2".into(), s_class(&[2, -1, 0]));
            entries.insert("D3".into(), s_class(&[3, -2, -1]));
            entries.insert("E1".into(), s_class(&[0, 1, 0]));
            entries.insert("E2".into(), s_class(&[0, 0, 1]));
            entries.insert("S".into(), s_class(&[2, -2, -2]));
            entries.insert("P".into(), s_class(&[3, -1, -1]));
        }
        _ => {
            let e_names: Vec<String> = (1..r).map(|i| format!("E{i}")).collect();
            for i in 1..r {
                let mut v = vec![0i64; r];
                v[i] = 1;
                entries.insert(format!("E{i}"), s_class(&v));
            }
            let mut d1 = vec![0i64; r];
            d1[0] = 1;
            entries.insert("D1".into(), s_class(&d1));
            for i in 2..=r {
                entries.insert(
                    format!("D{i}"),
                    LedgerEntry::Partial {
                        h: int(i as i64),
                        unknown: e_names.clone(),
                    },
                );
            }
            entries.insert(
                "S".into(),
                LedgerEntry::Partial {
                    h: int(2),
                    unknown: e_names,
                },
            );
        }
    }
    let cox_generators = (1..=r)
        .map(|i| format!("D{i}"))
        .chain((1..r).map(|i| format!("E{i}")))
        .chain(std::iter::once("S".to_string()))
        .collect();
    Ok(Ledger {
        r,
        basis: Basis::S2r,
        basis_names: Basis::S2r.names(r),
        entries,
        cox_generators,
    })
}

fn k_class(coords: [Rat; 2]) -> LedgerEntry {
    LedgerEntry::Class(DivClass::new(Basis::K, coords.to_vec()).expect("rank 2"))
}

/// Picard ledger of the coarse space of conics in `LG(r, 2r)`, in the basis
/// `Delta, D_unb`. Besides the boundary and nef generators it records the
/// anticanonical class, plus the stack version when it differs.
pub fn ledger_k(r: usize) -> Result<Ledger> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "ledger needs r >= 2, got {r}"
        )));
    }
    let mut entries = BTreeMap::new();
    let delta = [int(1), int(0)];
    let d_unb = [int(0), int(1)];
    let h_sigma2 = [rat::rat(1, 2), int(1)];
    entries.insert("Delta".into(), k_class(delta));
    entries.insert("D_unb".into(), k_class(d_unb));
    entries.insert("H_sigma2".into(), k_class(h_sigma2.clone()));
    entries.insert("T".into(), k_class([int(1), int(1)]));

    let anti_k = |unb: Rat| [&h_sigma2[0] * int(5), &h_sigma2[1] * int(5) + unb];
    if r == 2 {
        entries.insert("antiK".into(), k_class(anti_k(int(-2))));
        entries.insert("antiK_stack".into(), k_class(anti_k(int(-5))));
    } else {
        entries.insert(
            "antiK".into(),
            k_class(anti_k(rat::rat(r as i64 - 7, 2))),
        );
    }
    Ok(Ledger {
        r,
        basis: Basis::K,
        basis_names: Basis::K.names(2),
        entries,
        cox_generators: ["Delta", "D_unb", "H_sigma2", "T"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s6_discrepancies() {
        let l = ledger_s(3).unwrap();
        assert_eq!(l.class("D3").unwrap().to_string(), "(3, -2, -1)");
        assert_eq!(l.class("P").unwrap().to_string(), "(3, -1, -1)");
        assert_eq!(l.generator_classes().unwrap().len(), 6);
    }

    #[test]
    fn large_r_is_partial() {
        let l = ledger_s(5).unwrap();
        match &l.entries["D4"] {
            LedgerEntry::Partial { h, unknown } => {
                assert_eq!(h, &int(4));
                assert_eq!(unknown.len(), 4);
            }
            other => panic!("expected a partial entry, got {other:?}"),
        }
        assert!(l.get("S").is_none());
        assert!(l.generator_classes().is_err());
    }

    #[test]
    fn k_relations() {
        for r in 2..10 {
            let l = ledger_k(r).unwrap();
            let c = |n| l.class(n).unwrap().clone();
            let h2 = c("H_sigma2").scale(&int(2));
            assert!((&(&h2 - &c("Delta")) - &c("D_unb").scale(&int(2))).is_zero());
            assert!((&(&c("T") - &c("Delta")) - &c("D_unb")).is_zero());
        }
        let l2 = ledger_k(2).unwrap();
        assert_eq!(l2.class("antiK").unwrap().to_string(), "(5/2, 3)");
        assert_eq!(l2.class("antiK_stack").unwrap().to_string(), "(5/2, 0)");
    }

    #[test]
    fn mixing_bases_fails() {
        let a = DivClass::from_i64(Basis::K, &[1, 0]).unwrap();
        let b = DivClass::from_i64(Basis::S2r, &[1, 0]).unwrap();
        assert!(a.try_add(&b).is_err());
    }
}
