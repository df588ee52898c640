//! Projective points of the space of symmetric matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::QMatrix;
use super::rat::{self, Rat};
use super::symmetric::SymLayout;
use crate::error::{Error, Result};

/// A point `[z_00 : z_01 : ... : z_nn]` kept as a symmetric matrix whose
/// entries are coprime integers with positive leading entry (row-major on the
/// upper triangle). Two points are equal iff their matrices are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjSymPoint {
    entries: Vec<BigInt>,
    size: usize,
}

impl ProjSymPoint {
    pub fn new(m: &QMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("point matrix must be square".into()));
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidArgument("point matrix must be symmetric".into()));
        }
        let layout = SymLayout::new(m.rows());
        Self::from_upper(m.rows(), &layout.upper_entries(m))
    }

    /// From the upper-triangle entries in row-major order.
    pub fn from_upper(size: usize, upper: &[Rat]) -> Result<Self> {
        let layout = SymLayout::new(size);
        if upper.len() != layout.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} upper-triangle entries, got {}",
                layout.len(),
                upper.len()
            )));
        }
        if upper.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("the zero matrix is not a projective point".into()));
        }
        let mut entries = rat::primitive_integer_vector(upper);
        let lead = entries.iter().find(|x| !x.is_zero()).expect("nonzero entry");
        if lead.is_negative() {
            entries = entries.into_iter().map(|x| -x).collect();
        }
        Ok(ProjSymPoint { entries, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn upper(&self) -> Vec<Rat> {
        self.entries.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }

    pub fn matrix(&self) -> QMatrix {
        SymLayout::new(self.size).matrix_from_upper(&self.upper())
    }
}

/// Serialized form: matrix rows of integer strings.
#[derive(Serialize, Deserialize)]
struct Wire {
    matrix: Vec<Vec<String>>,
}

impl Serialize for ProjSymPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            matrix: self.matrix().to_string_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjSymPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let m = QMatrix::from_string_rows(&w.matrix).map_err(serde::de::Error::custom)?;
        ProjSymPoint::new(&m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    #[test]
    fn normalization_is_canonical() {
        let a = QMatrix::diagonal(&[rat(-1, 2), int(0), rat(-3, 4), int(0)]);
        let p = ProjSymPoint::new(&a).unwrap();
        assert_eq!(p.upper()[0], int(2));
        assert_eq!(p.matrix()[(2, 2)], int(3));
        let b = a.scale(&int(-8));
        assert_eq!(ProjSymPoint::new(&b).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ProjSymPoint::new(&QMatrix::zeros(2, 2)).is_err());
        assert!(ProjSymPoint::new(&QMatrix::from_i64(&[&[1, 2], &[3, 4]])).is_err());
        assert!(ProjSymPoint::new(&QMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let p = ProjSymPoint::new(&QMatrix::from_i64(&[&[0, 2], &[2, 4]])).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"matrix":[["0","1"],["1","2"]]}"#);
        let q: ProjSymPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
