//! Effective, nef and movable cones of the three families of spaces, with
//! the chamber decomposition labelled by the models it induces.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::cone::{ConeQ, Ray};
use super::divisor::{ledger_k, ledger_s, DivClass, Ledger};
use super::gkz::{gkz_decomposition, ChamberFan};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    S4,
    S6,
    /// Conics in `LG(r, 2r)`.
    K(usize),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::S4 => write!(f, "S4"),
            Space::S6 => write!(f, "S6"),
            Space::K(r) => write!(f, "K{r}"),
        }
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Space> {
        match s {
            "S4" => Ok(Space::S4),
            "S6" => Ok(Space::S6),
            _ => {
                let body = s
                    .strip_prefix("K(")
                    .and_then(|t| t.strip_suffix(')'))
                    .or_else(|| s.strip_prefix('K'))
                    .ok_or_else(|| Error::Parse(format!("unknown space {s:?}")))?;
                let r: usize = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
                if r < 2 {
                    return Err(Error::InvalidArgument(format!("K(r) needs r >= 2, got {r}")));
                }
                Ok(Space::K(r))
            }
        }
    }
}

/// A named extremal ray of the decomposition together with what crossing
/// it does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallLabel {
    pub name: String,
    #[serde(serialize_with = "ray_strings")]
    pub ray: Ray,
    pub label: String,
}

fn ray_strings<S: Serializer>(v: &Ray, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelCones {
    pub space: Space,
    pub eff: ConeQ,
    pub nef: ConeQ,
    pub mov: ConeQ,
    pub fan: ChamberFan,
    pub walls: Vec<WallLabel>,
    pub ledger: Ledger,
}

impl ModelCones {
    /// Named classes for drawing.
    pub fn named_rays(&self) -> Vec<(String, Ray)> {
        self.ledger
            .entries
            .keys()
            .filter_map(|n| self.ledger.get(n).map(|c| (n.clone(), c.primitive_ray())))
            .filter(|(n, _)| !n.starts_with("antiK"))
            .collect()
    }
}

fn cone_of(ledger: &Ledger, names: &[&str]) -> Result<ConeQ> {
    let gens: Vec<Vec<_>> = names
        .iter()
        .map(|n| ledger.class(n).map(|c| c.coords().to_vec()))
        .collect::<Result<_>>()?;
    ConeQ::new(&gens)
}

pub fn cones_of_models(space: Space) -> Result<ModelCones> {
    let (ledger, eff, nef, mov) = match space {
        Space::S4 => {
            let l = ledger_s(2)?;
            let eff = cone_of(&l, &["E1", "S"])?;
            let nef = cone_of(&l, &["D1", "D2"])?;
            let mov = nef.clone();
            (l, eff, nef, mov)
        }
        Space::S6 => {
            let l = ledger_s(3)?;
            let eff = cone_of(&l, &["E1", "E2", "S"])?;
            let nef = cone_of(&l, &["D1", "D2", "D3"])?;
            let mov = cone_of(&l, &["D1", "D2", "D3", "P"])?;
            (l, eff, nef, mov)
        }
        Space::K(r) => {
            let l = ledger_k(r)?;
            let eff = cone_of(&l, &["Delta", "D_unb"])?;
            let nef = cone_of(&l, &["H_sigma2", "T"])?;
            let mov = if r > 2 {
                cone_of(&l, &["T", "D_unb"])?
            } else {
                cone_of(&l, &["T", "H_sigma2"])?
            };
            (l, eff, nef, mov)
        }
    };
    let mut fan = gkz_decomposition(&ledger.generator_classes()?)?;
    if fan.support != eff {
        return Err(Error::invariant(
            "chamber support differs from the effective cone",
            format!("{} vs {}", fan.support, eff),
        ));
    }

    let ray = |n: &str| ledger.class(n).map(DivClass::primitive_ray);
    let mut walls = Vec::new();
    match space {
        Space::K(r) => {
            let mut push = |name: &str, label: &str| -> Result<()> {
                walls.push(WallLabel {
                    name: name.into(),
                    ray: ray(name)?,
                    label: label.into(),
                });
                Ok(())
            };
            push("T", "weighted-stable-maps contraction (divisorial)")?;
            push(
                "H_sigma2",
                if r > 2 {
                    "Chow contraction (small)"
                } else {
                    "Chow contraction (divisorial)"
                },
            )?;
            push("D_unb", "fibration onto the isotropic Grassmannian")?;
        }
        Space::S4 | Space::S6 => {}
    }

    let grass = match space {
        Space::K(_) => Some(cone_of(&ledger, &["H_sigma2", "D_unb"])?),
        _ => None,
    };
    for ch in &mut fan.chambers {
        if ch.cone == nef {
            ch.labels.push("nef".into());
            ch.labels.push("movable".into());
            ch.labels.push(match space {
                Space::K(_) => "model:stable-maps-space".into(),
                _ => "model:wonderful-compactification".into(),
            });
        } else if mov.contains_cone(&ch.cone) {
            ch.labels.push("movable".into());
        } else {
            ch.labels.push("big-non-movable".into());
        }
        if grass.as_ref() == Some(&ch.cone) {
            ch.labels.push("model:Grassmannian-fibration".into());
        }
    }
    Ok(ModelCones {
        space,
        eff,
        nef,
        mov,
        fan,
        walls,
        ledger,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FanoType {
    #[serde(rename = "Fano")]
    Fano,
    #[serde(rename = "weak-Fano")]
    WeakFano,
    #[serde(rename = "not-ample")]
    NotAmple,
}

impl fmt::Display for FanoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanoType::Fano => "Fano",
            FanoType::WeakFano => "weak-Fano",
            FanoType::NotAmple => "not-ample",
        })
    }
}

/// Positivity of the anticanonical class of the space of conics in
/// `LG(r, 2r)`, decided by exact cone membership.
pub fn fano_type(r: usize) -> Result<FanoType> {
    let m = cones_of_models(Space::K(r))?;
    let anti_k = m.ledger.class("antiK")?.coords().to_vec();
    Ok(if m.nef.contains_in_interior(&anti_k) {
        FanoType::Fano
    } else if m.nef.is_on_extremal_ray(&anti_k) && m.eff.contains_in_interior(&anti_k) {
        FanoType::WeakFano
    } else {
        FanoType::NotAmple
    })
}

/// The closed-form thresholds the geometric answer must match.
pub fn fano_threshold(r: usize) -> FanoType {
    match r {
        0..=6 => FanoType::Fano,
        7 => FanoType::WeakFano,
        _ => FanoType::NotAmple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spaces() {
        assert_eq!("K(4)".parse::<Space>().unwrap(), Space::K(4));
        assert_eq!("K12".parse::<Space>().unwrap(), Space::K(12));
        assert!("K1".parse::<Space>().is_err());
        assert!("X".parse::<Space>().is_err());
    }

    #[test]
    fn s6_movable_is_union_of_two_chambers() {
        let m = cones_of_models(Space::S6).unwrap();
        let movable: Vec<_> = m
            .fan
            .chambers
            .iter()
            .filter(|c| c.labels.iter().any(|l| l == "movable"))
            .collect();
        assert_eq!(movable.len(), 2);
        assert_eq!(m.fan.chambers.iter().filter(|c| c.cone == m.nef).count(), 1);
    }

    #[test]
    fn k2_movable() {
        let m = cones_of_models(Space::K(2)).unwrap();
        assert_eq!(m.mov.to_string(), "cone[(1, 1), (1, 2)]");
        let m3 = cones_of_models(Space::K(3)).unwrap();
        assert_eq!(m3.mov.to_string(), "cone[(0, 1), (1, 1)]");
    }

    #[test]
    fn fano_table() {
        for r in 2..=20 {
            assert_eq!(fano_type(r).unwrap(), fano_threshold(r), "r = {r}");
        }
    }
}
