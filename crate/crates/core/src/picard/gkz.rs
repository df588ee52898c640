//! GKZ chamber decomposition of the cone spanned by a finite set of rays.
//!
//! Rank 2 sorts the rays by angle. Rank 3 works in an affine slice of the
//! support: every generator becomes a point, every pair of generators a
//! line. The fine cells of the line arrangement are grouped by the set of
//! generator triangles containing them; two cells with the same set lie in
//! the same chamber, which is the intersection of those triangles.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::cone::{angular_cmp, dot, primitive, to_rats, ConeQ, Ray};
use super::divisor::DivClass;
use crate::algebra::rat::{self, int};
use crate::algebra::{linalg, QMatrix, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub cone: ConeQ,
    pub labels: Vec<String>,
}

impl Serialize for Chamber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Chamber", 2)?;
        let rays: Vec<Vec<String>> = self
            .cone
            .rays()
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect();
        st.serialize_field("rays", &rays)?;
        st.serialize_field("labels", &self.labels)?;
        st.end()
    }
}

/// Affine slice `{x : f.x = 1}` of a rank-3 cone, with planar coordinates
/// obtained by dropping coordinate `drop`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub functional: Ray,
    pub drop: usize,
}

type Pt = [Rat; 2];

impl Slice {
    fn for_cone(support: &ConeQ) -> Slice {
        let rays = support.rays();
        let functional = if rays.len() == 3 {
            // the functional taking the value 1 on every extremal ray
            let m = QMatrix::from_fn(3, 3, |i, j| Rat::from_integer(rays[i][j].clone()));
            let f = linalg::solve(&m, &[int(1), int(1), int(1)]).expect("simplicial cone");
            rat::primitive_integer_vector(&f)
        } else {
            let mut f = vec![BigInt::zero(); 3];
            for n in support.facets() {
                for (a, b) in f.iter_mut().zip(n) {
                    *a += b;
                }
            }
            primitive(&f)
        };
        let drop = functional.iter().position(|x| !x.is_zero()).expect("nonzero");
        Slice { functional, drop }
    }

    pub fn project(&self, v: &[BigInt]) -> Pt {
        let s = Rat::from_integer(dot(&self.functional, v));
        let pts: Vec<Rat> = (0..3)
            .filter(|&i| i != self.drop)
            .map(|i| Rat::from_integer(v[i].clone()) / &s)
            .collect();
        [pts[0].clone(), pts[1].clone()]
    }

    pub fn lift(&self, p: &Pt) -> Ray {
        let mut x = vec![int(0); 3];
        let others: Vec<usize> = (0..3).filter(|&i| i != self.drop).collect();
        x[others[0]] = p[0].clone();
        x[others[1]] = p[1].clone();
        let mut rest = int(1);
        for &i in &others {
            rest -= &x[i] * Rat::from_integer(self.functional[i].clone());
        }
        x[self.drop] = rest / Rat::from_integer(self.functional[self.drop].clone());
        rat::primitive_integer_vector(&x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberFan {
    pub support: ConeQ,
    pub chambers: Vec<Chamber>,
    pub slice: Option<Slice>,
}

impl Serialize for ChamberFan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChamberFan", 2)?;
        let rays: Vec<Vec<String>> = self
            .support
            .rays()
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect();
        st.serialize_field("support", &rays)?;
        st.serialize_field("chambers", &self.chambers)?;
        st.end()
    }
}

/// Outcome of the structural checks on a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub chambers: usize,
    pub full_dimensional: bool,
    pub samples: usize,
    pub on_walls: usize,
    pub uncovered: usize,
    pub overlapping: usize,
    pub unpaired_facets: usize,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.full_dimensional
            && self.uncovered == 0
            && self.overlapping == 0
            && self.unpaired_facets == 0
    }
}

impl ChamberFan {
    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn find(&self, cone: &ConeQ) -> Option<&Chamber> {
        self.chambers.iter().find(|c| &c.cone == cone)
    }

    /// Checks full dimension, disjoint interiors and exact cover by sampling
    /// exact rational points of the support, and checks that every interior
    /// facet is shared by exactly one other chamber.
    pub fn verify(&self, samples: usize, seed: u64) -> FanReport {
        let d = self.support.dim();
        let full_dimensional = self.chambers.iter().all(|c| {
            let rows: Vec<Vec<Rat>> = c.cone.rays().iter().map(|v| to_rats(v)).collect();
            linalg::rank_of_rows(&rows) == d
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<Vec<Rat>> = self.chambers.iter().map(|c| c.cone.interior_point()).collect();
        for _ in 0..samples {
            let mut x = vec![int(0); d];
            for v in self.support.rays() {
                let c = int(rng.gen_range(1..=1000));
                for (a, b) in x.iter_mut().zip(v) {
                    *a += &c * Rat::from_integer(b.clone());
                }
            }
            points.push(x);
        }
        let (mut on_walls, mut uncovered, mut overlapping) = (0, 0, 0);
        for x in &points {
            let closed = self.chambers.iter().filter(|c| c.cone.contains(x)).count();
            let open = self
                .chambers
                .iter()
                .filter(|c| c.cone.contains_in_interior(x))
                .count();
            match (open, closed) {
                (1, 1) => {}
                (0, 0) => uncovered += 1,
                (0, _) => on_walls += 1,
                _ => overlapping += 1,
            }
        }
        let mut unpaired_facets = 0;
        for (i, c) in self.chambers.iter().enumerate() {
            for n in c.cone.facets() {
                if self.support.facets().contains(n) {
                    continue;
                }
                let neg: Ray = n.iter().map(|x| -x).collect();
                let shared = c.cone.facet_rays(n);
                let partners = self
                    .chambers
                    .iter()
                    .enumerate()
                    .filter(|(j, o)| {
                        *j != i && o.cone.facets().contains(&neg) && o.cone.facet_rays(&neg) == shared
                    })
                    .count();
                if partners != 1 {
                    unpaired_facets += 1;
                }
            }
        }
        FanReport {
            chambers: self.chambers.len(),
            full_dimensional,
            samples: points.len(),
            on_walls,
            uncovered,
            overlapping,
            unpaired_facets,
        }
    }

    /// Planar vertices of a chamber in the affine slice (rank 3 only).
    pub fn slice_vertices(&self, chamber: &Chamber) -> Option<Vec<Pt>> {
        let slice = self.slice.as_ref()?;
        let pts: Vec<Pt> = chamber.cone.rays().iter().map(|v| slice.project(v)).collect();
        Some(convex_hull(&pts))
    }

    /// Plain-text rendering: sorted rays for rank 2, slice cells for rank 3.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let fmt_ray = |v: &Ray| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        };
        let _ = writeln!(
            out,
            "support: {}",
            self.support.rays().iter().map(fmt_ray).collect::<Vec<_>>().join(" ")
        );
        let _ = writeln!(out, "chambers: {}", self.chambers.len());
        for (i, c) in self.chambers.iter().enumerate() {
            let rays: Vec<String> = c.cone.rays().iter().map(fmt_ray).collect();
            let _ = write!(out, "  [{i}] rays {}", rays.join(" "));
            if let Some(vs) = self.slice_vertices(c) {
                let cell: Vec<String> = vs
                    .iter()
                    .map(|p| format!("({}, {})", rat::to_string(&p[0]), rat::to_string(&p[1])))
                    .collect();
                let _ = write!(out, " slice {}", cell.join(" "));
            }
            if !c.labels.is_empty() {
                let _ = write!(out, " labels {}", c.labels.join(","));
            }
            out.push('\n');
        }
        out
    }

    /// SVG cross-section. Rank 3 draws the chambers in the affine slice,
    /// rank 2 draws the rays from the origin. `names` label known rays.
    pub fn render_svg(&self, names: &[(String, Ray)]) -> String {
        let size = 400.0;
        let margin = 40.0;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">",
            w = size + 2.0 * margin
        );
        match &self.slice {
            Some(slice) => {
                let all: Vec<[f64; 2]> = self
                    .support
                    .rays()
                    .iter()
                    .map(|v| to_f64(&slice.project(v)))
                    .collect();
                let (lo, hi) = bounds(&all);
                let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
                let map = |p: [f64; 2]| {
                    [
                        margin + (p[0] - lo[0]) / span * size,
                        margin + size - (p[1] - lo[1]) / span * size,
                    ]
                };
                for c in &self.chambers {
                    let vs = self.slice_vertices(c).unwrap_or_default();
                    let pts: Vec<String> = vs
                        .iter()
                        .map(|p| {
                            let q = map(to_f64(p));
                            format!("{:.3},{:.3}", q[0], q[1])
                        })
                        .collect();
                    let fill = if c.labels.iter().any(|l| l == "nef") { "#cccccc" } else { "none" };
                    let _ = writeln!(
                        out,
                        "  <polygon points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"1\"/>",
                        pts.join(" ")
                    );
                }
                for (name, v) in names {
                    if dot(&slice.functional, v).is_positive() {
                        let q = map(to_f64(&slice.project(v)));
                        let _ = writeln!(
                            out,
                            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"2\"/>\n  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\">{}</text>",
                            q[0], q[1], q[0] + 4.0, q[1] - 4.0, xml_escape(name)
                        );
                    }
                }
            }
            None => {
                let o = [margin, margin + size];
                let len = size * 0.9;
                let unit = |v: &Ray| {
                    let x = [rat::to_f64(&Rat::from_integer(v[0].clone())), rat::to_f64(&Rat::from_integer(v[1].clone()))];
                    let n = (x[0] * x[0] + x[1] * x[1]).sqrt();
                    [o[0] + len * x[0] / n, o[1] - len * x[1] / n]
                };
                for c in &self.chambers {
                    if c.labels.iter().any(|l| l == "nef") {
                        let a = unit(&c.cone.rays()[0]);
                        let b = unit(&c.cone.rays()[1]);
                        let _ = writeln!(
                            out,
                            "  <polygon points=\"{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}\" fill=\"#cccccc\" stroke=\"none\"/>",
                            o[0], o[1], a[0], a[1], b[0], b[1]
                        );
                    }
                }
                let mut rays: BTreeSet<Ray> = BTreeSet::new();
                for c in &self.chambers {
                    rays.extend(c.cone.rays().iter().cloned());
                }
                for v in &rays {
                    let q = unit(v);
                    let _ = writeln!(
                        out,
                        "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\" stroke-width=\"1\"/>",
                        o[0], o[1], q[0], q[1]
                    );
                }
                for (name, v) in names {
                    let p = primitive(v);
                    if rays.contains(&p) {
                        let q = unit(&p);
                        let _ = writeln!(
                            out,
                            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\">{}</text>",
                            q[0] + 4.0,
                            q[1] - 4.0,
                            xml_escape(name)
                        );
                    }
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn to_f64(p: &Pt) -> [f64; 2] {
    [rat::to_f64(&p[0]), rat::to_f64(&p[1])]
}

fn bounds(ps: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in ps {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// Chamber decomposition of the cone spanned by `gens`.
pub fn gkz_decomposition(gens: &[DivClass]) -> Result<ChamberFan> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    let d = first.lattice_rank();
    if gens
        .iter()
        .any(|g| g.basis() != first.basis() || g.lattice_rank() != d)
    {
        return Err(Error::DimensionMismatch(
            "generators live in different lattices".into(),
        ));
    }
    if d > 3 {
        return Err(Error::Unsupported(format!(
            "chamber decomposition in rank {d}"
        )));
    }
    if d < 2 {
        return Err(Error::Unsupported("chamber decomposition in rank 1".into()));
    }
    if gens.iter().any(DivClass::is_zero) {
        return Err(Error::InvalidArgument("zero generator".into()));
    }
    let rows: Vec<Vec<Rat>> = gens.iter().map(|g| g.coords().to_vec()).collect();
    if linalg::rank_of_rows(&rows) < d {
        return Err(Error::Precondition("generators do not span the lattice".into()));
    }
    let set: BTreeSet<Ray> = gens.iter().map(DivClass::primitive_ray).collect();
    let rays: Vec<Ray> = set.into_iter().collect();
    let support = ConeQ::from_rays(&rays)?;
    if d == 2 {
        rank2(support, rays)
    } else {
        rank3(support, rays)
    }
}

fn rank2(support: ConeQ, mut rays: Vec<Ray>) -> Result<ChamberFan> {
    rays.sort_by(|a, b| angular_cmp(a, b));
    let mut chambers = Vec::new();
    for w in rays.windows(2) {
        chambers.push(Chamber {
            cone: ConeQ::from_rays(w)?,
            labels: Vec::new(),
        });
    }
    chambers.sort_by(|a, b| a.cone.rays().cmp(b.cone.rays()));
    Ok(ChamberFan {
        support,
        chambers,
        slice: None,
    })
}

fn orient(p: &Pt, q: &Pt, x: &Pt) -> Rat {
    (&q[0] - &p[0]) * (&x[1] - &p[1]) - (&q[1] - &p[1]) * (&x[0] - &p[0])
}

fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts: Vec<Pt> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Pt> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Part of a convex polygon on the side `orient(a, b, x) * sign >= 0`.
fn clip(poly: &[Pt], a: &Pt, b: &Pt, sign: i64) -> Vec<Pt> {
    let s = int(sign);
    let val = |x: &Pt| orient(a, b, x) * &s;
    let mut out: Vec<Pt> = Vec::new();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let vp = val(p);
        let vq = val(q);
        if !vp.is_negative() {
            out.push(p.clone());
        }
        if (vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive()) {
            let t = &vp / (&vp - &vq);
            out.push([
                &p[0] + &t * (&q[0] - &p[0]),
                &p[1] + &t * (&q[1] - &p[1]),
            ]);
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn area2(poly: &[Pt]) -> Rat {
    let mut s = int(0);
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        s += &p[0] * &q[1] - &p[1] * &q[0];
    }
    s
}

fn centroid(poly: &[Pt]) -> Pt {
    let n = Rat::from_integer(BigInt::from(poly.len()));
    let mut c = [int(0), int(0)];
    for p in poly {
        c[0] += &p[0];
        c[1] += &p[1];
    }
    [&c[0] / &n, &c[1] / &n]
}

fn rank3(support: ConeQ, rays: Vec<Ray>) -> Result<ChamberFan> {
    let slice = Slice::for_cone(&support);
    let pts: Vec<Pt> = rays.iter().map(|v| slice.project(v)).collect();
    let hull = convex_hull(&pts);

    let mut cells: Vec<Vec<Pt>> = vec![hull.clone()];
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let mut next = Vec::new();
            for cell in &cells {
                for sign in [1, -1] {
                    let part = clip(cell, &pts[i], &pts[j], sign);
                    if part.len() >= 3 && !area2(&part).is_zero() {
                        next.push(part);
                    }
                }
            }
            cells = next;
        }
    }

    let mut triangles: Vec<[Pt; 3]> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let o = orient(&pts[i], &pts[j], &pts[k]);
                if o.is_zero() {
                    continue;
                }
                if o.is_positive() {
                    triangles.push([pts[i].clone(), pts[j].clone(), pts[k].clone()]);
                } else {
                    triangles.push([pts[i].clone(), pts[k].clone(), pts[j].clone()]);
                }
            }
        }
    }

    let mut signatures: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cell in &cells {
        let c = centroid(cell);
        let sig: Vec<usize> = triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| (0..3).all(|e| orient(&t[e], &t[(e + 1) % 3], &c).is_positive()))
            .map(|(i, _)| i)
            .collect();
        signatures.insert(sig);
    }

    let mut cones: BTreeSet<Vec<Ray>> = BTreeSet::new();
    for sig in &signatures {
        let mut poly = hull.clone();
        for &t in sig {
            let tri = &triangles[t];
            for e in 0..3 {
                poly = clip(&poly, &tri[e], &tri[(e + 1) % 3], 1);
            }
        }
        let lifted: Vec<Ray> = poly.iter().map(|p| slice.lift(p)).collect();
        let cone = ConeQ::from_rays(&lifted)?;
        cones.insert(cone.rays().to_vec());
    }
    let chambers = cones
        .into_iter()
        .map(|rays| {
            Ok(Chamber {
                cone: ConeQ::from_rays(&rays)?,
                labels: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChamberFan {
        support,
        chambers,
        slice: Some(slice),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::divisor::{ledger_k, ledger_s, Basis};

    #[test]
    fn s4_has_three_chambers() {
        let gens = ledger_s(2).unwrap().generator_classes().unwrap();
        let fan = gkz_decomposition(&gens).unwrap();
        assert_eq!(fan.len(), 3);
        assert!(fan.verify(50, 1).ok());
    }

    #[test]
    fn s6_has_nine_chambers() {
        let gens = ledger_s(3).unwrap().generator_classes().unwrap();
        let fan = gkz_decomposition(&gens).unwrap();
        assert_eq!(fan.len(), 9);
        let report = fan.verify(200, 7);
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn k_has_three_chambers() {
        let gens = ledger_k(5).unwrap().generator_classes().unwrap();
        assert_eq!(gkz_decomposition(&gens).unwrap().len(), 3);
    }

    #[test]
    fn two_rays_one_chamber() {
        let a = DivClass::from_i64(Basis::K, &[1, 0]).unwrap();
        let b = DivClass::from_i64(Basis::K, &[1, 3]).unwrap();
        assert_eq!(gkz_decomposition(&[a, b]).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_input_rejected() {
        let a = DivClass::from_i64(Basis::K, &[1, 0]).unwrap();
        let b = DivClass::from_i64(Basis::K, &[2, 0]).unwrap();
        assert!(gkz_decomposition(&[a, b]).is_err());
        let big = DivClass::from_i64(Basis::S2r, &[1, 0, 0, 0]).unwrap();
        assert!(matches!(gkz_decomposition(&[big]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn slice_round_trip() {
        let gens = ledger_s(3).unwrap().generator_classes().unwrap();
        let fan = gkz_decomposition(&gens).unwrap();
        let slice = fan.slice.as_ref().unwrap();
        for g in &gens {
            let v = g.primitive_ray();
            assert_eq!(slice.lift(&slice.project(&v)), v);
        }
    }
}
