//! `X_4` as the Grassmannian `G(1,4)`, and the two rulings of a quadric
//! surface viewed as conics in `G(1,3)`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::equations::orbit_equations;
use super::group::omega;
use crate::algebra::rat::{int, rat};
use crate::algebra::{linalg, MPoly, QMatrix, Vars};
use crate::error::Result;

/// Plücker variables `p_ij`, `0 <= i < j <= 4`, in lexicographic order.
fn plucker_vars() -> Arc<Vars> {
    let mut names = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            names.push(format!("p{i}{j}"));
        }
    }
    Vars::new(names)
}

fn p(vars: &Arc<Vars>, i: usize, j: usize) -> MPoly {
    MPoly::var(vars, vars.index_of(&format!("p{i}{j}")).expect("plucker index"))
}

/// The five quadrics `p_ab p_cd - p_ac p_bd + p_ad p_bc` of `G(1,4)`.
pub fn pluecker_relations(vars: &Arc<Vars>) -> Vec<MPoly> {
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                for d in c + 1..5 {
                    let t = &(&p(vars, a, b) * &p(vars, c, d)) - &(&p(vars, a, c) * &p(vars, b, d));
                    out.push(&t + &(&p(vars, a, d) * &p(vars, b, c)));
                }
            }
        }
    }
    out
}

/// Images of `z00, z01, ..., z33` under the linear identification of `X_4`
/// with `G(1,4)`.
pub fn x4_substitution(vars: &Arc<Vars>) -> Vec<MPoly> {
    let half = rat(1, 2);
    vec![
        p(vars, 1, 2),
        p(vars, 0, 1),
        (&p(vars, 1, 4) - &p(vars, 2, 3)).scale(&half),
        p(vars, 0, 2),
        p(vars, 1, 3),
        p(vars, 0, 3),
        (&p(vars, 1, 4) + &p(vars, 2, 3)).scale(&half),
        p(vars, 3, 4),
        p(vars, 0, 4),
        p(vars, 2, 4),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlueckerReport {
    pub transformed_rank: usize,
    pub pluecker_rank: usize,
    pub joint_rank: usize,
    pub same_span: bool,
}

/// Transforms the five orbit equations of `X_4` and compares their span with
/// the span of the Plücker relations.
pub fn verify_x4_pluecker() -> Result<PlueckerReport> {
    let vars = plucker_vars();
    let sub = x4_substitution(&vars);
    let transformed: Vec<MPoly> = orbit_equations(2)?.iter().map(|e| e.substitute(&sub)).collect();
    let rel = pluecker_relations(&vars);
    let mut joint = transformed.clone();
    joint.extend(rel.iter().cloned());
    let transformed_rank = linalg::span_rank(&transformed);
    let pluecker_rank = linalg::span_rank(&rel);
    let joint_rank = linalg::span_rank(&joint);
    Ok(PlueckerReport {
        transformed_rank,
        pluecker_rank,
        joint_rank,
        same_span: transformed_rank == 5 && pluecker_rank == 5 && joint_rank == 5,
    })
}

/// Plücker coordinates `[p01 : p02 : p03 : p12 : p13 : p23]` of the line
/// spanned by `u` and `w`.
pub fn line_coordinates(u: &[MPoly; 4], w: &[MPoly; 4]) -> Vec<MPoly> {
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            out.push(&(&u[i] * &w[j]) - &(&u[j] * &w[i]));
        }
    }
    out
}

/// `omega(u, w) = u^t Omega w`.
fn symplectic_pairing(u: &[MPoly; 4], w: &[MPoly; 4]) -> MPoly {
    let o = omega(2);
    let mut acc = MPoly::zero(u[0].vars());
    for i in 0..4 {
        for j in 0..4 {
            let c = &o[(i, j)];
            if !c.is_zero() {
                acc = &acc + &(&u[i] * &w[j]).scale(c);
            }
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RulingReport {
    /// Plücker curve of the first ruling, in `s, t`.
    pub first_curve: Vec<String>,
    /// Plücker curve of the second ruling, in `u, v`.
    pub second_curve: Vec<String>,
    pub first_lagrangian: bool,
    pub first_in_hyperplane: bool,
    pub second_hyperplane_value: String,
    pub second_not_in_hyperplane: bool,
    pub quadric_antisymplectic: bool,
}

impl RulingReport {
    pub fn all_pass(&self) -> bool {
        self.first_lagrangian
            && self.first_in_hyperplane
            && self.second_not_in_hyperplane
            && self.quadric_antisymplectic
    }
}

/// Checks the rulings of `x0^2 + x1^2 - x2^2 - x3^2 = 0`: one ruling consists
/// of Lagrangian lines lying on the hyperplane `Z1 + Z4 = 0`, the other does
/// not, and the quadric's matrix satisfies `M^t Omega M = -Omega`.
pub fn ruling_check() -> Result<RulingReport> {
    let st = Vars::new(["s", "t"]);
    let s = MPoly::var(&st, 0);
    let t = MPoly::var(&st, 1);
    let l_u = [t.clone(), -&s, -&t, s.clone()];
    let l_w = [s.clone(), t.clone(), s.clone(), t.clone()];
    let first = line_coordinates(&l_u, &l_w);
    let first_lagrangian = symplectic_pairing(&l_u, &l_w).is_zero();
    let first_in_hyperplane = (&first[1] + &first[4]).is_zero();

    let uv = Vars::new(["u", "v"]);
    let u = MPoly::var(&uv, 0);
    let v = MPoly::var(&uv, 1);
    let r_u = [u.clone(), -&v, u.clone(), v.clone()];
    let r_w = [v.clone(), u.clone(), -&v, u.clone()];
    let second = line_coordinates(&r_u, &r_w);
    let hyper = &second[1] + &second[4];

    let m_q = QMatrix::diagonal(&[int(1), int(1), int(-1), int(-1)]);
    let o = omega(2);
    let quadric_antisymplectic = QMatrix::chain(&[&m_q.transpose(), &o, &m_q]) == o.scale(&-crate::algebra::Rat::one());

    Ok(RulingReport {
        first_curve: first.iter().map(ToString::to_string).collect(),
        second_curve: second.iter().map(ToString::to_string).collect(),
        first_lagrangian,
        first_in_hyperplane,
        second_hyperplane_value: hyper.to_string(),
        second_not_in_hyperplane: !hyper.is_zero(),
        quadric_antisymplectic,
    })
}

/// Evaluates the first ruling's Plücker curve at `(s, t)`.
pub fn first_ruling_point(s: i64, t: i64) -> Vec<crate::algebra::Rat> {
    let st = Vars::new(["s", "t"]);
    let sv = MPoly::var(&st, 0);
    let tv = MPoly::var(&st, 1);
    let l_u = [tv.clone(), -&sv, -&tv, sv.clone()];
    let l_w = [sv.clone(), tv.clone(), sv.clone(), tv];
    line_coordinates(&l_u, &l_w)
        .iter()
        .map(|c| c.eval(&[int(s), int(t)]))
        .collect()
}
