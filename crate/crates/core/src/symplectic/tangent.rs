//! Tangent cones at the standard points `p_k` (the classes of `I_k`).

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::equations::orbit_equations;
use crate::algebra::linalg;
use crate::algebra::{lowest_degree_part, MPoly, QMatrix, Rat, SymLayout};
use crate::error::{Error, Result};

/// Moves `p_k` to the origin of the chart `z00 = 1` (substituting
/// `z_ii -> z_ii + 1` for `1 <= i < k`) and returns the lowest-degree part of
/// every equation. For `k = 0` the equations are returned as lowest parts
/// without any chart. Zero polynomials are dropped.
pub fn lowest_parts_at(equations: &[MPoly], size: usize, k: usize) -> Result<Vec<MPoly>> {
    if k > size {
        return Err(Error::OutOfRange(format!("k = {k} for matrices of size {size}")));
    }
    let layout = SymLayout::new(size);
    let vars = layout.vars();
    let mut images: Vec<MPoly> = (0..layout.len()).map(|i| MPoly::var(&vars, i)).collect();
    if k >= 1 {
        images[layout.index(0, 0)] = MPoly::one(&vars);
        for i in 1..k {
            let idx = layout.index(i, i);
            images[idx] = &images[idx] + &MPoly::one(&vars);
        }
    }
    let mut out = Vec::with_capacity(equations.len());
    for e in equations {
        if e.vars().len() != layout.len() {
            return Err(Error::DimensionMismatch("equations live in a different ring".into()));
        }
        let shifted = if k == 0 { e.clone() } else { e.substitute(&images) };
        if shifted.is_zero() {
            continue;
        }
        if !shifted.constant_term().is_zero() {
            return Err(Error::Precondition(format!("equation {e} does not vanish at p_{k}")));
        }
        out.push(lowest_degree_part(&shifted)?);
    }
    Ok(out)
}

/// Indices `{k..r-1} U {r+k..2r-1}`: the rows and columns of the base block.
pub fn block_indices(r: usize, k: usize) -> Vec<usize> {
    (k..r).chain(r + k..2 * r).collect()
}

/// The orbit equations of `X_{2(r-k)}` written in the variables of the base
/// block of `X_{2r}`.
pub fn relabeled_base_equations(r: usize, k: usize) -> Result<Vec<MPoly>> {
    let m = r - k;
    if m == 0 {
        return Ok(Vec::new());
    }
    let block = block_indices(r, k);
    let small = SymLayout::new(2 * m);
    let big = SymLayout::new(2 * r);
    let map: Vec<usize> = small
        .pairs()
        .into_iter()
        .map(|(a, b)| big.index(block[a], block[b]))
        .collect();
    Ok(orbit_equations(m)?
        .iter()
        .map(|e| e.rename(&big.vars(), &map))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct TangentConeReport {
    pub r: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::cli::json::polys")]
    pub lowest_parts: Vec<MPoly>,
    /// Dimension of the vertex, `k(2r+1-k) - 1`; at `p_r` the dimension of
    /// the tangent space, and `-1` when no chart is taken (`k = 0`).
    pub predicted_vertex_dim: i64,
    pub predicted_base: String,
    /// Number of independent linear forms among the lowest parts.
    pub linear_rank: usize,
    pub predicted_linear_rank: usize,
    /// Higher-degree lowest parts after eliminating the linear relations.
    #[serde(serialize_with = "crate::cli::json::polys")]
    pub reduced_forms: Vec<MPoly>,
    /// Whether the reduced forms only involve base-block variables.
    pub block_only: bool,
    /// Whether the reduced forms span the same space as the relabeled orbit
    /// equations of the base.
    pub base_span_matches: bool,
}

impl TangentConeReport {
    pub fn consistent(&self) -> bool {
        self.block_only && self.base_span_matches && self.linear_rank == self.predicted_linear_rank
    }
}

/// Tangent cone of `V(equations)` at `p_k` in the space of symmetric
/// `2r x 2r` matrices, with the cone structure predicted for `X_{2r}`.
pub fn tangent_cone(equations: &[MPoly], r: usize, k: usize) -> Result<TangentConeReport> {
    if r == 0 || k > r {
        return Err(Error::OutOfRange(format!("k = {k} for r = {r}")));
    }
    let layout = SymLayout::new(2 * r);
    let vars = layout.vars();
    let lowest = lowest_parts_at(equations, 2 * r, k)?;

    let block: BTreeSet<usize> = block_indices(r, k).into_iter().collect();
    let is_block_var = |idx: usize| {
        let (i, j) = layout.pairs()[idx];
        block.contains(&i) && block.contains(&j)
    };
    // eliminate non-block variables first so that pivots avoid the block
    let mut order: Vec<usize> = (0..layout.len()).filter(|&v| !is_block_var(v)).collect();
    order.extend((0..layout.len()).filter(|&v| is_block_var(v)));

    let linear: Vec<&MPoly> = lowest.iter().filter(|p| p.total_degree() == Some(1)).collect();
    let mut images: Vec<MPoly> = (0..layout.len()).map(|i| MPoly::var(&vars, i)).collect();
    let mut linear_rank = 0;
    if !linear.is_empty() {
        let rows: Vec<Vec<Rat>> = linear
            .iter()
            .map(|p| {
                order
                    .iter()
                    .map(|&v| {
                        let mut e = vec![0; layout.len()];
                        e[v] = 1;
                        p.coefficient(&e)
                    })
                    .collect()
            })
            .collect();
        let (red, pivots) = linalg::rref(&QMatrix::from_rows(rows)?);
        linear_rank = pivots.len();
        let pivset: BTreeSet<usize> = pivots.iter().copied().collect();
        for (row, &pc) in pivots.iter().enumerate() {
            let mut expr = MPoly::zero(&vars);
            for c in 0..order.len() {
                if !pivset.contains(&c) && !red[(row, c)].is_zero() {
                    expr = &expr - &MPoly::var(&vars, order[c]).scale(&red[(row, c)]);
                }
            }
            images[order[pc]] = expr;
        }
    }
    let reduced: Vec<MPoly> = lowest
        .iter()
        .filter(|p| p.total_degree().is_some_and(|d| d >= 2))
        .map(|p| p.substitute(&images))
        .filter(|p| !p.is_zero())
        .collect();
    let block_only = reduced
        .iter()
        .all(|p| p.support().into_iter().all(&is_block_var));
    let base = relabeled_base_equations(r, k)?;
    let base_span_matches = linalg::same_span(&reduced, &base);

    let m = r - k;
    let n_vars = layout.len();
    // at p_r the cone is the full tangent space, of dimension dim X_{2r}
    let (vertex, predicted_linear_rank) = if k == 0 {
        (-1, 0)
    } else if k == r {
        let d = r * (r + 1);
        (d as i64, n_vars - 1 - d)
    } else {
        let v = k * (2 * r + 1 - k) - 1;
        (v as i64, n_vars - 1 - v - m * (2 * m + 1))
    };
    Ok(TangentConeReport {
        r,
        k,
        lowest_parts: lowest,
        predicted_vertex_dim: vertex,
        predicted_base: if k == r && k > 0 {
            "linear space".to_string()
        } else {
            format!("X_{}", 2 * m)
        },
        linear_rank,
        predicted_linear_rank,
        reduced_forms: reduced,
        block_only,
        base_span_matches,
    })
}
