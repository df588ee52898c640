//! Stratification of `X_{2r}` by rank, and randomized checks of the rank gap.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::equations::orbit_equations;
use super::group::random_symplectic;
use crate::algebra::rat::{self, Rat};
use crate::algebra::{linalg, ProjSymPoint, QMatrix, SymLayout};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumLabel {
    /// Rank `k` with `1 <= k <= r`.
    Rank(usize),
    FullRank,
    OutsideX,
}

impl StratumLabel {
    /// Matrix rank represented by the label (`None` outside `X_{2r}`).
    pub fn rank(&self, r: usize) -> Option<usize> {
        match self {
            StratumLabel::Rank(k) => Some(*k),
            StratumLabel::FullRank => Some(2 * r),
            StratumLabel::OutsideX => None,
        }
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::Rank(k) => write!(f, "rank-{k}"),
            StratumLabel::FullRank => write!(f, "full-rank"),
            StratumLabel::OutsideX => write!(f, "outside-X"),
        }
    }
}

impl Serialize for StratumLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The point `I_k`: ones in the first `k` diagonal slots.
pub fn standard_point(r: usize, k: usize) -> QMatrix {
    let mut d = vec![Rat::zero(); 2 * r];
    for x in d.iter_mut().take(k) {
        *x = Rat::one();
    }
    QMatrix::diagonal(&d)
}

/// `Psi_t = diag(I_r, t I_r)`, on the big orbit for `t != 0`.
pub fn psi(r: usize, t: &Rat) -> QMatrix {
    let d: Vec<Rat> = (0..2 * r)
        .map(|i| if i < r { Rat::one() } else { t.clone() })
        .collect();
    QMatrix::diagonal(&d)
}

/// `Lambda_t = diag(I_k, t, 0, ..., 0)`, on the rank `k+1` orbit for `t != 0`.
pub fn lambda(r: usize, k: usize, t: &Rat) -> QMatrix {
    let mut d = vec![Rat::zero(); 2 * r];
    for x in d.iter_mut().take(k) {
        *x = Rat::one();
    }
    d[k] = t.clone();
    QMatrix::diagonal(&d)
}

fn check_size(r: usize, z: &ProjSymPoint) -> Result<()> {
    if r == 0 || z.size() != 2 * r {
        return Err(Error::DimensionMismatch(format!(
            "point of size {} for r = {r}",
            z.size()
        )));
    }
    Ok(())
}

/// Evaluates every orbit equation at `z`.
pub fn equation_values(r: usize, z: &ProjSymPoint) -> Result<Vec<Rat>> {
    check_size(r, z)?;
    let x = z.upper();
    Ok(orbit_equations(r)?.iter().map(|e| e.eval(&x)).collect())
}

/// Stratum of `z`. A point passing the equation test with rank strictly
/// between `r` and `2r` would contradict the rank gap and is reported as an
/// invariant violation.
pub fn classify_point(r: usize, z: &ProjSymPoint) -> Result<StratumLabel> {
    if equation_values(r, z)?.iter().any(|v| !v.is_zero()) {
        return Ok(StratumLabel::OutsideX);
    }
    let k = linalg::rank(&z.matrix());
    if k == 2 * r {
        Ok(StratumLabel::FullRank)
    } else if k <= r {
        Ok(StratumLabel::Rank(k))
    } else {
        Err(Error::invariant(
            format!("point satisfies the equations of X_{} with rank {k}", 2 * r),
            z.matrix().to_string(),
        ))
    }
}

/// `dim Y_k = 2rk + k - k^2 - 1`.
pub fn stratum_dimension(r: usize, k: usize) -> Result<usize> {
    if k == 0 || k > r {
        return Err(Error::OutOfRange(format!("stratum index {k} for r = {r}")));
    }
    Ok(2 * r * k + k - k * k - 1)
}

/// `dim X_{2r} = r(r+1)`.
pub fn x_dimension(r: usize) -> usize {
    r * (r + 1)
}

/// How a sampled point was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub seed: u64,
    pub source: String,
    pub point: ProjSymPoint,
    pub label: StratumLabel,
}

/// Per-trial seed derived from the run seed, independent of scheduling.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000_0000);
    rng.set_stream(trial as u64 + 1);
    rng.gen_range(1..u64::MAX)
}

fn random_parameter(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let t = rat::rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if !t.is_zero() {
            return t;
        }
    }
}

/// One point of `X_{2r}`: a random symplectic transform of `I_k`, of the
/// identity, or of a point on one of the families `Psi_t`, `Lambda_t`.
pub fn sample_orbit_point(r: usize, seed: u64) -> Result<(String, ProjSymPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_symplectic(r, rng.gen_range(1..u64::MAX))?;
    let choice = rng.gen_range(0..r + 3);
    let (source, base) = if choice < r {
        (format!("I_{}", choice + 1), standard_point(r, choice + 1))
    } else if choice == r {
        ("I".to_string(), QMatrix::identity(2 * r))
    } else if choice == r + 1 {
        let t = random_parameter(&mut rng);
        (format!("Psi_{}", rat::to_string(&t)), psi(r, &t))
    } else if r >= 2 {
        let k = rng.gen_range(1..r);
        let t = random_parameter(&mut rng);
        (format!("Lambda_{},{}", k, rat::to_string(&t)), lambda(r, k, &t))
    } else {
        ("I_1".to_string(), standard_point(r, 1))
    };
    Ok((source, ProjSymPoint::new(&m.act(&base))?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankGapReport {
    pub r: usize,
    pub trials: usize,
    pub seed: u64,
    /// Sample counts keyed by stratum label.
    pub counts: BTreeMap<String, usize>,
    pub violations: usize,
}

/// Samples `trials` points of `X_{2r}`, checks that each satisfies all orbit
/// equations and has rank in `{1..r} U {2r}`, and counts strata.
pub fn rank_gap_sampling(r: usize, trials: usize, seed: u64) -> Result<RankGapReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let layout = SymLayout::new(2 * r);
    let eqs = orbit_equations(r)?;
    let results: Vec<Result<StratumLabel>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (source, p) = sample_orbit_point(r, trial_seed(seed, t))?;
            let x = layout.upper_entries(&p.matrix());
            if let Some(e) = eqs.iter().find(|e| !e.eval(&x).is_zero()) {
                return Err(Error::invariant(
                    format!("sample from {source} violates {e}"),
                    p.matrix().to_string(),
                ));
            }
            let k = linalg::rank(&p.matrix());
            if k == 2 * r {
                Ok(StratumLabel::FullRank)
            } else if (1..=r).contains(&k) {
                Ok(StratumLabel::Rank(k))
            } else {
                Err(Error::invariant(
                    format!("sample from {source} has rank {k}"),
                    p.matrix().to_string(),
                ))
            }
        })
        .collect();
    let mut counts = BTreeMap::new();
    for res in results {
        let label = res?;
        *counts.entry(label.to_string()).or_insert(0) += 1;
    }
    Ok(RankGapReport {
        r,
        trials,
        seed,
        counts,
        violations: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    fn point(m: &QMatrix) -> ProjSymPoint {
        ProjSymPoint::new(m).unwrap()
    }

    #[test]
    fn standard_points() {
        for r in 1..=4 {
            assert_eq!(classify_point(r, &point(&QMatrix::identity(2 * r))).unwrap(), StratumLabel::FullRank);
            for k in 1..=r {
                assert_eq!(classify_point(r, &point(&standard_point(r, k))).unwrap(), StratumLabel::Rank(k));
            }
        }
    }

    #[test]
    fn too_many_ones_is_outside() {
        for r in 2..=4 {
            let z = standard_point(r, r + 1);
            assert_eq!(classify_point(r, &point(&z)).unwrap(), StratumLabel::OutsideX);
        }
        assert!(classify_point(2, &point(&QMatrix::identity(3))).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(stratum_dimension(2, 2).unwrap(), 5);
        for r in 1..=6 {
            assert_eq!(stratum_dimension(r, 1).unwrap(), 2 * r - 1);
            assert_eq!(stratum_dimension(r, r).unwrap(), x_dimension(r) - 1);
        }
        assert!(stratum_dimension(2, 3).is_err());
        assert!(stratum_dimension(2, 0).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(psi(3, &int(1)), QMatrix::identity(6));
        assert_eq!(psi(3, &int(0)), standard_point(3, 3));
        assert_eq!(lambda(3, 1, &int(0)), standard_point(3, 1));
        let p = point(&psi(2, &int(3)));
        assert_eq!(classify_point(2, &p).unwrap(), StratumLabel::FullRank);
        let p = point(&lambda(3, 2, &int(-2)));
        assert_eq!(classify_point(3, &p).unwrap(), StratumLabel::Rank(3));
    }

    #[test]
    fn sampling_small() {
        let rep = rank_gap_sampling(2, 60, 7).unwrap();
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.counts.values().sum::<usize>(), 60);
        assert_eq!(rep, rank_gap_sampling(2, 60, 7).unwrap());
        assert!(rank_gap_sampling(2, 0, 7).is_err());
    }
}
