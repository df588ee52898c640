//! Truncated power series in one variable `h` with rational coefficients.

use num_traits::{One, Zero};

use crate::algebra::rat::{self, int};
use crate::algebra::Rat;
use crate::error::{Error, Result};

/// Coefficients `c_0, .., c_deg`, padding with zeros or cutting as needed.
pub fn truncate(a: &[Rat], deg: usize) -> Vec<Rat> {
    (0..=deg)
        .map(|i| a.get(i).cloned().unwrap_or_else(Rat::zero))
        .collect()
}

pub fn mul(a: &[Rat], b: &[Rat], deg: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn inverse(a: &[Rat], deg: usize) -> Result<Vec<Rat>> {
    let a0 = a
        .first()
        .filter(|x| !x.is_zero())
        .ok_or_else(|| Error::Precondition("series with zero constant term".into()))?;
    let inv0 = a0.recip();
    let mut out = vec![Rat::zero(); deg + 1];
    out[0] = inv0.clone();
    for k in 1..=deg {
        let mut s = Rat::zero();
        for j in 1..=k {
            if let Some(aj) = a.get(j) {
                s += aj * &out[k - j];
            }
        }
        out[k] = -s * &inv0;
    }
    Ok(out)
}

pub fn div(num: &[Rat], den: &[Rat], deg: usize) -> Result<Vec<Rat>> {
    Ok(mul(num, &inverse(den, deg)?, deg))
}

/// `(1 + c h)^e` through degree `deg`.
pub fn linear_power(c: i64, e: u32, deg: usize) -> Vec<Rat> {
    (0..=deg)
        .map(|k| {
            Rat::from_integer(rat::binomial(e as u64, k as u64)) * rat::pow(&int(c), k as u32)
        })
        .collect()
}

/// Power sums `p_1, .., p_deg` of the Chern roots, from the Chern classes.
pub fn power_sums(c: &[Rat], deg: usize) -> Vec<Rat> {
    let c = truncate(c, deg);
    let mut p = vec![Rat::zero(); deg + 1];
    for k in 1..=deg {
        // p_k = (-1)^{k-1} k c_k + sum_{i<k} (-1)^{k-1+i} c_{k-i} p_i
        let sign = |e: usize| if e.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        let mut s = sign(k - 1) * int(k as i64) * &c[k];
        for i in 1..k {
            s += sign(k - 1 + i) * &c[k - i] * &p[i];
        }
        p[k] = s;
    }
    p
}

/// Chern classes from power sums `p_1, .., p_deg` (entry 0 ignored).
pub fn from_power_sums(p: &[Rat], deg: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); deg + 1];
    c[0] = Rat::one();
    for k in 1..=deg {
        let mut s = Rat::zero();
        for i in 1..=k {
            let term = &c[k - i] * &p[i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        c[k] = s / int(k as i64);
    }
    c
}

/// Total Chern class of `A (x) B` from those of `A` and `B`.
pub fn tensor_chern(a: &[Rat], rank_a: usize, b: &[Rat], rank_b: usize, deg: usize) -> Vec<Rat> {
    let mut pa = power_sums(a, deg);
    let mut pb = power_sums(b, deg);
    pa[0] = int(rank_a as i64);
    pb[0] = int(rank_b as i64);
    let mut p = vec![Rat::zero(); deg + 1];
    for (k, pk) in p.iter_mut().enumerate().skip(1) {
        for t in 0..=k {
            *pk += Rat::from_integer(rat::binomial(k as u64, t as u64)) * &pa[t] * &pb[k - t];
        }
    }
    from_power_sums(&p, deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn newton_round_trip() {
        let c = ints(&[1, 3, -2, 7]);
        assert_eq!(from_power_sums(&power_sums(&c, 3), 3), c);
    }

    #[test]
    fn tensor_with_line_bundle() {
        // A (x) O with c(O) = 1 is A itself
        let a = ints(&[1, 2, 5]);
        assert_eq!(tensor_chern(&a, 2, &ints(&[1]), 1, 2), a);
    }

    #[test]
    fn zero_constant_term() {
        assert!(inverse(&ints(&[0, 1]), 3).is_err());
    }
}
