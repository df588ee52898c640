//! Dimension, degree and multiplicity of secant varieties of the quadratic
//! Veronese variety `V_2^n`, i.e. of symmetric matrices of rank at most `h`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::rat::binomial;
use crate::error::{Error, Result};

fn check(n: usize, h: usize) -> Result<()> {
    if h == 0 || h > n {
        return Err(Error::OutOfRange(format!("secant index h = {h} for n = {n}")));
    }
    Ok(())
}

/// `(2nh - h^2 + 3h - 2) / 2`.
pub fn secant_dim(n: usize, h: usize) -> Result<usize> {
    check(n, h)?;
    Ok((2 * n * h + 3 * h - h * h - 2) / 2)
}

/// `prod_{i=0}^{n-h} C(n+1+i, n+1-h-i) / C(2i+1, i)`.
pub fn secant_deg(n: usize, h: usize) -> Result<BigInt> {
    check(n, h)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..=(n - h) {
        num *= binomial((n + 1 + i) as u64, (n + 1 - h - i) as u64);
        den *= binomial((2 * i + 1) as u64, i as u64);
    }
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::invariant(
            format!("secant degree product for n = {n}, h = {h} is not an integer"),
            format!("{num}/{den}"),
        ));
    }
    Ok(q)
}

/// Multiplicity of `sec_h` along `sec_k \ sec_{k-1}`, which is the degree of
/// `sec_{h-k}(V_2^{n-k})`.
pub fn secant_mult(n: usize, h: usize, k: usize) -> Result<BigInt> {
    check(n, h)?;
    if k == 0 || k >= h {
        return Err(Error::OutOfRange(format!("multiplicity index k = {k} for h = {h}")));
    }
    secant_deg(n - k, h - k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        for n in 1..=8 {
            assert_eq!(secant_deg(n, n).unwrap(), BigInt::from(n + 1));
            assert_eq!(secant_deg(n, 1).unwrap(), BigInt::from(1u64 << n));
            assert_eq!(secant_dim(n, 1).unwrap(), n);
            assert_eq!(secant_dim(n, n).unwrap(), n * (n + 3) / 2 - 1);
        }
        assert_eq!(secant_deg(3, 2).unwrap(), BigInt::from(10));
        assert_eq!(secant_dim(3, 2).unwrap(), 6);
        assert_eq!(secant_mult(3, 3, 1).unwrap(), BigInt::from(3));
        assert!(secant_deg(2, 3).is_err());
        assert!(secant_mult(3, 2, 2).is_err());
    }

    #[test]
    fn plane_pairs_count() {
        // two planes of P^3 (3 + 3) sweep a 6-dimensional family of rank-2 quadrics
        assert_eq!(secant_dim(3, 2).unwrap(), 3 + 3);
    }
}
