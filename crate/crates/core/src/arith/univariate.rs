//! Dense univariate truncated series, stored as coefficient vectors.

use super::{factorial, rat, Rational, Ring};
use num_traits::{One, Zero};

/// Product of two series truncated at degree `deg`.
pub fn mul<R: Ring>(a: &[R], b: &[R], deg: usize) -> Vec<R> {
    let mut out = vec![R::zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + &(x.clone() * y);
        }
    }
    out
}

pub fn pow<R: Ring>(a: &[R], k: usize, deg: usize) -> Vec<R> {
    let mut acc = vec![R::zero(); deg + 1];
    acc[0] = R::one();
    for _ in 0..k {
        acc = mul(&acc, a, deg);
    }
    acc
}

/// Multiplicative inverse of a rational series with nonzero constant term.
pub fn inverse(a: &[Rational], deg: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero(), "series not invertible");
    let inv0 = a[0].recip();
    let mut out = vec![Rational::zero(); deg + 1];
    out[0] = inv0.clone();
    for k in 1..=deg {
        let mut acc = Rational::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -acc * &inv0;
    }
    out
}

/// `e^{nt/2} - e^{-nt/2}` up to `t^deg`.
pub fn zeta<R: Ring>(n: &R, deg: usize) -> Vec<R> {
    let mut out = vec![R::zero(); deg + 1];
    let mut npow = n.clone();
    for k in 1..=deg {
        if k % 2 == 1 {
            let c = Rational::one() / (factorial(k as u64) * pow2(k as u32 - 1));
            out[k] = npow.scale(&c);
        }
        npow = npow * n;
    }
    out
}

/// `t / zeta(t)` up to `t^deg`.
pub fn zeta_reciprocal(deg: usize) -> Vec<Rational> {
    let over_t: Vec<Rational> = zeta(&rat(1), deg + 1)[1..].to_vec();
    inverse(&over_t, deg)
}

/// `zeta(nt) / zeta(t)` up to `t^deg`; a genuine power series for any `n`.
pub fn zeta_ratio<R: Ring>(n: &R, deg: usize) -> Vec<R> {
    let num: Vec<R> = zeta(n, deg + 1)[1..].to_vec();
    let den: Vec<R> = zeta_reciprocal(deg)
        .iter()
        .map(R::from_rational)
        .collect();
    mul(&num, &den, deg)
}

fn pow2(k: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::one() << k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn zeta_taylor() {
        let z = zeta(&rat(1), 5);
        assert_eq!(z, vec![rat(0), rat(1), rat(0), frac(1, 24), rat(0), frac(1, 1920)]);
    }

    #[test]
    fn ratio_two_is_double_cosh() {
        let r = zeta_ratio(&rat(2), 4);
        assert_eq!(r, vec![rat(2), rat(0), frac(1, 4), rat(0), frac(1, 192)]);
        assert_eq!(zeta_ratio(&rat(0), 3), vec![rat(0); 4]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![rat(2), rat(1), frac(1, 3)];
        let b = inverse(&a, 6);
        let p = mul(&a, &b, 6);
        assert_eq!(p[0], rat(1));
        assert!(p[1..].iter().all(Zero::is_zero));
    }
}
