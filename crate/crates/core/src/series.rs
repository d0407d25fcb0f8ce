//! Truncated power series with rational coefficients.

use crate::arith::rational::{common_denominator, Rational};
use crate::arith::Poly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

fn to_ints(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(a);
    let dr = Rational::from_integer(d.clone());
    (a.iter().map(|v| (v * &dr).to_integer()).collect(), d)
}

/// `a * b mod x^n`, computed on integer numerators over one common denominator.
pub fn mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let (ai, da) = to_ints(&a[..a.len().min(n)]);
    let (bi, db) = to_ints(&b[..b.len().min(n)]);
    let den = da * db;
    (0..n)
        .into_par_iter()
        .map(|k| {
            let mut acc = BigInt::zero();
            let lo = k.saturating_sub(bi.len().saturating_sub(1));
            for i in lo..=k.min(ai.len().saturating_sub(1)) {
                if k - i < bi.len() && !ai[i].is_zero() {
                    acc += &ai[i] * &bi[k - i];
                }
            }
            if ai.is_empty() || bi.is_empty() {
                return Rational::zero();
            }
            Rational::new(acc, den.clone())
        })
        .collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x + y
        })
        .collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|v| v * c).collect()
}

/// Coefficients of the derivative (one fewer than the input).
pub fn derivative(a: &[Rational]) -> Vec<Rational> {
    a.iter().enumerate().skip(1).map(|(i, v)| v * Rational::from_integer(BigInt::from(i))).collect()
}

pub fn pow(a: &[Rational], k: usize, n: usize) -> Vec<Rational> {
    let mut result = one(n);
    let mut base = a[..a.len().min(n)].to_vec();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, n);
        }
    }
    result
}

pub fn one(n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    if n > 0 {
        v[0] = Rational::one();
    }
    v
}

/// `1/a mod x^n`, requires `a_0 != 0`.
pub fn inverse(a: &[Rational], n: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero(), "series is not invertible");
    let inv0 = a[0].recip();
    let mut out = vec![Rational::zero(); n];
    if n == 0 {
        return out;
    }
    out[0] = inv0.clone();
    for k in 1..n {
        let mut acc = Rational::zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() {
                acc += &a[i] * &out[k - i];
            }
        }
        out[k] = -acc * &inv0;
    }
    out
}

/// Polynomial times series, truncated.
pub fn mul_poly(p: &Poly, a: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, v) in a.iter().enumerate() {
            if i + j >= n {
                break;
            }
            if !v.is_zero() {
                out[i + j] += c * v;
            }
        }
    }
    out
}

/// `sum_i P_i(x) y^i mod x^n` by Horner's rule.
pub fn eval_bivariate(coeffs_y: &[Poly], y: &[Rational], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for p in coeffs_y.iter().rev() {
        acc = mul(&acc, y, n);
        let c = mul_poly(p, &one(1), n);
        acc = add(&acc, &c);
    }
    acc.truncate(n);
    acc
}

/// Coefficients of a polynomial padded to length `n`.
pub fn from_poly(p: &Poly, n: usize) -> Vec<Rational> {
    (0..n).map(|i| p.coeff(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn geometric_square() {
        let g: Vec<Rational> = (0..6).map(|_| rat(1)).collect();
        let sq = mul(&g, &g, 6);
        assert_eq!(sq, (1..=6).map(rat).collect::<Vec<_>>());
        assert_eq!(pow(&g, 2, 6), sq);
        let inv = inverse(&g, 6);
        assert_eq!(inv, vec![rat(1), rat(-1), rat(0), rat(0), rat(0), rat(0)]);
    }
}
