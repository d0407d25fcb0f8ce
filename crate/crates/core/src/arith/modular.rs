//! Word-sized prime fields, CRT and rational reconstruction.

use super::rational::{bigint_mod, Rational};
use crate::error::{HoloError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (p prime).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Reduces a signed machine integer.
pub fn i64_mod(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Deterministic Miller-Rabin, exact below 3.2e9.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Largest primes below 2^31, in decreasing order, skipping none.
pub fn primes_below_2_31(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c: u64 = (1 << 31) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// A growing batch of word-size primes plus a log of the ones rejected as unlucky.
#[derive(Debug, Clone)]
pub struct PrimeSet {
    pub primes: Vec<u64>,
    pub skipped: Vec<u64>,
}

impl Default for PrimeSet {
    fn default() -> Self {
        PrimeSet::new(10)
    }
}

impl PrimeSet {
    pub fn new(batch: usize) -> Self {
        PrimeSet { primes: primes_below_2_31(batch.max(1)), skipped: Vec::new() }
    }

    /// Doubles the number of primes.
    pub fn grow(&mut self) {
        let n = self.primes.len() + self.skipped.len();
        let all = primes_below_2_31(2 * n);
        self.primes.extend(all[n..].iter().copied());
    }

    pub fn mark_unlucky(&mut self, p: u64) {
        if let Some(i) = self.primes.iter().position(|&q| q == p) {
            self.primes.remove(i);
            self.skipped.push(p);
        }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Combines residues `r_i mod p_i` into `(x, M)` with `0 <= x < M = prod p_i`.
pub fn crt_combine(residues: &[(BigInt, u64)]) -> Result<(BigInt, BigInt)> {
    let mut seen = std::collections::HashSet::new();
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, p) in residues {
        if !seen.insert(*p) {
            return Err(HoloError::DuplicatePrime(*p));
        }
        let r = bigint_mod(r, *p);
        let xm = bigint_mod(&x, *p);
        let mm = bigint_mod(&m, *p);
        let t = mul_mod(sub_mod(r, xm, *p), inv_mod(mm, *p), *p);
        x += &m * BigInt::from(t);
        m *= BigInt::from(*p);
    }
    Ok((x, m))
}

/// Incremental CRT accumulator for many values sharing the same moduli.
#[derive(Debug, Clone)]
pub struct CrtVec {
    pub values: Vec<BigInt>,
    pub modulus: BigInt,
    pub primes: Vec<u64>,
}

impl CrtVec {
    pub fn new(len: usize) -> Self {
        CrtVec { values: vec![BigInt::zero(); len], modulus: BigInt::one(), primes: Vec::new() }
    }

    pub fn push(&mut self, residues: &[u64], p: u64) -> Result<()> {
        if self.primes.contains(&p) {
            return Err(HoloError::DuplicatePrime(p));
        }
        assert_eq!(residues.len(), self.values.len());
        let minv = inv_mod(bigint_mod(&self.modulus, p), p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let t = mul_mod(sub_mod(r, bigint_mod(x, p), p), minv, p);
            if t != 0 {
                *x += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= BigInt::from(p);
        self.primes.push(p);
        Ok(())
    }

    /// Reconstructs every entry, or `None` if any entry fails.
    pub fn reconstruct(&self) -> Option<Vec<Rational>> {
        self.values
            .iter()
            .map(|v| rational_reconstruct(v, &self.modulus).ok())
            .collect()
    }
}

/// Wang's rational reconstruction with numerator and denominator bound `sqrt(M/2)`.
pub fn rational_reconstruct(v: &BigInt, m: &BigInt) -> Result<Rational> {
    let bound: BigInt = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = v.mod_floor(m);
    let mut s0 = BigInt::zero();
    let mut s1 = BigInt::one();
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() || !s1.gcd(m).is_one() {
        return Err(HoloError::NoReconstruction);
    }
    Ok(Rational::new(r1, s1))
}

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ModPoly { p, coeffs: vec![1 % p] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                add_mod(a, b, self.p)
            })
            .collect();
        ModPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        self.add(&o.scale(self.p - 1))
    }

    pub fn scale(&self, s: u64) -> ModPoly {
        let p = self.p;
        ModPoly::new(p, self.coeffs.iter().map(|&c| mul_mod(c, s, p)).collect())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        ModPoly::new(p, out)
    }

    pub fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (ModPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[k + j] = sub_mod(r[k + j], mul_mod(c, b, p), p);
                }
            }
        }
        r.truncate(dd);
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        ModPoly::new(
            p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect(),
        )
    }

    /// `f(x + c)`.
    pub fn shift_by(&self, c: i64) -> ModPoly {
        let p = self.p;
        let c = i64_mod(c, p);
        let mut out = vec![0u64; self.coeffs.len()];
        for &a in self.coeffs.iter().rev() {
            for j in (1..out.len()).rev() {
                out[j] = add_mod(out[j - 1], mul_mod(out[j], c, p), p);
            }
            if !out.is_empty() {
                out[0] = add_mod(mul_mod(out[0], c, p), a, p);
            }
        }
        ModPoly::new(p, out)
    }

    /// Interpolating polynomial through `(xs[i], ys[i])` by Newton's divided differences.
    pub fn interpolate(p: u64, xs: &[u64], ys: &[u64]) -> ModPoly {
        let n = xs.len();
        let mut c = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = sub_mod(c[i], c[i - 1], p);
                let den = sub_mod(xs[i], xs[i - j], p);
                c[i] = mul_mod(num, inv_mod(den, p), p);
            }
        }
        let mut acc = ModPoly::zero(p);
        for i in (0..n).rev() {
            acc = acc.mul(&ModPoly::new(p, vec![neg_mod(xs[i], p), 1])).add(&ModPoly::new(p, vec![c[i]]));
        }
        acc
    }

    /// Finds `num/den` with `deg num <= max_num` agreeing with `self` modulo `m`.
    pub fn rational_reconstruct(&self, m: &ModPoly, max_num: usize) -> Option<(ModPoly, ModPoly)> {
        let p = self.p;
        let mut r0 = m.clone();
        let mut r1 = self.divrem(m).1;
        let mut t0 = ModPoly::zero(p);
        let mut t1 = ModPoly::one(p);
        while r1.degree().is_some_and(|d| d > max_num) {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if t1.is_zero() || !(t1.gcd(m).degree() == Some(0)) {
            return None;
        }
        let inv = inv_mod(t1.lc(), p);
        Some((r1.scale(inv), t1.scale(inv)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    #[test]
    fn primes_are_prime_and_descending() {
        let ps = primes_below_2_31(5);
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime_u64(2147483649));
    }

    #[test]
    fn crt_roundtrip() {
        let (x, m) = crt_combine(&[(BigInt::from(2), 3), (BigInt::from(3), 5), (BigInt::from(2), 7)]).unwrap();
        assert_eq!(x, BigInt::from(23));
        assert_eq!(m, BigInt::from(105));
        assert_eq!(
            crt_combine(&[(BigInt::from(1), 5), (BigInt::from(2), 5)]),
            Err(HoloError::DuplicatePrime(5))
        );
    }

    #[test]
    fn reconstruct_fraction() {
        let ps = primes_below_2_31(3);
        let target = ratio(-22, 7);
        let res: Vec<_> = ps
            .iter()
            .map(|&p| (BigInt::from(crate::arith::rational::rational_mod(&target, p).unwrap()), p))
            .collect();
        let (x, m) = crt_combine(&res).unwrap();
        assert_eq!(rational_reconstruct(&x, &m).unwrap(), target);
    }

    #[test]
    fn modpoly_interpolation_and_reconstruction() {
        let p = 1_000_003;
        // (x + 2) / (x^2 + 1)
        let num = ModPoly::new(p, vec![2, 1]);
        let den = ModPoly::new(p, vec![1, 0, 1]);
        let xs: Vec<u64> = (1..=8).collect();
        let ys: Vec<u64> =
            xs.iter().map(|&x| mul_mod(num.eval(x), inv_mod(den.eval(x), p), p)).collect();
        let f = ModPoly::interpolate(p, &xs, &ys);
        let mut m = ModPoly::one(p);
        for &x in &xs {
            m = m.mul(&ModPoly::new(p, vec![p - x, 1]));
        }
        let (n2, d2) = f.rational_reconstruct(&m, 3).unwrap();
        assert_eq!(n2.mul(&den), d2.mul(&num));
    }
}
