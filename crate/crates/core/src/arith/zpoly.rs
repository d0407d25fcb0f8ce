//! Dense univariate polynomials over the integers.

use super::modular::{add_mod, mul_mod, ModPoly};
use super::rational::bigint_mod;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn x() -> Self {
        ZPoly::from_i64s(&[0, 1])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        ZPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &BigInt) -> ZPoly {
        if s.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Divides every coefficient by `s`; the caller guarantees exactness.
    pub fn div_scalar(&self, s: &BigInt) -> ZPoly {
        if s.is_one() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|c| c / s).collect() }
    }

    pub fn mul_xk(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: c }
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `p(x + k)`.
    pub fn shift(&self, k: i64) -> ZPoly {
        if k == 0 || self.coeffs.len() < 2 {
            return self.clone();
        }
        let kk = BigInt::from(k);
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * &kk;
                c[j] += t;
            }
        }
        ZPoly::new(c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn to_mod(&self, p: u64) -> ModPoly {
        ModPoly::new(p, self.coeffs.iter().map(|c| bigint_mod(c, p)).collect())
    }

    pub fn eval_mod(&self, p: u64, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, c| add_mod(mul_mod(acc, x, p), bigint_mod(c, p), p))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    /// `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero());
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().clone();
            for v in r.iter_mut() {
                *v *= &lc;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * b;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        ZPoly::new(r)
    }

    /// Exact quotient over the integers, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        if self.deg() == 0 || o.deg() == 0 {
            return ZPoly::one();
        }
        if self.coprime_mod_check(o) {
            return ZPoly::one();
        }
        let (mut a, mut b) = if self.deg() >= o.deg() {
            (self.primitive(), o.primitive())
        } else {
            (o.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Certifies coprimality from a single prime image when possible.
    fn coprime_mod_check(&self, o: &ZPoly) -> bool {
        for p in [2147483647u64, 2147483629, 2147483587] {
            if bigint_mod(&self.lc(), p) == 0 || bigint_mod(&o.lc(), p) == 0 {
                continue;
            }
            return self.to_mod(p).gcd(&o.to_mod(p)).degree() == Some(0);
        }
        false
    }

    /// Monic-free squarefree part.
    pub fn squarefree_part(&self) -> ZPoly {
        let g = self.gcd(&self.derivative());
        if g.deg() <= 0 {
            return self.primitive();
        }
        self.primitive().exact_div_rational(&g)
    }

    /// Quotient known to be exact over Q; result made primitive.
    pub fn exact_div_rational(&self, d: &ZPoly) -> ZPoly {
        let lc = d.lc().abs();
        let e = (self.deg() - d.deg() + 1).max(0) as u32;
        let scaled = self.scale(&num_traits::pow(lc, e as usize));
        scaled.exact_div(d).expect("exact division").primitive()
    }

    pub fn pow(&self, e: usize) -> ZPoly {
        let mut r = ZPoly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `p(x)` written with the given variable name.
    pub fn display_var(&self, var: &str) -> String {
        super::poly::Poly::from_zpoly(self).display_var(var)
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut c = long.coeffs.clone();
        for (i, v) in short.coeffs.iter().enumerate() {
            c[i] += v;
        }
        ZPoly::new(c)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let mut c = self.coeffs.clone();
        if c.len() < o.coeffs.len() {
            c.resize(o.coeffs.len(), BigInt::zero());
        }
        for (i, v) in o.coeffs.iter().enumerate() {
            c[i] -= v;
        }
        ZPoly::new(c)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return o.scale(&self.coeffs[0]);
        }
        if o.coeffs.len() == 1 {
            return self.scale(&o.coeffs[0]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(ZPoly);
pub(crate) use owned_ops;
