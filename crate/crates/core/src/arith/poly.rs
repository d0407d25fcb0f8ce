//! Dense univariate polynomials over the rationals.

use super::rational::{common_denominator, Rational};
use super::zpoly::{owned_ops, ZPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

/// `coeffs[i]` is the coefficient of `x^i`; never has trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    /// `x + a`.
    pub fn linear(a: Rational) -> Self {
        Poly::new(vec![a, Rational::one()])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        Poly::new(z.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> Rational {
        self.eval(&Rational::from_integer(BigInt::from(x)))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `p(x + k)`.
    pub fn shift(&self, k: &Rational) -> Poly {
        if k.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * k;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    pub fn shift_int(&self, k: i64) -> Poly {
        self.shift(&Rational::from_integer(BigInt::from(k)))
    }

    /// `p(s*x)`.
    pub fn scale_var(&self, s: &Rational) -> Poly {
        let mut pw = Rational::one();
        let mut c = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            c.push(v * &pw);
            pw *= s;
        }
        Poly::new(c)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Writes `self = c * z` with `z` integer, primitive, positive leading coefficient.
    pub fn to_zpoly(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::one(), ZPoly::zero());
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let z = ZPoly::new(ints);
        let mut g = z.content();
        if z.lc().is_negative() {
            g = -g;
        }
        (Rational::new(g.clone(), den), z.div_scalar(&g))
    }

    /// Integer primitive representative with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        Poly::from_zpoly(&self.to_zpoly().1)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let g = self.to_zpoly().1.gcd(&o.to_zpoly().1);
        Poly::from_zpoly(&g).monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o);
        (&self.divrem(&g).0 * o).monic()
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Human readable form such as `3*n^2 - 4*n + 1/2`.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut c = long.coeffs.clone();
        for (i, v) in short.coeffs.iter().enumerate() {
            c[i] += v;
        }
        Poly::new(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut c = self.coeffs.clone();
        if c.len() < o.coeffs.len() {
            c.resize(o.coeffs.len(), Rational::zero());
        }
        for (i, v) in o.coeffs.iter().enumerate() {
            c[i] -= v;
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

owned_ops!(Poly);

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        super::rational::serde_rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::new(super::rational::serde_rational_vec::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    #[test]
    fn arithmetic() {
        let a = Poly::from_i64s(&[1, 1]);
        let b = Poly::from_i64s(&[-1, 1]);
        assert_eq!(&a * &b, Poly::from_i64s(&[-1, 0, 1]));
        let (q, r) = Poly::from_i64s(&[1, 0, 1]).divrem(&a);
        assert_eq!(q, Poly::from_i64s(&[-1, 1]));
        assert_eq!(r, Poly::from_i64s(&[2]));
        assert_eq!(a.shift(&rat(2)), Poly::from_i64s(&[3, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64s(&[-2, -4]).display_var("n"), "-4*n - 2");
        assert_eq!(Poly::from_i64s(&[2, 1]).display_var("n"), "n + 2");
        assert_eq!(Poly::new(vec![ratio(1, 2), rat(0), rat(3)]).display_var("x"), "3*x^2 + 1/2");
    }

    #[test]
    fn primitive_parts() {
        let p = Poly::new(vec![ratio(-1, 2), ratio(-3, 4)]);
        let (c, z) = p.to_zpoly();
        assert_eq!(z, ZPoly::from_i64s(&[2, 3]));
        assert_eq!(c, ratio(-1, 4));
    }

    #[test]
    fn serde_roundtrip() {
        let p = Poly::new(vec![ratio(1, 3), rat(-2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/3","-2"]"#);
        assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), p);
    }
}
