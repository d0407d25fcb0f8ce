//! Rational functions in one variable.

use super::poly::Poly;
use super::rational::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `num/den` with `gcd(num, den) = 1` and monic `den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFun {
    pub num: Poly,
    pub den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.is_constant() {
            let c = den.lc().recip();
            return RatFun { num: num.scale(&c), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let c = d.lc().recip();
        n = n.scale(&c);
        d = d.scale(&c);
        RatFun { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inv(&self) -> RatFun {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn derivative(&self) -> RatFun {
        if self.is_polynomial() {
            return RatFun::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den)
    }

    /// `f(x + k)`.
    pub fn shift(&self, k: &Rational) -> RatFun {
        if self.is_polynomial() {
            return RatFun::from_poly(self.num.shift(k));
        }
        RatFun::new(self.num.shift(k), self.den.shift(k))
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_polynomial() {
            self.num.display_var(var)
        } else {
            format!("({})/({})", self.num.display_var(var), self.den.display_var(var))
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_polynomial() && o.is_polynomial() {
            return RatFun::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        RatFun::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.is_polynomial() && o.is_polynomial() {
            return RatFun::from_poly(&self.num * &o.num);
        }
        RatFun::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFun::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, o: RatFun) -> RatFun {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation() {
        let f = RatFun::new(Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[2, 2]));
        assert_eq!(f.num, Poly::new(vec![Rational::new((-1).into(), 2.into()), Rational::new(1.into(), 2.into())]));
        assert_eq!(f.den, Poly::one());
        let g = &f / &RatFun::from_poly(Poly::from_i64s(&[0, 1]));
        assert!(!g.is_polynomial());
        assert_eq!(&g * &RatFun::from_poly(Poly::from_i64s(&[0, 1])), f);
    }
}
