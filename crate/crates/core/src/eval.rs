//! Unrolling recurrences, the N-th term by binary splitting, and series of named functions.

use crate::arith::rational::{common_denominator, Rational};
use crate::arith::{Poly, ZPoly};
use crate::convert::induced_recurrence;
use crate::error::{HoloError, Result};
use crate::relation::{DiffEquation, Recurrence};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Integer coefficient polynomials and the scale applied to them.
fn integer_coeffs(c: &[Poly]) -> (Vec<ZPoly>, Rational) {
    let l = c.iter().fold(BigInt::one(), |acc, p| acc.lcm(&common_denominator(p.coeffs())));
    let lr = Rational::from_integer(l);
    let z = c
        .iter()
        .map(|p| ZPoly::new(p.coeffs().iter().map(|v| (v * &lr).to_integer()).collect()))
        .collect();
    (z, lr)
}

/// Unrolls `sum_i c_i(k) u(k+i) = rhs(k)` from `initial` up to `n` terms.
/// The caller guarantees the leading coefficient does not vanish where used.
pub(crate) fn unroll_core(
    coeffs: &[Poly],
    initial: &[Rational],
    n: usize,
    rhs: impl Fn(usize) -> Rational,
) -> Vec<Rational> {
    if initial.len() >= n {
        return initial[..n].to_vec();
    }
    let r = coeffs.len() - 1;
    let (z, scale) = integer_coeffs(coeffs);
    let mut u = initial.to_vec();
    u.reserve(n - u.len());
    for idx in initial.len()..n {
        let k = idx - r;
        let kb = BigInt::from(k);
        let mut acc = rhs(k) * &scale;
        for i in 0..r {
            let c = z[i].eval(&kb);
            if !c.is_zero() && !u[k + i].is_zero() {
                acc -= &u[k + i] * Rational::from_integer(c);
            }
        }
        let lead = z[r].eval(&kb);
        u.push(acc / Rational::from_integer(lead));
    }
    u
}

/// First `n` terms of the sequence defined by the recurrence.
pub fn unroll(rec: &Recurrence, n: usize) -> Result<Vec<Rational>> {
    let missing = rec.missing_indices(n);
    if !missing.is_empty() {
        return Err(HoloError::MissingInitialTerms(missing));
    }
    let g = rec.inhomogeneous.clone();
    Ok(unroll_core(&rec.coefficients, &rec.initial, n, |k| match &g {
        Some(g) => g.eval_i64(k as i64),
        None => Rational::zero(),
    }))
}

/// First `n` Taylor coefficients of the solution of the ODE.
pub fn series_from_diffeq(deq: &DiffEquation, n: usize) -> Result<Vec<Rational>> {
    let (c, tmin) = induced_recurrence(&deq.coefficients);
    if c.is_empty() {
        return Err(HoloError::InvalidParameter("zero operator".into()));
    }
    let shadow = Recurrence::new(c.clone(), deq.initial.clone());
    let missing = shadow.missing_indices(n);
    if !missing.is_empty() {
        return Err(HoloError::MissingInitialTerms(missing));
    }
    let g = deq.inhomogeneous.clone().unwrap_or_else(Poly::zero);
    let out = unroll_core(&c, &deq.initial, n, |k| {
        let m = k as i64 - tmin;
        if m < 0 {
            Rational::zero()
        } else {
            g.coeff(m as usize)
        }
    });
    Ok(out)
}

/// Product `A(hi-1) ... A(lo)` of integer companion matrices with the matching denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitProduct {
    pub lo: usize,
    pub hi: usize,
    pub matrix: Vec<Vec<BigInt>>,
    pub denominator: BigInt,
}

impl SplitProduct {
    fn identity(r: usize, lo: usize) -> Self {
        let mut m = vec![vec![BigInt::zero(); r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        SplitProduct { lo, hi: lo, matrix: m, denominator: BigInt::one() }
    }

    /// `later ∘ self`; the intervals must be adjacent.
    pub fn then(&self, later: &SplitProduct) -> SplitProduct {
        assert_eq!(self.hi, later.lo, "non-adjacent intervals");
        let r = self.matrix.len();
        let mut m = vec![vec![BigInt::zero(); r]; r];
        for i in 0..r {
            for k in 0..r {
                let a = &later.matrix[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..r {
                    m[i][j] += a * &self.matrix[k][j];
                }
            }
        }
        SplitProduct { lo: self.lo, hi: later.hi, matrix: m, denominator: &self.denominator * &later.denominator }
    }
}

fn leaf(z: &[ZPoly], lo: usize, hi: usize) -> SplitProduct {
    let r = z.len() - 1;
    let mut acc = SplitProduct::identity(r, lo);
    for k in lo..hi {
        let kb = BigInt::from(k);
        let lead = z[r].eval(&kb);
        let cs: Vec<BigInt> = (0..r).map(|i| -z[i].eval(&kb)).collect();
        let m = &acc.matrix;
        let mut next = Vec::with_capacity(r);
        for row in m.iter().skip(1) {
            next.push(row.iter().map(|v| v * &lead).collect::<Vec<_>>());
        }
        let mut last = vec![BigInt::zero(); r];
        for (i, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, v) in m[i].iter().enumerate() {
                last[j] += c * v;
            }
        }
        next.push(last);
        acc.matrix = next;
        acc.denominator *= lead;
    }
    acc.hi = hi;
    acc
}

/// Companion product over `lo..hi` by binary splitting.
pub fn split_product(z: &[ZPoly], lo: usize, hi: usize, threshold: usize) -> SplitProduct {
    if hi - lo <= threshold.max(1) {
        return leaf(z, lo, hi);
    }
    let mid = lo + (hi - lo) / 2;
    let (a, b) = rayon::join(|| split_product(z, lo, mid, threshold), || split_product(z, mid, hi, threshold));
    a.then(&b)
}

pub const SPLIT_THRESHOLD: usize = 32;

/// `u(n)` for a homogeneous recurrence, without computing the intermediate terms.
pub fn nth_term(rec: &Recurrence, n: usize) -> Result<Rational> {
    nth_term_with(rec, n, SPLIT_THRESHOLD)
}

pub fn nth_term_with(rec: &Recurrence, n: usize, threshold: usize) -> Result<Rational> {
    if !rec.is_homogeneous() {
        return Err(HoloError::InvalidParameter("nth_term needs a homogeneous recurrence".into()));
    }
    let missing = rec.missing_indices(n + 1);
    if !missing.is_empty() {
        return Err(HoloError::MissingInitialTerms(missing));
    }
    let have = rec.initial.len();
    if n < have {
        return Ok(rec.initial[n].clone());
    }
    let r = rec.order();
    if r == 0 {
        return Ok(Rational::zero());
    }
    let (z, _) = integer_coeffs(&rec.coefficients);
    let k0 = have - r;
    let steps_to = n + 1 - r;
    let start = &rec.initial[k0..have];
    let d0 = common_denominator(start);
    let d0r = Rational::from_integer(d0.clone());
    let v: Vec<BigInt> = start.iter().map(|x| (x * &d0r).to_integer()).collect();
    let prod = split_product(&z, k0, steps_to, threshold);
    let mut num = BigInt::zero();
    for (j, x) in v.iter().enumerate() {
        num += &prod.matrix[r - 1][j] * x;
    }
    let den = prod.denominator * d0;
    let (q, rem) = num.div_rem(&den);
    if rem.is_zero() {
        Ok(Rational::from_integer(q))
    } else {
        Ok(Rational::new(num, den))
    }
}

/// Named hypergeometric-type series with their defining first-order recurrence and ODE.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedSeries {
    /// Gauss `2F1(a, b; c; x)`.
    TwoF1 { a: Rational, b: Rational, c: Rational },
    /// `(1 + x)^c`.
    Pow1p { c: Rational },
    /// `(1 + s x)^c`.
    PowLinear { s: Rational, c: Rational },
    Exp,
}

impl NamedSeries {
    fn check(&self) -> Result<()> {
        if let NamedSeries::TwoF1 { c, .. } = self {
            if c.is_integer() && *c <= Rational::zero() {
                return Err(HoloError::InvalidParameter(format!("2F1 lower parameter {c} is a nonpositive integer")));
            }
        }
        if let NamedSeries::PowLinear { s, .. } = self {
            if s.is_zero() {
                return Err(HoloError::InvalidParameter("zero slope".into()));
            }
        }
        Ok(())
    }

    pub fn recurrence(&self) -> Result<Recurrence> {
        self.check()?;
        let one = Rational::one();
        let (c0, c1) = match self {
            NamedSeries::TwoF1 { a, b, c } => (
                -(&Poly::linear(a.clone()) * &Poly::linear(b.clone())),
                &Poly::linear(c.clone()) * &Poly::linear(one.clone()),
            ),
            NamedSeries::Pow1p { c } => (Poly::new(vec![-c.clone(), one.clone()]), Poly::linear(one.clone())),
            NamedSeries::PowLinear { s, c } => {
                (Poly::new(vec![-(s * c), s.clone()]), Poly::linear(one.clone()))
            }
            NamedSeries::Exp => (Poly::constant(-one.clone()), Poly::linear(one.clone())),
        };
        Ok(Recurrence::new(vec![c0, c1], vec![one]))
    }

    pub fn diffeq(&self) -> Result<DiffEquation> {
        self.check()?;
        let one = Rational::one();
        let c = match self {
            NamedSeries::TwoF1 { a, b, c } => vec![
                Poly::constant(-(a * b)),
                Poly::new(vec![c.clone(), -(a + b + &one)]),
                Poly::new(vec![Rational::zero(), one.clone(), -one.clone()]),
            ],
            NamedSeries::Pow1p { c } => vec![Poly::constant(-c.clone()), Poly::new(vec![one.clone(), one.clone()])],
            NamedSeries::PowLinear { s, c } => {
                vec![Poly::constant(-(c * s)), Poly::new(vec![one.clone(), s.clone()])]
            }
            NamedSeries::Exp => vec![Poly::constant(-one.clone()), Poly::one()],
        };
        Ok(DiffEquation::new(c, vec![one]))
    }

    pub fn series(&self, n: usize) -> Result<Vec<Rational>> {
        unroll(&self.recurrence()?, n)
    }
}

/// First `n` coefficients and the defining recurrence.
pub fn named_series(kind: &NamedSeries, n: usize) -> Result<(Vec<Rational>, Recurrence)> {
    let rec = kind.recurrence()?;
    Ok((unroll(&rec, n)?, rec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    fn fib() -> Recurrence {
        Recurrence::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[-1]), Poly::one()], vec![rat(0), rat(1)])
    }

    #[test]
    fn fibonacci_unroll_and_split() {
        let u = unroll(&fib(), 30).unwrap();
        assert_eq!(u[29], rat(514229));
        for n in [0, 1, 2, 29, 100] {
            let a = nth_term_with(&fib(), n, 3).unwrap();
            let b = unroll(&fib(), n + 1).unwrap()[n].clone();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn missing_terms_reported() {
        // n u(n+1) = u(n): index 1 is free
        let r = Recurrence::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[0, 1])], vec![rat(1)]);
        assert_eq!(unroll(&r, 5), Err(HoloError::MissingInitialTerms(vec![1])));
        let r = Recurrence::new(r.coefficients.clone(), vec![rat(1), rat(2)]);
        assert_eq!(unroll(&r, 4).unwrap(), vec![rat(1), rat(2), rat(2), ratio(2, 2)]);
    }

    #[test]
    fn named() {
        let (e, _) = named_series(&NamedSeries::Exp, 5).unwrap();
        assert_eq!(e[4], ratio(1, 24));
        let p = NamedSeries::Pow1p { c: rat(3) }.series(6).unwrap();
        assert_eq!(p, vec![rat(1), rat(3), rat(3), rat(1), rat(0), rat(0)]);
        let bad = NamedSeries::TwoF1 { a: rat(1), b: rat(1), c: rat(-2) };
        assert!(matches!(bad.recurrence(), Err(HoloError::InvalidParameter(_))));
        let f = NamedSeries::TwoF1 { a: ratio(1, 2), b: ratio(1, 2), c: rat(1) };
        let via_ode = series_from_diffeq(&f.diffeq().unwrap(), 10).unwrap();
        assert_eq!(via_ode, f.series(10).unwrap());
    }
}
