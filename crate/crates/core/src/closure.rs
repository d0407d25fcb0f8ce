//! Closure properties: sums and products of sequences and series.
//!
//! Each input is turned into a finite dimensional module over Q(n) or Q(x)
//! on which the shift (resp. derivation) acts by a matrix. Iterating the
//! action on a start vector, with fraction free bookkeeping, and stopping at
//! the first Q(x)-linear dependency gives the annihilating operator.

use crate::arith::modular::PrimeSet;
use crate::arith::rational::Rational;
use crate::arith::{Poly, ZPoly};
use crate::convert::{finish_diffeq, finish_recurrence};
use crate::error::{HoloError, Result};
use crate::eval::{series_from_diffeq, unroll};
use crate::ore::OreKind;
use crate::arith::modular::ModPoly;
use crate::polykernel::{nullvector_with, ModImage};
use crate::relation::{DiffEquation, Recurrence};
use crate::series;
use num_traits::{One, Zero};

/// Q(x)-vector space of dimension `dim` with the generator acting as
/// `v -> num * v' / den` (shift: `num * sigma(v) / den`; diff: `v' + num * v / den`).
#[derive(Debug, Clone)]
pub struct OreModule {
    pub kind: OreKind,
    pub dim: usize,
    pub num: Vec<Vec<ZPoly>>,
    pub den: ZPoly,
}

impl OreModule {
    /// Module spanned by `f, ∂f, ..., ∂^(s-1) f` for `sum p_i ∂^i f = 0`.
    pub fn companion(kind: OreKind, p: &[ZPoly]) -> Self {
        let s = p.len() - 1;
        let ps = p[s].clone();
        let mut num = vec![vec![ZPoly::zero(); s]; s];
        for i in 0..s {
            if i + 1 < s {
                num[i + 1][i] = ps.clone();
            }
            num[i][s - 1] = &num[i][s - 1] - &p[i];
        }
        OreModule { kind, dim: s, num, den: ps }
    }

    pub fn direct_sum(&self, o: &OreModule) -> Self {
        let g = self.den.gcd(&o.den);
        let a = o.den.exact_div(&g).expect("gcd divides");
        let b = self.den.exact_div(&g).expect("gcd divides");
        let den = &self.den * &a;
        let d = self.dim + o.dim;
        let mut num = vec![vec![ZPoly::zero(); d]; d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                num[i][j] = &self.num[i][j] * &a;
            }
        }
        for i in 0..o.dim {
            for j in 0..o.dim {
                num[self.dim + i][self.dim + j] = &o.num[i][j] * &b;
            }
        }
        OreModule { kind: self.kind, dim: d, num, den }
    }

    pub fn tensor(&self, o: &OreModule) -> Self {
        let (d1, d2) = (self.dim, o.dim);
        let d = d1 * d2;
        let mut num = vec![vec![ZPoly::zero(); d]; d];
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        let e = match self.kind {
                            OreKind::Shift => &self.num[i1][j1] * &o.num[i2][j2],
                            OreKind::Diff => {
                                let mut e = ZPoly::zero();
                                if i2 == j2 {
                                    e = &e + &(&self.num[i1][j1] * &o.den);
                                }
                                if i1 == j1 {
                                    e = &e + &(&o.num[i2][j2] * &self.den);
                                }
                                e
                            }
                        };
                        num[i1 * d2 + i2][j1 * d2 + j2] = e;
                    }
                }
            }
        }
        OreModule { kind: self.kind, dim: d, num, den: &self.den * &o.den }
    }

    /// Denominator introduced by step `k`.
    fn factor(&self, k: usize) -> ZPoly {
        match self.kind {
            OreKind::Shift => self.den.shift(k as i64),
            OreKind::Diff => self.den.clone(),
        }
    }

    pub fn unit(&self, i: usize) -> Vec<ZPoly> {
        let mut v = vec![ZPoly::zero(); self.dim];
        v[i] = ZPoly::one();
        v
    }
}

/// Outcome of a chain search.
#[derive(Debug, Clone)]
pub struct ChainRelation {
    /// Operator coefficients `a_0 .. a_K`.
    pub coefficients: Vec<ZPoly>,
    /// Coefficient of the constant vector, when one was included.
    pub constant: Option<ZPoly>,
    /// Roots of these polynomials are where the chain identities may fail.
    pub denominators: Vec<ZPoly>,
    /// False when the identity was checked modulo fewer primes than its height bound needs.
    pub certified: bool,
}

/// Verification primes beyond which a relation is accepted uncertified.
pub const VERIFY_PRIME_CAP: usize = 96;

struct ModModule {
    p: u64,
    kind: OreKind,
    num: Vec<Vec<ModPoly>>,
    den: ModPoly,
    dden: ModPoly,
}

impl ModModule {
    fn new(m: &OreModule, p: u64) -> Option<Self> {
        let den = m.den.to_mod(p);
        if den.degree() != m.den.degree() {
            return None;
        }
        let num = m.num.iter().map(|r| r.iter().map(|e| e.to_mod(p)).collect()).collect();
        Some(ModModule { p, kind: m.kind, num, dden: den.derivative(), den })
    }

    fn step(&self, n: &[ModPoly], k: usize) -> Vec<ModPoly> {
        let p = self.p;
        let mat_vec = |v: &[ModPoly]| -> Vec<ModPoly> {
            self.num
                .iter()
                .map(|row| row.iter().zip(v).fold(ModPoly::zero(p), |acc, (a, b)| acc.add(&a.mul(b))))
                .collect()
        };
        match self.kind {
            OreKind::Shift => {
                let s: Vec<ModPoly> = n.iter().map(|q| q.shift_by(1)).collect();
                mat_vec(&s)
            }
            OreKind::Diff => {
                let dm = self.dden.scale(k as u64 % p);
                n.iter().zip(mat_vec(n)).map(|(q, mv)| self.den.mul(&q.derivative()).sub(&dm.mul(q)).add(&mv)).collect()
            }
        }
    }

    fn factor(&self, k: usize) -> ModPoly {
        match self.kind {
            OreKind::Shift => self.den.shift_by(k as i64),
            OreKind::Diff => self.den.clone(),
        }
    }
}

/// The chain `start, ∂start, ...` modulo one prime.
struct ModChain {
    module: ModModule,
    constant: Option<Vec<ModPoly>>,
    vectors: Vec<Vec<ModPoly>>,
    factors: Vec<ModPoly>,
}

impl ModChain {
    fn new(m: &OreModule, start: &[ZPoly], constant: Option<&Vec<ZPoly>>, p: u64) -> Option<Self> {
        let module = ModModule::new(m, p)?;
        let red = |v: &[ZPoly]| v.iter().map(|e| e.to_mod(p)).collect::<Vec<_>>();
        Some(ModChain { constant: constant.map(|c| red(c)), vectors: vec![red(start)], factors: vec![], module })
    }

    fn extend_to(&mut self, k: usize) {
        while self.vectors.len() <= k {
            let j = self.vectors.len() - 1;
            let next = self.module.step(&self.vectors[j], j);
            self.factors.push(self.module.factor(j));
            self.vectors.push(next);
        }
    }

    /// Columns `[constant,] v_skip, .., v_k` with their nested scalings.
    fn image(&mut self, k: usize, skip: usize) -> ModImage {
        self.extend_to(k);
        let mut columns = Vec::new();
        let mut levels = Vec::new();
        if let Some(c) = &self.constant {
            columns.push(c.clone());
            levels.push(0);
        }
        for j in skip..=k {
            columns.push(self.vectors[j].clone());
            levels.push(j);
        }
        ModImage { p: self.module.p, nrows: self.module.num.len(), columns, levels, factors: self.factors[..k].to_vec() }
    }
}

/// `log2` of a bound on the 1-norm.
fn norm_bits(f: &ZPoly) -> f64 {
    let b = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    b as f64 + (f.coeffs().len().max(1) as f64).log2()
}

fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// Bits of a coefficient bound for `sum_k v_k * scale_k * column_k`, computed from norms alone.
fn relation_height(
    module: &OreModule,
    start: &[ZPoly],
    constant: Option<&Vec<ZPoly>>,
    skip: usize,
    v: &[ZPoly],
) -> f64 {
    let k_max = v.len() - usize::from(constant.is_some()) + skip - 1;
    let row = module
        .num
        .iter()
        .map(|r| r.iter().map(norm_bits).fold(f64::NEG_INFINITY, log2_add))
        .fold(f64::NEG_INFINITY, f64::max);
    let ddeg = module.num.iter().flatten().map(|e| e.deg()).chain([module.den.deg()]).max().unwrap_or(0).max(0) as f64;
    let den = norm_bits(&module.den);
    let dden = norm_bits(&module.den.derivative());
    let mut chain = vec![start.iter().map(norm_bits).fold(f64::NEG_INFINITY, f64::max)];
    let mut deg = start.iter().map(|e| e.deg()).max().unwrap_or(0).max(0) as f64;
    let mut factors = Vec::new();
    for k in 0..k_max {
        let last = chain[k];
        let grow = match module.kind {
            OreKind::Shift => deg + row,
            OreKind::Diff => {
                let d = log2_add(den + deg.max(1.0).log2(), dden + (k.max(1) as f64).log2());
                log2_add(d, row)
            }
        };
        chain.push(last + grow);
        deg += ddeg;
        factors.push(match module.kind {
            OreKind::Shift => norm_bits(&module.den) + module.den.deg().max(0) as f64 * (k as f64 + 1.0).log2().max(1.0),
            OreKind::Diff => den,
        });
    }
    let suffix = |lvl: usize| factors[lvl..].iter().sum::<f64>();
    let mut total = f64::NEG_INFINITY;
    let mut cols: Vec<(f64, usize)> = Vec::new();
    if let Some(c) = constant {
        cols.push((c.iter().map(norm_bits).fold(f64::NEG_INFINITY, f64::max), 0));
    }
    for j in skip..=k_max {
        cols.push((chain[j], j));
    }
    for ((col, lvl), c) in cols.into_iter().zip(v) {
        if !c.is_zero() {
            total = log2_add(total, norm_bits(c) + col + suffix(lvl));
        }
    }
    total
}

/// First dependency among `c, v, ∂v, ∂^2 v, ...` where `c` is the optional constant vector.
///
/// The chain is built modulo primes only. The lifted relation is checked as a
/// polynomial identity modulo enough primes to exceed its height bound, or
/// modulo `VERIFY_PRIME_CAP` primes when that bound is out of reach.
pub fn chain_relation(
    module: &OreModule,
    start: Vec<ZPoly>,
    constant: Option<Vec<ZPoly>>,
    skip: usize,
    primes: &mut PrimeSet,
) -> Result<ChainRelation> {
    let extra = usize::from(constant.is_some());
    let mut probe = primes
        .primes
        .iter()
        .find_map(|&p| ModChain::new(module, &start, constant.as_ref(), p))
        .ok_or(HoloError::UnluckyPrimeExhaustion)?;
    for k in skip.. {
        if k > module.dim + skip + 1 {
            return Err(HoloError::Internal("no dependency within the module dimension".into()));
        }
        let x = 1_000_003 + 7_919 * k as u64;
        let img = probe.image(k, skip);
        if img.eval(x % img.p).rank() == img.columns.len() {
            continue;
        }
        let image = |p: u64| ModChain::new(module, &start, constant.as_ref(), p).map(|mut c| c.image(k, skip));
        let mut certified = true;
        let verify = |v: &[ZPoly]| {
            let bits = relation_height(module, &start, constant.as_ref(), skip, v);
            let need = (bits / 30.0).ceil() as usize + 2;
            let count = need.min(VERIFY_PRIME_CAP);
            let mut checked = 0;
            for p in crate::arith::modular::primes_below_2_31(count + 64) {
                if checked == count {
                    break;
                }
                let Some(im) = image(p) else { continue };
                let vm: Vec<ModPoly> = v.iter().map(|e| e.to_mod(p)).collect();
                if !im.annihilated_by(&vm) {
                    return false;
                }
                checked += 1;
            }
            certified = checked >= need;
            checked == count
        };
        if let Some(v) = nullvector_with(image, verify, primes)? {
            let (constant, ops) = if extra == 1 { (Some(v[0].clone()), v[1..].to_vec()) } else { (None, v) };
            let mut coefficients = vec![ZPoly::zero(); skip];
            coefficients.extend(ops);
            let denominators = (0..k).map(|j| module.factor(j)).collect();
            return Ok(ChainRelation { coefficients, constant, denominators, certified });
        }
    }
    unreachable!()
}

fn module_of_rec(r: &Recurrence) -> (OreModule, Recurrence) {
    let r = lift_order_zero(r);
    let z = r.operator().to_zpolys();
    (OreModule::companion(OreKind::Shift, &z), r)
}

/// `c(n) u(n) = 0` rewritten as `c(n+1) u(n+1) = 0`, which has a companion module.
fn lift_order_zero(r: &Recurrence) -> Recurrence {
    if r.order() > 0 {
        return r.clone();
    }
    let c = r.coefficients[0].shift_int(1);
    let mut out = Recurrence::new(vec![Poly::zero(), c], r.initial.clone());
    out.variable = r.variable.clone();
    if out.initial.is_empty() {
        out.initial.push(Rational::zero());
    }
    out
}

fn is_zero_rec(r: &Recurrence) -> bool {
    r.order() == 0 && r.initial.iter().all(|v| v.is_zero())
}

fn homogeneous_rec(r: &Recurrence) -> Result<Recurrence> {
    if r.is_homogeneous() {
        Ok(r.clone())
    } else {
        crate::convert::homogenize_rec(r)
    }
}

fn homogeneous_ode(d: &DiffEquation) -> Result<DiffEquation> {
    if d.is_homogeneous() {
        Ok(d.clone())
    } else {
        crate::convert::homogenize_diffeq(d)
    }
}

fn validity_start(r: &Recurrence) -> usize {
    r.initial.len().saturating_sub(r.order()).max(r.required_initial().saturating_sub(r.order()))
}

fn max_root_hint(polys: &[ZPoly]) -> usize {
    let mut h = 0;
    for p in polys {
        for j in crate::arith::roots::nonneg_integer_roots(&Poly::from_zpoly(p)) {
            h = h.max(j + 1);
        }
    }
    h
}

fn rec_binary(
    r1: &Recurrence,
    r2: &Recurrence,
    combine: impl Fn(&OreModule, &OreModule) -> OreModule,
    start: impl Fn(&OreModule) -> Vec<ZPoly>,
    data: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> Result<Recurrence> {
    let (m1, r1) = module_of_rec(r1);
    let (m2, r2) = module_of_rec(r2);
    let m = combine(&m1, &m2);
    let mut primes = PrimeSet::default();
    let rel = chain_relation(&m, start(&m), None, 0, &mut primes)?;
    let mut dens = rel.denominators.clone();
    dens.push(m1.den.clone());
    dens.push(m2.den.clone());
    let hint = validity_start(&r1).max(validity_start(&r2)).max(max_root_hint(&dens));
    let raw: Vec<Poly> = rel.coefficients.iter().map(Poly::from_zpoly).collect();
    let var = r1.variable.clone();
    finish_recurrence(&raw, &var, hint, |n| Ok(data(&unroll(&r1, n)?, &unroll(&r2, n)?)))
}

/// Recurrence for `u + v`.
pub fn rec_add(r1: &Recurrence, r2: &Recurrence) -> Result<Recurrence> {
    let (r1, r2) = (homogeneous_rec(r1)?, homogeneous_rec(r2)?);
    if is_zero_rec(&r1) {
        return Ok(r2);
    }
    if is_zero_rec(&r2) {
        return Ok(r1);
    }
    rec_binary(
        &r1,
        &r2,
        |a, b| a.direct_sum(b),
        |m| {
            let mut v = m.unit(0);
            let d1 = m.dim - lift_order_zero(&r2).order();
            v[d1] = ZPoly::one();
            v
        },
        series::add,
    )
}

/// Recurrence for the termwise product `u * v`.
pub fn rec_mul(r1: &Recurrence, r2: &Recurrence) -> Result<Recurrence> {
    let (r1, r2) = (homogeneous_rec(r1)?, homogeneous_rec(r2)?);
    if is_zero_rec(&r1) || is_zero_rec(&r2) {
        return Ok(Recurrence::zero_sequence());
    }
    rec_binary(&r1, &r2, |a, b| a.tensor(b), |m| m.unit(0), |a, b| a.iter().zip(b).map(|(x, y)| x * y).collect())
}

/// Recurrence for `w^n u(n)`.
pub fn geometric_scale(r: &Recurrence, w: &Rational) -> Result<Recurrence> {
    if w.is_zero() {
        return Err(HoloError::ZeroRatio);
    }
    let r = &homogeneous_rec(r)?;
    let mut pw = Rational::one();
    let inv = w.recip();
    let mut coeffs = Vec::new();
    for c in &r.coefficients {
        coeffs.push(c.scale(&pw));
        pw = &pw * &inv;
    }
    let mut pw = Rational::one();
    let mut init = Vec::new();
    for v in &r.initial {
        init.push(v * &pw);
        pw = &pw * w;
    }
    let mut out = Recurrence::new(coeffs, init);
    out.variable = r.variable.clone();
    let op = out.operator().canonical();
    out.coefficients = op.polys();
    Ok(out)
}

fn is_zero_ode(d: &DiffEquation) -> bool {
    d.order() == 0
}

fn ode_binary(
    d1: &DiffEquation,
    d2: &DiffEquation,
    combine: impl Fn(&OreModule, &OreModule) -> OreModule,
    start: impl Fn(&OreModule) -> Vec<ZPoly>,
    data: impl Fn(&[Rational], &[Rational], usize) -> Vec<Rational>,
) -> Result<DiffEquation> {
    let m1 = OreModule::companion(OreKind::Diff, &d1.operator().to_zpolys());
    let m2 = OreModule::companion(OreKind::Diff, &d2.operator().to_zpolys());
    let m = combine(&m1, &m2);
    let mut primes = PrimeSet::default();
    let rel = chain_relation(&m, start(&m), None, 0, &mut primes)?;
    let raw: Vec<Poly> = rel.coefficients.iter().map(Poly::from_zpoly).collect();
    let var = d1.variable.clone();
    finish_diffeq(&raw, &var, |n| Ok(data(&series_from_diffeq(d1, n)?, &series_from_diffeq(d2, n)?, n)))
}

/// ODE for `f + g`.
pub fn diffeq_add(d1: &DiffEquation, d2: &DiffEquation) -> Result<DiffEquation> {
    let (d1, d2) = (homogeneous_ode(d1)?, homogeneous_ode(d2)?);
    if is_zero_ode(&d1) {
        return Ok(d2);
    }
    if is_zero_ode(&d2) {
        return Ok(d1);
    }
    let s1 = d1.order();
    ode_binary(
        &d1,
        &d2,
        |a, b| a.direct_sum(b),
        |m| {
            let mut v = m.unit(0);
            v[s1] = ZPoly::one();
            v
        },
        |a, b, _| series::add(a, b),
    )
}

/// ODE for the Cauchy product `f * g`.
pub fn diffeq_mul(d1: &DiffEquation, d2: &DiffEquation) -> Result<DiffEquation> {
    let (d1, d2) = (homogeneous_ode(d1)?, homogeneous_ode(d2)?);
    if is_zero_ode(&d1) || is_zero_ode(&d2) {
        return Ok(DiffEquation::new(vec![Poly::one()], vec![]));
    }
    ode_binary(&d1, &d2, |a, b| a.tensor(b), |m| m.unit(0), series::mul)
}

/// ODE for `f^k`, by repeated multiplication.
pub fn diffeq_pow(d: &DiffEquation, k: usize) -> Result<DiffEquation> {
    if k == 0 {
        return Ok(DiffEquation::new(vec![Poly::zero(), Poly::one()], vec![Rational::one()]));
    }
    let mut acc = d.clone();
    for _ in 1..k {
        acc = diffeq_mul(&acc, d)?;
    }
    Ok(acc)
}

/// ODE for `f'`.
pub fn diffeq_derivative(d: &DiffEquation) -> Result<DiffEquation> {
    let d = homogeneous_ode(d)?;
    if d.order() == 0 {
        return Ok(d);
    }
    let m = OreModule::companion(OreKind::Diff, &d.operator().to_zpolys());
    let mut primes = PrimeSet::default();
    let rel = chain_relation(&m, m.unit(0), None, 1, &mut primes)?;
    let raw: Vec<Poly> = rel.coefficients[1..].iter().map(Poly::from_zpoly).collect();
    finish_diffeq(&raw, &d.variable, |n| Ok(series::derivative(&series_from_diffeq(&d, n + 1)?)))
}

/// ODE for `p(x) f(x)` with a polynomial multiplier.
pub fn diffeq_mul_poly(d: &DiffEquation, p: &Poly) -> Result<DiffEquation> {
    // p solves p y' - p' y = 0
    let pd = DiffEquation::new(vec![-&p.derivative(), p.clone()], series::from_poly(p, 1));
    let pd = DiffEquation { initial: series::from_poly(p, pd.required_initial()), ..pd };
    diffeq_mul(d, &pd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};
    use crate::ore::apply_operator;
    use crate::ore::OreOperator;
    use num_bigint::BigInt;

    fn fib() -> Recurrence {
        Recurrence::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[-1]), Poly::one()], vec![rat(0), rat(1)])
    }

    #[test]
    fn factorial_plus_harmonic() {
        let fact = Recurrence::new(vec![Poly::from_i64s(&[1, 1]), Poly::from_i64s(&[-1])], vec![rat(1)]);
        let inv = Recurrence::new(vec![Poly::from_i64s(&[-1, -1]), Poly::from_i64s(&[2, 1])], vec![rat(1)]);
        let s = rec_add(&fact, &inv).unwrap();
        assert_eq!(s.order(), 2);
        // (n+1)(n+3) u(n+2) - (n+2)(n^2+5n+5) u(n+1) + (n+1)(n+2)^2 u(n)
        let expect = OreOperator::from_polys(
            OreKind::Shift,
            "n",
            vec![
                &Poly::from_i64s(&[1, 1]) * &Poly::from_i64s(&[2, 1]).pow(2),
                -&(&Poly::from_i64s(&[2, 1]) * &Poly::from_i64s(&[5, 5, 1])),
                &Poly::from_i64s(&[1, 1]) * &Poly::from_i64s(&[3, 1]),
            ],
        );
        assert_eq!(s.coefficients, expect.canonical().polys());
        let data = unroll(&s, 30).unwrap();
        let mut f = Rational::one();
        for (n, v) in data.iter().enumerate() {
            assert_eq!(*v, &f + ratio(1, n as i64 + 1));
            f *= Rational::from_integer(BigInt::from(n + 1));
        }
    }

    #[test]
    fn fibonacci_square_and_scale() {
        let sq = rec_mul(&fib(), &fib()).unwrap();
        assert!(sq.order() <= 4);
        let f = unroll(&fib(), 40).unwrap();
        let f2: Vec<Rational> = f.iter().map(|v| v * v).collect();
        assert!(apply_operator(&sq.operator(), &f2).unwrap().iter().all(|v| v.is_zero()));
        assert_eq!(unroll(&sq, 40).unwrap(), f2);
        let g = geometric_scale(&fib(), &rat(2)).unwrap();
        let two = Recurrence::new(vec![Poly::from_i64s(&[-2]), Poly::one()], vec![rat(1)]);
        let via_mul = rec_mul(&fib(), &two).unwrap();
        assert_eq!(g.coefficients, via_mul.coefficients);
        assert_eq!(unroll(&g, 20).unwrap(), unroll(&via_mul, 20).unwrap());
    }

    #[test]
    fn series_closures() {
        let exp = DiffEquation::new(vec![Poly::from_i64s(&[-1]), Poly::one()], vec![rat(1)]);
        let geo = DiffEquation::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[1, -1])], vec![rat(1)]);
        let s = diffeq_add(&exp, &geo).unwrap();
        let want = series::add(&series_from_diffeq(&exp, 40).unwrap(), &series_from_diffeq(&geo, 40).unwrap());
        assert_eq!(series_from_diffeq(&s, 40).unwrap(), want);
        let sq = diffeq_mul(&geo, &geo).unwrap();
        assert_eq!(sq.order(), 1);
        let c = series_from_diffeq(&sq, 20).unwrap();
        assert!(c.iter().enumerate().all(|(n, v)| *v == rat(n as i64 + 1)));
        let d = diffeq_derivative(&exp).unwrap();
        assert_eq!(d.coefficients, exp.coefficients);
    }

    #[test]
    fn order_zero_short_circuit() {
        let z = Recurrence::zero_sequence();
        assert_eq!(rec_add(&fib(), &z).unwrap(), fib());
        assert_eq!(rec_mul(&fib(), &z).unwrap(), Recurrence::zero_sequence());
    }
}
