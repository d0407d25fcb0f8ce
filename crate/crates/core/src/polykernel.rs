//! One-dimensional kernels of polynomial matrices over Q(x).
//!
//! Each prime image is sampled at many points, the pointwise kernels are
//! interpolated back into rational functions, and the per-prime answers are
//! lifted by CRT. The final vector is always checked exactly.

use crate::arith::modular::{inv_mod, mul_mod, CrtVec, ModPoly, PrimeSet};
use crate::arith::zpoly::ZPoly;
use crate::error::{HoloError, Result};
use crate::linalg::{ModMatrix, MAX_PRIMES};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Matrix whose column `k` is `columns[k]` times `prod_{j >= levels[k]} factors[j]`.
///
/// The nested scaling lets closure chains keep their fraction free vectors
/// small while still being checked by a Horner scheme.
#[derive(Debug, Clone, Default)]
pub struct PolyMatrix {
    pub nrows: usize,
    pub columns: Vec<Vec<ZPoly>>,
    pub levels: Vec<usize>,
    pub factors: Vec<ZPoly>,
}

impl PolyMatrix {
    pub fn plain(nrows: usize, columns: Vec<Vec<ZPoly>>) -> Self {
        let n = columns.len();
        PolyMatrix { nrows, columns, levels: vec![0; n], factors: vec![] }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// `sum_k v_k * scale_k * column_k` computed exactly.
    pub fn apply(&self, v: &[ZPoly]) -> Vec<ZPoly> {
        let levels = self.factors.len();
        let mut acc = vec![ZPoly::zero(); self.nrows];
        for lvl in 0..=levels {
            if lvl > 0 {
                let f = &self.factors[lvl - 1];
                for a in acc.iter_mut() {
                    if !a.is_zero() {
                        *a = &*a * f;
                    }
                }
            }
            for (k, col) in self.columns.iter().enumerate() {
                if self.levels[k] != lvl || v[k].is_zero() {
                    continue;
                }
                for (a, e) in acc.iter_mut().zip(col) {
                    if !e.is_zero() {
                        *a = &*a + &(&v[k] * e);
                    }
                }
            }
        }
        acc
    }

    pub fn verify(&self, v: &[ZPoly]) -> bool {
        self.apply(v).iter().all(|p| p.is_zero())
    }

    fn reduce(&self, p: u64) -> ModImage {
        ModImage {
            p,
            nrows: self.nrows,
            columns: self.columns.iter().map(|c| c.iter().map(|e| e.to_mod(p)).collect()).collect(),
            levels: self.levels.clone(),
            factors: self.factors.iter().map(|f| f.to_mod(p)).collect(),
        }
    }

    /// Rank of the matrix evaluated at `x` modulo `p`.
    pub fn rank_at(&self, p: u64, x: u64) -> usize {
        self.reduce(p).eval(x).rank()
    }
}

/// A `PolyMatrix` reduced modulo a prime.
pub(crate) struct ModImage {
    pub p: u64,
    pub nrows: usize,
    pub columns: Vec<Vec<ModPoly>>,
    pub levels: Vec<usize>,
    pub factors: Vec<ModPoly>,
}

impl ModImage {
    /// True when `sum_k v_k * scale_k * column_k` vanishes identically.
    pub fn annihilated_by(&self, v: &[ModPoly]) -> bool {
        let p = self.p;
        let mut acc = vec![ModPoly::zero(p); self.nrows];
        for lvl in 0..=self.factors.len() {
            if lvl > 0 {
                let f = &self.factors[lvl - 1];
                for a in acc.iter_mut() {
                    *a = a.mul(f);
                }
            }
            for (k, col) in self.columns.iter().enumerate() {
                if self.levels[k] != lvl || v[k].is_zero() {
                    continue;
                }
                for (a, e) in acc.iter_mut().zip(col) {
                    *a = a.add(&v[k].mul(e));
                }
            }
        }
        acc.iter().all(|a| a.is_zero())
    }

    pub fn eval(&self, x: u64) -> ModMatrix {
        let p = self.p;
        let nf = self.factors.len();
        let mut suffix = vec![1u64; nf + 1];
        for j in (0..nf).rev() {
            suffix[j] = mul_mod(suffix[j + 1], self.factors[j].eval(x), p);
        }
        let ncols = self.columns.len();
        let mut m = ModMatrix::zeros(self.nrows, ncols, p);
        for (k, col) in self.columns.iter().enumerate() {
            let s = suffix[self.levels[k]];
            for (r, e) in col.iter().enumerate() {
                m.set(r, k, mul_mod(e.eval(x), s, p));
            }
        }
        m
    }
}

enum PrimeOutcome {
    FullRank,
    Unlucky,
    Vector(Vec<ModPoly>),
}

const CHECK_POINTS: usize = 3;
const MAX_POINTS: usize = 1 << 14;

fn nullvector_mod(img: &ModImage) -> PrimeOutcome {
    let p = img.p;
    let n = img.columns.len();
    let mut xs: Vec<u64> = Vec::new();
    let mut vals: Vec<Vec<u64>> = Vec::new();
    let mut x = 1u64;
    let mut bad = 0usize;
    let mut target = 16usize;
    loop {
        while xs.len() < target + CHECK_POINTS {
            let mut m = img.eval(x);
            let piv = m.rref();
            if piv.len() == n {
                return PrimeOutcome::FullRank;
            }
            let ker = m.kernel_from_rref(&piv);
            let ok = ker.len() == 1 && ker[0][n - 1] != 0;
            if ok {
                let inv = inv_mod(ker[0][n - 1], p);
                vals.push(ker[0][..n - 1].iter().map(|&v| mul_mod(v, inv, p)).collect());
                xs.push(x);
            } else {
                bad += 1;
                if bad > 64 + xs.len() {
                    return PrimeOutcome::Unlucky;
                }
            }
            x += 1;
        }
        if let Some(v) = reconstruct_vector(p, &xs, &vals, target) {
            return PrimeOutcome::Vector(v);
        }
        target *= 2;
        if target > MAX_POINTS {
            return PrimeOutcome::Unlucky;
        }
    }
}

fn reconstruct_vector(p: u64, xs: &[u64], vals: &[Vec<u64>], t: usize) -> Option<Vec<ModPoly>> {
    let n1 = vals[0].len();
    let mut modulus = ModPoly::one(p);
    for &x in &xs[..t] {
        modulus = modulus.mul(&ModPoly::new(p, vec![p - x, 1]));
    }
    let mut nums = Vec::with_capacity(n1);
    let mut den = ModPoly::one(p);
    for k in 0..n1 {
        let ys: Vec<u64> = vals[..t].iter().map(|v| v[k]).collect();
        let f = ModPoly::interpolate(p, &xs[..t], &ys);
        let (a, b) = f.rational_reconstruct(&modulus, t / 2)?;
        den = den.mul(&b).divrem(&den.gcd(&b)).0.monic();
        nums.push((a, b));
    }
    let mut out: Vec<ModPoly> =
        nums.into_iter().map(|(a, b)| a.mul(&den.divrem(&b).0)).collect();
    out.push(den);
    for (i, &x) in xs.iter().enumerate().skip(t) {
        let d = out[n1].eval(x);
        if d == 0 {
            return None;
        }
        let di = inv_mod(d, p);
        for k in 0..n1 {
            if mul_mod(out[k].eval(x), di, p) != vals[i][k] {
                return None;
            }
        }
    }
    Some(out)
}

fn profile(v: &[ModPoly]) -> Vec<isize> {
    v.iter().map(|c| c.degree().map_or(-1, |d| d as isize)).collect()
}

fn profile_better(a: &[isize], b: &[isize]) -> bool {
    let sa: isize = a.iter().sum();
    let sb: isize = b.iter().sum();
    sa > sb || (sa == sb && a > b)
}

/// Primitive polynomial kernel vector when the kernel over Q(x) has dimension one
/// and the last column takes part in the relation; `None` if the columns are independent.
pub fn poly_nullvector(m: &PolyMatrix, primes: &mut PrimeSet) -> Result<Option<Vec<ZPoly>>> {
    nullvector_with(|p| Some(m.reduce(p)), |v| m.verify(v), primes)
}

/// `poly_nullvector` for a matrix known only through its images modulo primes.
pub(crate) fn nullvector_with(
    image: impl Fn(u64) -> Option<ModImage> + Sync,
    mut verify: impl FnMut(&[ZPoly]) -> bool,
    primes: &mut PrimeSet,
) -> Result<Option<Vec<ZPoly>>> {
    let mut results: Vec<(u64, Vec<ModPoly>)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    loop {
        let fresh: Vec<u64> = primes.primes.iter().copied().filter(|p| seen.insert(*p)).collect();
        let outs: Vec<(u64, PrimeOutcome)> =
            fresh.par_iter().map(|&p| (p, image(p).map_or(PrimeOutcome::Unlucky, |im| nullvector_mod(&im)))).collect();
        for (p, o) in outs {
            match o {
                PrimeOutcome::FullRank => return Ok(None),
                PrimeOutcome::Unlucky => primes.mark_unlucky(p),
                PrimeOutcome::Vector(v) => results.push((p, v)),
            }
        }
        if !results.is_empty() {
            let mut best = profile(&results[0].1);
            for (_, v) in &results {
                let pr = profile(v);
                if profile_better(&pr, &best) {
                    best = pr;
                }
            }
            let bad: Vec<u64> = results.iter().filter(|(_, v)| profile(v) != best).map(|(p, _)| *p).collect();
            for p in bad {
                primes.mark_unlucky(p);
            }
            results.retain(|(_, v)| profile(v) == best);
            if let Some(v) = lift(&results, &best)? {
                if verify(&v) {
                    return Ok(Some(v));
                }
            }
        }
        if primes.len() + primes.skipped.len() > MAX_PRIMES {
            return Err(HoloError::ReconstructionFailed);
        }
        primes.grow();
    }
}

fn lift(results: &[(u64, Vec<ModPoly>)], prof: &[isize]) -> Result<Option<Vec<ZPoly>>> {
    let sizes: Vec<usize> = prof.iter().map(|&d| (d + 1) as usize).collect();
    let total: usize = sizes.iter().sum();
    let mut crt = CrtVec::new(total);
    for (p, v) in results {
        let mut flat = Vec::with_capacity(total);
        for (c, &s) in v.iter().zip(&sizes) {
            for i in 0..s {
                flat.push(c.coeffs.get(i).copied().unwrap_or(0));
            }
        }
        crt.push(&flat, *p)?;
    }
    let Some(rats) = crt.reconstruct() else { return Ok(None) };
    let den = crate::arith::rational::common_denominator(&rats);
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * crate::arith::Rational::from_integer(den.clone())).to_integer()).collect();
    let mut out = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in &sizes {
        out.push(ZPoly::new(ints[at..at + s].to_vec()));
        at += s;
    }
    Ok(Some(normalize(out)))
}

/// Divides by the integer content and makes the last component's leading coefficient positive.
pub fn normalize(v: Vec<ZPoly>) -> Vec<ZPoly> {
    let mut g = BigInt::zero();
    for c in &v {
        g = num_integer::Integer::gcd(&g, &c.content());
    }
    if g.is_zero() {
        return v;
    }
    let last = v.iter().rev().find(|c| !c.is_zero()).map(|c| c.lc()).unwrap_or_else(BigInt::one);
    if last.is_negative() {
        g = -g;
    }
    v.into_iter().map(|c| c.div_scalar(&g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_dependency() {
        // columns (x, x^2) and (1, x): relation x*col1 - col0 ... kernel (1, -x) up to sign
        let c0 = vec![ZPoly::from_i64s(&[0, 1]), ZPoly::from_i64s(&[0, 0, 1])];
        let c1 = vec![ZPoly::from_i64s(&[1]), ZPoly::from_i64s(&[0, 1])];
        let m = PolyMatrix::plain(2, vec![c0, c1]);
        let v = poly_nullvector(&m, &mut PrimeSet::new(2)).unwrap().unwrap();
        assert_eq!(v, vec![ZPoly::from_i64s(&[-1]), ZPoly::from_i64s(&[0, 1])]);
    }

    #[test]
    fn independent_columns() {
        let c0 = vec![ZPoly::from_i64s(&[1]), ZPoly::from_i64s(&[0])];
        let c1 = vec![ZPoly::from_i64s(&[0]), ZPoly::from_i64s(&[1, 1])];
        let m = PolyMatrix::plain(2, vec![c0, c1]);
        assert!(poly_nullvector(&m, &mut PrimeSet::new(2)).unwrap().is_none());
    }

    #[test]
    fn scaled_levels() {
        // column0 = 1 * f, column1 = -(x+3); f = x + 3 at level 0 -> kernel (1, 1)
        let m = PolyMatrix {
            nrows: 1,
            columns: vec![vec![ZPoly::from_i64s(&[1])], vec![ZPoly::from_i64s(&[-3, -1])]],
            levels: vec![0, 1],
            factors: vec![ZPoly::from_i64s(&[3, 1])],
        };
        let v = poly_nullvector(&m, &mut PrimeSet::new(2)).unwrap().unwrap();
        assert_eq!(v, vec![ZPoly::one(), ZPoly::one()]);
    }
}
