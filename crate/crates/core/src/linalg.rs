//! Kernels of rational matrices, modulo word primes and exactly.

use crate::arith::modular::{inv_mod, mul_mod, neg_mod, CrtVec, PrimeSet};
use crate::arith::rational::{rational_mod, Rational};
use crate::error::{HoloError, Result};
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Hard cap on the number of primes tried before giving up.
pub const MAX_PRIMES: usize = 5120;

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        ModMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(i) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else { continue };
            if i != r {
                for k in 0..cols {
                    self.data.swap(i * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            for k in c..cols {
                let v = &mut self.data[r * cols + k];
                *v = mul_mod(*v, inv, p);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let f = row[c];
                if f != 0 {
                    let nf = p - f;
                    for k in c..cols {
                        row[k] = (row[k] + nf * prow[k]) % p;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank without keeping the echelon form.
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Kernel basis from an RREF, one vector per free column with a 1 there.
    pub fn kernel_from_rref(&self, pivots: &[usize]) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = neg_mod(self.get(i, f), p);
                }
                v
            })
            .collect()
    }

    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let piv = m.rref();
        m.kernel_from_rref(&piv)
    }
}

/// A linear system over Q that can be reduced modulo primes and checked exactly.
pub trait ModularSystem: Sync {
    fn ncols(&self) -> usize;
    /// Image modulo `p`, or `None` if some denominator vanishes.
    fn reduce(&self, p: u64) -> Option<ModMatrix>;
    /// Exact membership of `v` in the kernel.
    fn verify(&self, v: &[Rational]) -> bool;
}

/// Dense row-major matrix over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Keeps the first `n` rows.
    pub fn take_rows(&self, n: usize) -> RationalMatrix {
        let n = n.min(self.rows);
        RationalMatrix { rows: n, cols: self.cols, data: self.data[..n * self.cols].to_vec() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Exact reduced row echelon form over Q; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(i) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else { continue };
            if i != r {
                for k in 0..cols {
                    self.data.swap(i * cols + k, r * cols + k);
                }
            }
            let inv = self.data[r * cols + c].recip();
            for k in c..cols {
                let v = &self.data[r * cols + k] * &inv;
                self.data[r * cols + k] = v;
            }
            for i in 0..rows {
                if i == r || self.data[i * cols + c].is_zero() {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                for k in c..cols {
                    if self.data[r * cols + k].is_zero() {
                        continue;
                    }
                    let t = &f * &self.data[r * cols + k];
                    self.data[i * cols + k] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl ModularSystem for RationalMatrix {
    fn ncols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, p: u64) -> Option<ModMatrix> {
        let data = self.data.iter().map(|v| rational_mod(v, p)).collect::<Option<Vec<_>>>()?;
        Some(ModMatrix { rows: self.rows, cols: self.cols, p, data })
    }

    fn verify(&self, v: &[Rational]) -> bool {
        self.mul_vec(v).iter().all(|x| x.is_zero())
    }
}

/// Kernel basis over Q by exact elimination, normalised on the free columns.
pub fn rational_kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = a.rref();
    let mut is_pivot = vec![false; a.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..a.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); a.cols];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// Outcome of a multi-modular kernel computation.
#[derive(Debug, Clone)]
pub struct KernelResult {
    pub basis: Vec<Vec<Rational>>,
    pub primes_used: usize,
    pub skipped: Vec<u64>,
}

struct PrimeImage {
    p: u64,
    pivots: Vec<usize>,
    kernel: Vec<Vec<u64>>,
}

fn better_profile(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// Rank of the system modulo a single prime (`None` if the prime is unlucky).
pub fn rank_mod<S: ModularSystem>(sys: &S, p: u64) -> Option<usize> {
    sys.reduce(p).map(|m| m.rank())
}

/// Kernel over Q by elimination modulo many primes, CRT and rational reconstruction.
///
/// Every returned vector is checked exactly, and because the rank modulo p
/// never exceeds the rank over Q, a fully verified basis is a basis.
pub fn modular_kernel<S: ModularSystem>(sys: &S, primes: &mut PrimeSet) -> Result<KernelResult> {
    let n = sys.ncols();
    let mut images: Vec<PrimeImage> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    loop {
        let fresh: Vec<u64> = primes.primes.iter().copied().filter(|p| seen.insert(*p)).collect();
        let new: Vec<(u64, Option<PrimeImage>)> = fresh
            .par_iter()
            .map(|&p| {
                let img = sys.reduce(p).map(|mut m| {
                    let pivots = m.rref();
                    let kernel = m.kernel_from_rref(&pivots);
                    PrimeImage { p, pivots, kernel }
                });
                (p, img)
            })
            .collect();
        for (p, img) in new {
            match img {
                Some(i) => images.push(i),
                None => primes.mark_unlucky(p),
            }
        }
        if images.is_empty() {
            if primes.len() + primes.skipped.len() > MAX_PRIMES {
                return Err(HoloError::UnluckyPrimeExhaustion);
            }
            primes.grow();
            continue;
        }
        let mut best = images[0].pivots.clone();
        for im in &images {
            if better_profile(&im.pivots, &best) {
                best = im.pivots.clone();
            }
        }
        let unlucky: Vec<u64> = images.iter().filter(|im| im.pivots != best).map(|im| im.p).collect();
        for p in &unlucky {
            primes.mark_unlucky(*p);
        }
        images.retain(|im| im.pivots == best);
        let dim = n - best.len();
        if dim == 0 {
            return Ok(KernelResult { basis: vec![], primes_used: images.len(), skipped: primes.skipped.clone() });
        }
        let mut crt = CrtVec::new(dim * n);
        for im in &images {
            let flat: Vec<u64> = im.kernel.iter().flatten().copied().collect();
            crt.push(&flat, im.p)?;
        }
        if let Some(flat) = crt.reconstruct() {
            let basis: Vec<Vec<Rational>> = flat.chunks(n).map(|c| c.to_vec()).collect();
            if basis.par_iter().all(|v| sys.verify(v)) {
                return Ok(KernelResult { basis, primes_used: images.len(), skipped: primes.skipped.clone() });
            }
        }
        if primes.len() + primes.skipped.len() > MAX_PRIMES {
            return Err(HoloError::ReconstructionFailed);
        }
        primes.grow();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    fn mat(rows: usize, cols: usize, v: &[i64]) -> RationalMatrix {
        RationalMatrix { rows, cols, data: v.iter().map(|&x| rat(x)).collect() }
    }

    #[test]
    fn rational_and_modular_kernels_agree() {
        let m = mat(2, 4, &[1, 2, 3, 4, 2, 4, 7, 1]);
        let exact = rational_kernel(&m);
        let mut ps = PrimeSet::default();
        let modular = modular_kernel(&m, &mut ps).unwrap();
        assert_eq!(exact, modular.basis);
        assert_eq!(exact.len(), 2);
        for v in &exact {
            assert!(m.verify(v));
        }
    }

    #[test]
    fn fractional_kernel() {
        let mut m = RationalMatrix::zeros(1, 2);
        m.set(0, 0, ratio(3, 7));
        m.set(0, 1, ratio(-5, 11));
        let k = modular_kernel(&m, &mut PrimeSet::default()).unwrap().basis;
        assert_eq!(k, vec![vec![ratio(35, 33), rat(1)]]);
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let m = mat(2, 2, &[1, 2, 3, 4]);
        assert!(modular_kernel(&m, &mut PrimeSet::default()).unwrap().basis.is_empty());
    }
}
