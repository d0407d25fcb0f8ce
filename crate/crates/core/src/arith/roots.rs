//! Integer roots of integer polynomials by Hensel lifting.

use super::modular::{inv_mod, ModPoly};
use super::poly::Poly;
use super::zpoly::ZPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All distinct integer roots of a nonzero polynomial, ascending.
pub fn integer_roots(p: &Poly) -> Vec<BigInt> {
    assert!(!p.is_zero(), "the zero polynomial has every integer as a root");
    zpoly_integer_roots(&p.to_zpoly().1)
}

pub fn zpoly_integer_roots(z: &ZPoly) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut c = z.coeffs().to_vec();
    let lead_zeros = c.iter().take_while(|v| v.is_zero()).count();
    if lead_zeros > 0 {
        out.push(BigInt::zero());
        c.drain(..lead_zeros);
    }
    let z = ZPoly::new(c);
    if z.deg() >= 1 {
        out.extend(nonzero_roots(&z.squarefree_part()));
    }
    out.sort();
    out.dedup();
    out
}

/// Nonnegative integer roots that fit in `usize`.
pub fn nonneg_integer_roots(p: &Poly) -> Vec<usize> {
    if p.is_zero() {
        return vec![];
    }
    integer_roots(p).into_iter().filter(|r| !r.is_negative()).filter_map(|r| r.to_usize()).collect()
}

fn nonzero_roots(z: &ZPoly) -> Vec<BigInt> {
    if z.deg() == 1 {
        let (q, r) = (-z.coeff(0)).div_rem(&z.coeff(1));
        return if r.is_zero() { vec![q] } else { vec![] };
    }
    let lc = z.lc().abs();
    let bound = z.coeffs().iter().map(|c| c.abs()).max().unwrap().div_ceil(&lc) + BigInt::one();
    let dz = z.derivative();
    let q = (3u64..)
        .filter(|&q| super::modular::is_prime_u64(q))
        .find(|&q| {
            let zm = z.to_mod(q);
            zm.degree() == z.degree() && zm.gcd(&zm.derivative()).degree() == Some(0)
        })
        .expect("a prime of good reduction exists");
    let zm: ModPoly = z.to_mod(q);
    let dzm = dz.to_mod(q);
    let target = &bound * BigInt::from(2) + BigInt::one();
    let mut out = Vec::new();
    for r0 in 0..q {
        if zm.eval(r0) != 0 {
            continue;
        }
        let mut m = BigInt::from(q);
        let mut r = BigInt::from(r0);
        let mut dinv = BigInt::from(inv_mod(dzm.eval(r0), q));
        while m < target {
            let m2 = &m * &m;
            let fr = z.eval(&r).mod_floor(&m2);
            // refresh the derivative inverse modulo m with one Newton step
            let d = dz.eval(&r).mod_floor(&m2);
            dinv = (&dinv * (BigInt::from(2) - &d * &dinv)).mod_floor(&m2);
            r = (&r - &fr * &dinv).mod_floor(&m2);
            m = m2;
        }
        let half = &m / BigInt::from(2);
        let cand = if r > half { &r - &m } else { r };
        if z.eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_roots() {
        // (n+1)^2 (n-3)(2n+5) n
        let p = Poly::from_i64s(&[1, 1]).pow(2) * Poly::from_i64s(&[-3, 1]) * Poly::from_i64s(&[5, 2]) * Poly::x();
        let r: Vec<i64> = integer_roots(&p).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(r, vec![-1, 0, 3]);
        assert_eq!(nonneg_integer_roots(&p), vec![0, 3]);
    }

    #[test]
    fn large_root() {
        let big: i64 = 123_456_789_012;
        let p = Poly::from_i64s(&[-big, 1]) * Poly::from_i64s(&[7, 0, 1]) * Poly::from_i64s(&[big, 1]);
        let r: Vec<i64> = integer_roots(&p).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(r, vec![-big, big]);
    }
}
