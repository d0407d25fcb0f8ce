//! Algebraic power series: the branch through a seed, and the linear ODE it satisfies.

use crate::arith::modular::{ModPoly, PrimeSet};
use crate::arith::rational::Rational;
use crate::arith::{Poly, RatFun, ZPoly};
use crate::closure::{chain_relation, OreModule};
use crate::error::{HoloError, Result};
use crate::eval::series_from_diffeq;
use crate::ore::OreKind;
use crate::relation::{integer_primitive, AlgebraicEquation, DiffEquation};
use crate::series;
use num_traits::Zero;

fn to_z(c: &[Poly]) -> Vec<ZPoly> {
    integer_primitive(c).iter().map(|p| p.to_zpoly().1.scale(&p.to_zpoly().0.to_integer())).collect()
}

/// Removes the content in `x` and any repeated factor in `y`.
pub fn squarefree_in_y(alg: &AlgebraicEquation) -> Result<AlgebraicEquation> {
    let out = AlgebraicEquation::new(without_x_content(&alg.coefficients_y), alg.seed.clone());
    if out.degree_y() <= 1 || squarefree_probe(&out) {
        return Ok(out);
    }
    let rf: Vec<RatFun> = out.coefficients_y.iter().cloned().map(RatFun::from_poly).collect();
    let d: Vec<RatFun> = out.dy().into_iter().map(RatFun::from_poly).collect();
    let h = rpoly_gcd(rf.clone(), d);
    if h.len() <= 1 {
        return Ok(out);
    }
    let q = rpoly_div_exact(&rf, &h);
    let lcm = q.iter().fold(Poly::one(), |acc, f| acc.lcm(&f.den));
    let polys: Vec<Poly> = q.iter().map(|f| &f.num * &lcm.div_exact(&f.den)).collect();
    let res = AlgebraicEquation::new(without_x_content(&polys), alg.seed.clone());
    if res.degree_y() > 1 && !squarefree_probe(&res) {
        return Err(HoloError::NotSquarefree);
    }
    Ok(res)
}

fn without_x_content(c: &[Poly]) -> Vec<Poly> {
    let mut g = Poly::zero();
    for p in c {
        g = g.gcd(p);
    }
    if g.is_constant() {
        integer_primitive(c)
    } else {
        integer_primitive(&c.iter().map(|p| p.div_exact(&g)).collect::<Vec<_>>())
    }
}

/// True when `P(x0, y)` is squarefree for a random `x0` modulo a prime.
fn squarefree_probe(alg: &AlgebraicEquation) -> bool {
    let primes = crate::arith::modular::primes_below_2_31(4);
    let z = to_z(&alg.coefficients_y);
    for (t, &p) in primes.iter().enumerate() {
        let x0 = 12_345 + 977 * t as u64;
        let coeffs: Vec<u64> = z.iter().map(|c| c.eval_mod(p, x0)).collect();
        let f = ModPoly::new(p, coeffs);
        if f.degree() != Some(alg.degree_y()) {
            continue;
        }
        let g = f.gcd(&f.derivative());
        return g.degree() == Some(0);
    }
    false
}

fn rpoly_trim(mut a: Vec<RatFun>) -> Vec<RatFun> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rpoly_rem(a: &[RatFun], b: &[RatFun]) -> Vec<RatFun> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inv();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &inv;
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &(&c * bc);
        }
        r = rpoly_trim(r);
    }
    r
}

fn rpoly_gcd(mut a: Vec<RatFun>, mut b: Vec<RatFun>) -> Vec<RatFun> {
    a = rpoly_trim(a);
    b = rpoly_trim(b);
    while !b.is_empty() {
        let r = rpoly_rem(&a, &b);
        a = b;
        b = r;
    }
    let inv = a[a.len() - 1].inv();
    a.iter().map(|c| c * &inv).collect()
}

fn rpoly_div_exact(a: &[RatFun], b: &[RatFun]) -> Vec<RatFun> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![RatFun::zero(); a.len() - db];
    let inv = b[db].inv();
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &(&c * bc);
        }
        q[k] = c;
    }
    q
}

fn check_seed(alg: &AlgebraicEquation) -> Result<()> {
    let p0 = alg.at_x0();
    if !p0.eval(&alg.seed).is_zero() {
        return Err(HoloError::InvalidParameter(format!("P(0, {}) is not zero", alg.seed)));
    }
    let d0 = Poly::new(alg.dy().iter().map(|p| p.coeff(0)).collect());
    if d0.eval(&alg.seed).is_zero() {
        return Err(HoloError::SingularSeed);
    }
    Ok(())
}

/// First `n` coefficients of the branch through the seed, by Newton iteration.
pub fn algebraic_series(alg: &AlgebraicEquation, n: usize) -> Result<Vec<Rational>> {
    check_seed(alg)?;
    let dy = alg.dy();
    let mut y = vec![alg.seed.clone()];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        y.resize(prec, Rational::zero());
        let f = series::eval_bivariate(&alg.coefficients_y, &y, prec);
        let fp = series::eval_bivariate(&dy, &y, prec);
        let corr = series::mul(&f, &series::inverse(&fp, prec), prec);
        y = y.iter().zip(corr.iter()).map(|(a, b)| a - b).collect();
    }
    y.truncate(n);
    debug_assert!(series::eval_bivariate(&alg.coefficients_y, &y, n).iter().all(|v| v.is_zero()));
    Ok(y)
}

/// Series of the branch, checked by substitution.
pub fn series_from_algeq(alg: &AlgebraicEquation, n: usize) -> Result<Vec<Rational>> {
    let y = algebraic_series(alg, n)?;
    if !series::eval_bivariate(&alg.coefficients_y, &y, n).iter().all(|v| v.is_zero()) {
        return Err(HoloError::Internal("algebraic series failed back substitution".into()));
    }
    Ok(y)
}

/// Pseudo-reduction of `f` (coefficients in y) modulo `p`, scaled by `lc(p)^e`.
fn reduce_scaled(f: &[ZPoly], p: &[ZPoly], e: usize) -> Vec<ZPoly> {
    let n = p.len() - 1;
    let lc = &p[n];
    let mut r = f.to_vec();
    let mut used = 0;
    while r.len() > n {
        let top = r.pop().unwrap();
        let k = r.len() - n;
        if !top.is_zero() {
            for c in r.iter_mut() {
                *c = &*c * lc;
            }
            for (i, pc) in p.iter().take(n).enumerate() {
                r[i + k] = &r[i + k] - &(&top * pc);
            }
        } else {
            for c in r.iter_mut() {
                *c = &*c * lc;
            }
        }
        used += 1;
    }
    r.resize(n, ZPoly::zero());
    let extra = lc.pow(e - used);
    r.iter().map(|c| c * &extra).collect()
}

fn ypoly_mul(a: &[ZPoly], b: &[ZPoly]) -> Vec<ZPoly> {
    let mut out = vec![ZPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if !x.is_zero() && !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Linear ODE (possibly inhomogeneous) for the branch of `P(x, y) = 0` through the seed.
pub fn algeq_to_diffeq(alg: &AlgebraicEquation) -> Result<DiffEquation> {
    let alg = squarefree_in_y(alg)?;
    check_seed(&alg)?;
    let n = alg.degree_y();
    if n == 0 {
        return Err(HoloError::InvalidParameter("equation has no y".into()));
    }
    if n == 1 {
        // y = a / b
        let a = -&alg.coefficients_y[0];
        let b = alg.coefficients_y[1].clone();
        let op = vec![-&(&(&a.derivative() * &b) - &(&a * &b.derivative())), &a * &b];
        return crate::convert::finish_diffeq(&op, "x", |k| algebraic_series(&alg, k));
    }
    let p = to_z(&alg.coefficients_y);
    let py: Vec<ZPoly> = p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&(i as i64).into())).collect();
    let px: Vec<ZPoly> = p.iter().map(|c| c.derivative()).collect();
    let e = n - 1;
    let mut primes = PrimeSet::default();
    // P_y * A = -b P_x modulo P
    let mut cols = Vec::new();
    for i in 0..n {
        let mut yi = vec![ZPoly::zero(); i];
        yi.push(ZPoly::one());
        cols.push(reduce_scaled(&ypoly_mul(&py, &yi), &p, e));
    }
    cols.push(reduce_scaled(&px, &p, e));
    let m = crate::polykernel::PolyMatrix::plain(n, cols);
    let v = crate::polykernel::poly_nullvector(&m, &mut primes)?
        .ok_or_else(|| HoloError::Internal("derivative of y not found in the quotient ring".into()))?;
    let q = v[n].clone();
    if q.is_zero() {
        return Err(HoloError::NotSquarefree);
    }
    let a: Vec<ZPoly> = v[..n].to_vec();
    // derivation matrix: column i is i * reduce(y^(i-1) * A)
    let mut num = vec![vec![ZPoly::zero(); n]; n];
    for i in 1..n {
        let mut shifted = vec![ZPoly::zero(); i - 1];
        shifted.extend(a.iter().cloned());
        let col = reduce_scaled(&shifted, &p, e);
        for (r, c) in col.into_iter().enumerate() {
            num[r][i] = c.scale(&(i as i64).into());
        }
    }
    let den = &q * &p[n].pow(e);
    let module = OreModule { kind: OreKind::Diff, dim: n, num, den };
    let rel = chain_relation(&module, module.unit(1), Some(module.unit(0)), 0, &mut primes)?;
    let mut all: Vec<Poly> = rel.coefficients.iter().map(Poly::from_zpoly).collect();
    let c = rel.constant.map(|c| Poly::from_zpoly(&c)).unwrap_or_else(Poly::zero);
    all.push(-&c);
    let mut all = integer_primitive(&all);
    if all[all.len() - 2].lc() != all[all.len() - 1].lc() && all[all.len() - 2].lc() < Rational::zero() {
        all = all.iter().map(|p| -p).collect();
    }
    let rhs = all.pop().unwrap();
    let coeffs = all;
    let mut d = DiffEquation::new(coeffs, vec![]).with_inhomogeneous(rhs);
    let need = d.required_initial();
    d.initial = algebraic_series(&alg, need)?;
    let check = series_from_diffeq(&d, need + 20)?;
    if check != algebraic_series(&alg, need + 20)? {
        return Err(HoloError::Internal("algebraic ODE disagrees with the branch".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn motzkin() -> AlgebraicEquation {
        AlgebraicEquation::new(vec![Poly::one(), Poly::from_i64s(&[-1, 1]), Poly::from_i64s(&[0, 0, 1])], rat(1))
    }

    #[test]
    fn motzkin_series_and_ode() {
        let s = series_from_algeq(&motzkin(), 9).unwrap();
        let want: Vec<Rational> = [1, 1, 2, 4, 9, 21, 51, 127, 323].iter().map(|&v| rat(v)).collect();
        assert_eq!(s, want);
        let d = algeq_to_diffeq(&motzkin()).unwrap();
        assert_eq!(series_from_diffeq(&d, 9).unwrap(), want);
        let h = crate::convert::homogenize_diffeq(&d).unwrap();
        assert_eq!(series_from_diffeq(&h, 20).unwrap(), series_from_algeq(&motzkin(), 20).unwrap());
    }

    #[test]
    fn trivial_and_sqrt() {
        let p = AlgebraicEquation::new(vec![Poly::from_i64s(&[-1]), Poly::one()], rat(1));
        let d = algeq_to_diffeq(&p).unwrap();
        assert_eq!(d.coefficients, vec![Poly::zero(), Poly::one()]);
        let s = AlgebraicEquation::new(vec![Poly::from_i64s(&[-1, 4]), Poly::zero(), Poly::one()], rat(1));
        let d = algeq_to_diffeq(&s).unwrap();
        assert_eq!(d.order(), 1);
        let y = series_from_diffeq(&d, 30).unwrap();
        let sq = series::mul(&y, &y, 30);
        assert_eq!(sq, series::from_poly(&Poly::from_i64s(&[1, -4]), 30));
    }

    #[test]
    fn singular_and_repeated() {
        let p = AlgebraicEquation::new(vec![Poly::from_i64s(&[0, -1]), Poly::zero(), Poly::one()], rat(0));
        assert_eq!(algeq_to_diffeq(&p), Err(HoloError::SingularSeed));
        let p = AlgebraicEquation::new(vec![Poly::from_i64s(&[1]), Poly::from_i64s(&[-2]), Poly::one()], rat(1));
        assert_eq!(algeq_to_diffeq(&p).unwrap().coefficients, vec![Poly::zero(), Poly::one()]);
        // (motzkin)^2 reduces to motzkin
        let m = motzkin();
        let mut sq = vec![Poly::zero(); 5];
        for i in 0..3 {
            for j in 0..3 {
                sq[i + j] = &sq[i + j] + &(&m.coefficients_y[i] * &m.coefficients_y[j]);
            }
        }
        let r = squarefree_in_y(&AlgebraicEquation::new(sq, rat(1))).unwrap();
        assert_eq!(r.coefficients_y, integer_primitive(&m.coefficients_y));
    }
}
