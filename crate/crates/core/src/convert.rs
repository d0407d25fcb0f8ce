//! Recurrence and differential equation conversions, and homogenization.

use crate::arith::rational::Rational;
use crate::arith::roots::nonneg_integer_roots;
use crate::arith::{Poly, RatFun};
use crate::error::{HoloError, Result};
use crate::eval::{series_from_diffeq, unroll};
use crate::ore::{ore_mul, OreKind, OreOperator};
use crate::relation::{DiffEquation, Recurrence};
use num_bigint::BigInt;
use num_traits::Zero;

/// Falling factorial `z (z-1) ... (z-i+1)` as a polynomial in `n`, with `z = n + t`.
fn falling(t: i64, i: usize) -> Poly {
    let mut acc = Poly::one();
    for k in 0..i as i64 {
        acc = &acc * &Poly::linear(Rational::from_integer(BigInt::from(t - k)));
    }
    acc
}

/// Recurrence on Taylor coefficients induced by the operator part of an ODE.
///
/// Returns the coefficients `c_k(n)` (valid for every `n >= 0` with the
/// sequence extended by zero) and the index offset `t_min`, so that the right
/// hand side at `n` is `[x^(n - t_min)] g(x)`.
pub fn induced_recurrence(coeffs: &[Poly]) -> (Vec<Poly>, i64) {
    let mut tmin = i64::MAX;
    let mut tmax = i64::MIN;
    for (i, p) in coeffs.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let t = i as i64 - j as i64;
                tmin = tmin.min(t);
                tmax = tmax.max(t);
            }
        }
    }
    if tmin == i64::MAX {
        return (vec![], 0);
    }
    let width = (tmax - tmin) as usize + 1;
    let mut out = vec![Poly::zero(); width];
    for (i, p) in coeffs.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = i as i64 - j as i64;
            let k = (t - tmin) as usize;
            // C_t(m) with m = n - tmin: falling(m + t, i) = falling(n + (t - tmin), i)
            out[k] = &out[k] + &falling(t - tmin, i).scale(c);
        }
    }
    (out, tmin)
}

/// The induced recurrence as a `Recurrence` value (operator and the ODE's initial data).
pub fn raw_recurrence(deq: &DiffEquation) -> Recurrence {
    let (c, _) = induced_recurrence(&deq.coefficients);
    let mut r = Recurrence::new(c, deq.initial.clone());
    r.variable = "n".into();
    r
}

/// Canonical recurrence plus enough initial terms, taken from `terms`.
///
/// The relation is checked on actual data at every index below `hint` and
/// below the nonnegative roots of any removed content; each failure pushes
/// the initial block past it.
pub fn finish_recurrence(
    raw: &[Poly],
    var: &str,
    hint: usize,
    terms: impl Fn(usize) -> Result<Vec<Rational>>,
) -> Result<Recurrence> {
    let op = OreOperator::from_polys(OreKind::Shift, var, raw.to_vec());
    let can = op.canonical();
    let cpolys = can.polys();
    let r = cpolys.len() - 1;
    let content = raw[raw.len() - 1].div_exact(&cpolys[r]);
    let mut suspicious = hint;
    if !content.is_constant() {
        for j in nonneg_integer_roots(&content) {
            suspicious = suspicious.max(j + 1);
        }
    }
    let mut need = Recurrence::new(cpolys.clone(), vec![]).required_initial();
    if suspicious > 0 {
        let data = terms(suspicious + r)?;
        for n in (0..suspicious).rev() {
            let mut acc = Rational::zero();
            for (i, c) in cpolys.iter().enumerate() {
                acc += c.eval_i64(n as i64) * &data[n + i];
            }
            if !acc.is_zero() {
                need = need.max(n + r + 1);
                break;
            }
        }
    }
    let init = terms(need)?;
    let mut rec = Recurrence::new(cpolys, init);
    rec.variable = var.to_string();
    Ok(rec)
}

/// Canonical ODE plus its required Taylor coefficients.
pub fn finish_diffeq(
    raw: &[Poly],
    var: &str,
    series: impl FnOnce(usize) -> Result<Vec<Rational>>,
) -> Result<DiffEquation> {
    let op = OreOperator::from_polys(OreKind::Diff, var, raw.to_vec()).canonical();
    let mut d = DiffEquation::from_operator(&op, vec![]);
    let need = d.required_initial();
    d.initial = series(need)?;
    Ok(d)
}

/// Boundary polynomial `B` with `L f = B` where `L` is the θ-image of the recurrence.
fn theta_image(rec: &Recurrence) -> (OreOperator, Poly) {
    let r = rec.order();
    let var = "x";
    let theta = OreOperator::from_polys(OreKind::Diff, var, vec![Poly::zero(), Poly::x()]);
    let mut total = OreOperator::zero(OreKind::Diff, var);
    for (i, c) in rec.coefficients.iter().enumerate() {
        // c(θ - i) by Horner in θ - i
        let step = theta.sub(&OreOperator::from_polys(OreKind::Diff, var, vec![Poly::constant(Rational::from_integer(BigInt::from(i)))])).unwrap();
        let mut acc = OreOperator::zero(OreKind::Diff, var);
        for coef in c.coeffs().iter().rev() {
            acc = ore_mul(&acc, &step).unwrap();
            acc = acc.add(&OreOperator::from_polys(OreKind::Diff, var, vec![Poly::constant(coef.clone())])).unwrap();
        }
        let xp = RatFun::from_poly(Poly::x().pow(r - i));
        total = total.add(&acc.left_scale(&xp)).unwrap();
    }
    let mut b = vec![Rational::zero(); r];
    for (i, c) in rec.coefficients.iter().enumerate() {
        for m in 0..i {
            if m < rec.initial.len() {
                let v = c.eval_i64(m as i64 - i as i64) * &rec.initial[m];
                b[m + r - i] += v;
            }
        }
    }
    (total, Poly::new(b))
}

/// ODE for `sum u_n x^n` before homogenization: `(L, B)` with `L f = B`.
pub fn rec_to_diffeq_raw(rec: &Recurrence) -> Result<DiffEquation> {
    let rec = if rec.is_homogeneous() { rec.clone() } else { homogenize_rec(rec)? };
    let need = rec.order();
    if rec.initial.len() < need {
        return Err(HoloError::MissingInitialTerms((rec.initial.len()..need).collect()));
    }
    let (l, b) = theta_image(&rec);
    let polys = l.polys();
    let mut d = DiffEquation::new(polys, vec![]).with_inhomogeneous(b);
    let count = d.required_initial();
    d.initial = unroll(&rec, count)?;
    Ok(d)
}

/// Homogeneous ODE satisfied by the generating function of the recurrence.
///
/// A nonzero boundary polynomial `B` is absorbed by left composition with
/// `B*D - B'`, so the result always has zero right hand side.
pub fn rec_to_diffeq(rec: &Recurrence) -> Result<DiffEquation> {
    let rec = if rec.is_homogeneous() { rec.clone() } else { homogenize_rec(rec)? };
    let raw = rec_to_diffeq_raw(&rec)?;
    let (op, _) = if raw.is_homogeneous() {
        (raw.operator(), ())
    } else {
        (rhs_annihilated(&raw.operator(), raw.inhomogeneous.as_ref().unwrap()), ())
    };
    let polys = op.polys();
    finish_diffeq(&polys, "x", |n| unroll(&rec, n))
}

fn rhs_annihilated(l: &OreOperator, b: &Poly) -> OreOperator {
    let ann = OreOperator::from_polys(OreKind::Diff, &l.var, vec![-&b.derivative(), b.clone()]);
    ore_mul(&ann, l).unwrap()
}

/// Recurrence for the Taylor coefficients of an ODE solution.
pub fn diffeq_to_rec(deq: &DiffEquation) -> Result<Recurrence> {
    let deq = if deq.is_homogeneous() { deq.clone() } else { homogenize_diffeq(deq)? };
    let (c, _) = induced_recurrence(&deq.coefficients);
    finish_recurrence(&c, "n", 0, |n| series_from_diffeq(&deq, n))
}

/// Left-composes with `b*D - b'` where `b` is the right hand side.
pub fn homogenize_diffeq(deq: &DiffEquation) -> Result<DiffEquation> {
    let Some(b) = deq.inhomogeneous.clone().filter(|g| !g.is_zero()) else {
        return Err(HoloError::AlreadyHomogeneous);
    };
    let op = rhs_annihilated(&deq.operator(), &b);
    let mut out = finish_diffeq(&op.polys(), &deq.variable, |n| series_from_diffeq(deq, n))?;
    out.variable = deq.variable.clone();
    Ok(out)
}

/// Left-composes with `g(n)*S - g(n+1)` where `g` is the right hand side.
pub fn homogenize_rec(rec: &Recurrence) -> Result<Recurrence> {
    let Some(g) = rec.inhomogeneous.clone().filter(|g| !g.is_zero()) else {
        return Err(HoloError::AlreadyHomogeneous);
    };
    let ann = OreOperator::from_polys(OreKind::Shift, &rec.variable, vec![-&g.shift_int(1), g.clone()]);
    let op = ore_mul(&ann, &rec.operator())?;
    finish_recurrence(&op.polys(), &rec.variable, rec.initial.len() + 1, |n| unroll(rec, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn central_binomial_pair() {
        // (n+1)^2 u(n+1) - 4 (2n+1)^2 u(n)
        let rec = Recurrence::new(
            vec![Poly::from_i64s(&[-4, -16, -16]), Poly::from_i64s(&[1, 2, 1])],
            vec![rat(1)],
        );
        let d = rec_to_diffeq(&rec).unwrap();
        assert_eq!(
            d.coefficients,
            vec![Poly::from_i64s(&[4]), Poly::from_i64s(&[-1, 32]), Poly::from_i64s(&[0, -1, 16])]
        );
        assert_eq!(d.initial, vec![rat(1)]);
        let back = diffeq_to_rec(&d).unwrap();
        assert_eq!(back.coefficients, rec.coefficients);
        assert_eq!(back.initial, vec![rat(1)]);
    }

    #[test]
    fn geometric_boundary_is_absorbed() {
        let rec = Recurrence::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[1])], vec![rat(1)]);
        let raw = rec_to_diffeq_raw(&rec).unwrap();
        assert_eq!(raw.inhomogeneous, Some(Poly::one()));
        let d = rec_to_diffeq(&rec).unwrap();
        // (1 - x) y' - y = 0, leading coefficient sign normalised
        assert_eq!(d.coefficients, vec![Poly::from_i64s(&[1]), Poly::from_i64s(&[-1, 1])]);
    }

    #[test]
    fn homogenize_simple() {
        let rec = Recurrence::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[1])], vec![rat(0)])
            .with_inhomogeneous(Poly::one());
        let h = homogenize_rec(&rec).unwrap();
        assert_eq!(h.coefficients, vec![Poly::from_i64s(&[1]), Poly::from_i64s(&[-2]), Poly::from_i64s(&[1])]);
        assert_eq!(homogenize_rec(&h), Err(HoloError::AlreadyHomogeneous));
        let ode = DiffEquation::new(vec![Poly::zero(), Poly::one()], vec![rat(0)]).with_inhomogeneous(Poly::one());
        let h = homogenize_diffeq(&ode).unwrap();
        assert_eq!(h.coefficients, vec![Poly::zero(), Poly::zero(), Poly::one()]);
    }
}
