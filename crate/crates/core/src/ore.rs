//! Ore polynomials in the differential (`D*a = a*D + a'`) and shift
//! (`S*a(n) = a(n+1)*S`) algebras over Q(x).

use crate::arith::rational::Rational;
use crate::arith::{Poly, RatFun, ZPoly};
use crate::error::{HoloError, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OreKind {
    Diff,
    Shift,
}

impl OreKind {
    pub fn name(self) -> &'static str {
        match self {
            OreKind::Diff => "diff",
            OreKind::Shift => "shift",
        }
    }

    fn sigma_rat(self, f: &RatFun, k: i64) -> RatFun {
        match self {
            OreKind::Diff => f.clone(),
            OreKind::Shift => f.shift(&Rational::from_integer(k.into())),
        }
    }

    fn sigma_z(self, f: &ZPoly, k: i64) -> ZPoly {
        match self {
            OreKind::Diff => f.clone(),
            OreKind::Shift => f.shift(k),
        }
    }
}

/// `sum_i coeffs[i] * d^i` where `d` is `D` or `S` according to `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OreOperator {
    pub kind: OreKind,
    pub var: String,
    pub coeffs: Vec<RatFun>,
}

impl OreOperator {
    pub fn new(kind: OreKind, var: &str, mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OreOperator { kind, var: var.to_string(), coeffs }
    }

    pub fn from_polys(kind: OreKind, var: &str, coeffs: Vec<Poly>) -> Self {
        OreOperator::new(kind, var, coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn from_zpolys(kind: OreKind, var: &str, coeffs: &[ZPoly]) -> Self {
        OreOperator::from_polys(kind, var, coeffs.iter().map(Poly::from_zpoly).collect())
    }

    pub fn zero(kind: OreKind, var: &str) -> Self {
        OreOperator::new(kind, var, vec![])
    }

    pub fn one(kind: OreKind, var: &str) -> Self {
        OreOperator::new(kind, var, vec![RatFun::one()])
    }

    /// The generator `D` or `S`.
    pub fn generator(kind: OreKind, var: &str) -> Self {
        OreOperator::new(kind, var, vec![RatFun::zero(), RatFun::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; the zero operator has order 0 by convention.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> RatFun {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// Polynomial coefficients; panics on genuine rational function coefficients.
    pub fn polys(&self) -> Vec<Poly> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_polynomial(), "operator has rational function coefficients");
                c.num.clone()
            })
            .collect()
    }

    /// Primitive integer coefficients of the canonical form.
    pub fn to_zpolys(&self) -> Vec<ZPoly> {
        canonical_z(&clear_denominators(&self.coeffs))
    }

    /// Polynomial coefficients, no common polynomial factor, coprime integers,
    /// leading coefficient with positive leading term.
    pub fn canonical(&self) -> OreOperator {
        OreOperator::from_zpolys(self.kind, &self.var, &self.to_zpolys())
    }

    fn same_algebra(&self, o: &OreOperator) -> Result<()> {
        if self.kind != o.kind {
            return Err(HoloError::KindMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &OreOperator) -> Result<OreOperator> {
        self.same_algebra(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = RatFun::zero();
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect();
        Ok(OreOperator::new(self.kind, &self.var, c))
    }

    pub fn neg(&self) -> OreOperator {
        OreOperator::new(self.kind, &self.var, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &OreOperator) -> Result<OreOperator> {
        self.add(&o.neg())
    }

    /// `f * self` for a scalar `f`.
    pub fn left_scale(&self, f: &RatFun) -> OreOperator {
        OreOperator::new(self.kind, &self.var, self.coeffs.iter().map(|c| f * c).collect())
    }

    /// `d * self`.
    fn gen_mul(&self) -> OreOperator {
        let mut out = vec![RatFun::zero(); self.coeffs.len() + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            match self.kind {
                OreKind::Diff => {
                    out[j] = &out[j] + &b.derivative();
                    out[j + 1] = &out[j + 1] + b;
                }
                OreKind::Shift => out[j + 1] = b.shift(&Rational::one()),
            }
        }
        OreOperator::new(self.kind, &self.var, out)
    }

    /// Evaluates the operator on a sequence (shift) or truncated power series (diff).
    pub fn apply(&self, data: &[Rational]) -> Result<Vec<Rational>> {
        apply_operator(self, data)
    }

    /// `kind=diff var=x; [p_0; p_1; ...]`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                let arr = |p: &Poly| {
                    format!("[{}]", p.coeffs().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
                };
                if c.is_polynomial() {
                    arr(&c.num)
                } else {
                    format!("{}/{}", arr(&c.num), arr(&c.den))
                }
            })
            .collect();
        format!("kind={} var={}; [{}]", self.kind.name(), self.var, parts.join("; "))
    }
}

impl fmt::Display for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let g = match self.kind {
            OreKind::Diff => "D",
            OreKind::Shift => "S",
        };
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let pw = match i {
                0 => String::new(),
                1 => g.to_string(),
                _ => format!("{g}^{i}"),
            };
            let cs = c.display_var(&self.var);
            terms.push(match (i, cs.as_str()) {
                (0, _) => format!("({cs})"),
                (_, "1") => pw,
                _ => format!("({cs})*{pw}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn clear_denominators(c: &[RatFun]) -> Vec<Poly> {
    let mut l = Poly::one();
    for v in c {
        if !v.is_polynomial() {
            l = l.lcm(&v.den);
        }
    }
    c.iter()
        .map(|v| if v.is_polynomial() { &v.num * &l } else { &v.num * &l.div_exact(&v.den) })
        .collect()
}

/// Removes the polynomial content and fixes the sign.
fn canonical_z(c: &[Poly]) -> Vec<ZPoly> {
    let l = c.iter().fold(BigInt::one(), |acc, p| {
        num_integer::Integer::lcm(&acc, &crate::arith::rational::common_denominator(p.coeffs()))
    });
    let lr = Rational::from_integer(l);
    let z = c
        .iter()
        .map(|p| ZPoly::new(p.coeffs().iter().map(|v| (v * &lr).to_integer()).collect()))
        .collect();
    zop_primitive(z)
}

/// Divides by the gcd of all coefficients and makes the top coefficient's lc positive.
pub(crate) fn zop_primitive(mut z: Vec<ZPoly>) -> Vec<ZPoly> {
    while z.last().is_some_and(|c| c.is_zero()) {
        z.pop();
    }
    if z.is_empty() {
        return z;
    }
    let mut g = ZPoly::zero();
    for c in &z {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.primitive() } else { g.gcd(c) };
        if g.deg() == 0 {
            break;
        }
    }
    if g.deg() > 0 {
        z = z.iter().map(|c| c.exact_div(&g).unwrap_or_else(|| c.exact_div_rational(&g))).collect();
    }
    let mut ic = BigInt::zero();
    for c in &z {
        ic = num_integer::Integer::gcd(&ic, &c.content());
    }
    if z.last().unwrap().lc().is_negative() {
        ic = -ic;
    }
    z.iter().map(|c| c.div_scalar(&ic)).collect()
}

// ---- integer polynomial operators used by the Euclidean algorithms ----

type ZOp = Vec<ZPoly>;

fn ztrim(mut a: ZOp) -> ZOp {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zgen_pow_mul(kind: OreKind, k: usize, b: &ZOp) -> ZOp {
    let mut cur = b.clone();
    for _ in 0..k {
        let mut out = vec![ZPoly::zero(); cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            match kind {
                OreKind::Diff => {
                    out[j] = &out[j] + &c.derivative();
                    out[j + 1] = &out[j + 1] + c;
                }
                OreKind::Shift => out[j + 1] = c.shift(1),
            }
        }
        cur = ztrim(out);
    }
    cur
}

fn zscale(f: &ZPoly, b: &ZOp) -> ZOp {
    ztrim(b.iter().map(|c| f * c).collect())
}

fn zsub(a: &ZOp, b: &ZOp) -> ZOp {
    let n = a.len().max(b.len());
    let z = ZPoly::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zadd(a: &ZOp, b: &ZOp) -> ZOp {
    let n = a.len().max(b.len());
    let z = ZPoly::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zmul(kind: OreKind, a: &ZOp, b: &ZOp) -> ZOp {
    let mut acc: ZOp = vec![];
    let mut pw = b.clone();
    for (i, c) in a.iter().enumerate() {
        if i > 0 {
            pw = zgen_pow_mul(kind, 1, &pw);
        }
        if !c.is_zero() {
            acc = zadd(&acc, &zscale(c, &pw));
        }
    }
    acc
}

/// Content (polynomial gcd) of several operators taken together.
fn joint_content(ops: &[&ZOp]) -> ZPoly {
    let mut g = ZPoly::zero();
    for op in ops {
        for c in op.iter() {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.primitive() } else { g.gcd(c) };
            if g.deg() == 0 && g.content() == BigInt::one() {
                return g;
            }
        }
    }
    g
}

fn divide_all(op: &ZOp, g: &ZPoly) -> ZOp {
    op.iter().map(|c| c.exact_div(g).expect("content divides")).collect()
}

/// One left pseudo-division step loop: returns `(s, q, r)` with `s*a = q*b + r`, `ord r < ord b`.
fn pseudo_divmod(kind: OreKind, a: &ZOp, b: &ZOp, track: bool) -> (ZPoly, ZOp, ZOp) {
    let n = b.len() - 1;
    let mut r = a.clone();
    let mut s = ZPoly::one();
    let mut q: ZOp = vec![];
    while r.len() > n && !r.is_empty() {
        let m = r.len() - 1;
        let k = m - n;
        let bl = kind.sigma_z(&b[n], k as i64);
        let rl = r[m].clone();
        let g = bl.gcd(&rl);
        let (bl, rl) = if g.deg() > 0 {
            (bl.exact_div(&g).expect("gcd divides"), rl.exact_div(&g).expect("gcd divides"))
        } else {
            (bl, rl)
        };
        // rescale so that the leading terms cancel exactly over Z
        let gi = num_integer::Integer::gcd(&bl.content(), &rl.content());
        let (bl, rl) = (bl.div_scalar(&gi), rl.div_scalar(&gi));
        let shifted = zgen_pow_mul(kind, k, b);
        let mut nr = zsub(&zscale(&bl, &r), &zscale(&rl, &shifted));
        nr.truncate(m);
        r = ztrim(nr);
        if track {
            s = &s * &bl;
            q = zscale(&bl, &q);
            let mut mono = vec![ZPoly::zero(); k + 1];
            mono[k] = rl;
            q = zadd(&q, &mono);
            let c = joint_content(&[&r, &q, &vec![s.clone()]]);
            if c.deg() > 0 || c.content() > BigInt::one() {
                r = divide_all(&r, &c);
                q = divide_all(&q, &c);
                s = s.exact_div(&c).expect("content divides");
            }
        } else if !r.is_empty() {
            let c = joint_content(&[&r]);
            if c.deg() > 0 || c.content() > BigInt::one() {
                r = divide_all(&r, &c);
            }
        }
    }
    (s, q, r)
}

/// `a * b` in the Ore algebra.
pub fn ore_mul(a: &OreOperator, b: &OreOperator) -> Result<OreOperator> {
    a.same_algebra(b)?;
    let mut acc = OreOperator::zero(a.kind, &a.var);
    let mut pw = b.clone();
    for (i, c) in a.coeffs.iter().enumerate() {
        if i > 0 {
            pw = pw.gen_mul();
        }
        if !c.is_zero() {
            acc = acc.add(&pw.left_scale(c))?;
        }
    }
    Ok(acc)
}

/// `a = q*b + r` with `ord r < ord b`, over Q(x).
pub fn right_divmod(a: &OreOperator, b: &OreOperator) -> Result<(OreOperator, OreOperator)> {
    a.same_algebra(b)?;
    if b.is_zero() {
        return Err(HoloError::DivisionByZeroOperator);
    }
    let n = b.order();
    let mut r = a.clone();
    let mut q = OreOperator::zero(a.kind, &a.var);
    while !r.is_zero() && r.order() >= n {
        let k = r.order() - n;
        let c = &r.lc() / &a.kind.sigma_rat(&b.lc(), k as i64);
        let mut mono = vec![RatFun::zero(); k + 1];
        mono[k] = c;
        let mono = OreOperator::new(a.kind, &a.var, mono);
        let t = ore_mul(&mono, b)?;
        let mut nr = r.sub(&t)?;
        nr.coeffs.truncate(r.order());
        r = OreOperator::new(a.kind, &a.var, nr.coeffs);
        q = q.add(&mono)?;
    }
    Ok((q, r))
}

/// Greatest common right divisor, in canonical form.
pub fn gcrd(a: &OreOperator, b: &OreOperator) -> Result<OreOperator> {
    a.same_algebra(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(HoloError::DivisionByZeroOperator);
    }
    let mut x = a.to_zpolys();
    let mut y = b.to_zpolys();
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let (_, _, r) = pseudo_divmod(a.kind, &x, &y, false);
        x = y;
        y = if r.is_empty() { r } else { zop_primitive(r) };
    }
    Ok(OreOperator::from_zpolys(a.kind, &a.var, &zop_primitive(x)))
}

/// Least common left multiple via the extended Euclidean algorithm, in canonical form.
pub fn lclm(a: &OreOperator, b: &OreOperator) -> Result<OreOperator> {
    a.same_algebra(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(OreOperator::zero(a.kind, &a.var));
    }
    let kind = a.kind;
    let za = a.to_zpolys();
    let zb = b.to_zpolys();
    // invariant: r_i = u_i * za + v_i * zb
    let (mut r0, mut u0, mut v0) = (za.clone(), vec![ZPoly::one()], vec![]);
    let (mut r1, mut u1, mut v1) = (zb.clone(), vec![], vec![ZPoly::one()]);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut u0, &mut u1);
        std::mem::swap(&mut v0, &mut v1);
    }
    loop {
        let (s, q, r2) = pseudo_divmod(kind, &r0, &r1, true);
        let u2 = zsub(&zscale(&s, &u0), &zmul(kind, &q, &u1));
        let v2 = zsub(&zscale(&s, &v0), &zmul(kind, &q, &v1));
        if r2.is_empty() {
            let l = zmul(kind, &u2, &za);
            return Ok(OreOperator::from_zpolys(kind, &a.var, &zop_primitive(l)));
        }
        let c = joint_content(&[&r2, &u2, &v2]);
        let (r2, u2, v2) = if c.deg() > 0 || c.content() > BigInt::one() {
            (divide_all(&r2, &c), divide_all(&u2, &c), divide_all(&v2, &c))
        } else {
            (r2, u2, v2)
        };
        r0 = std::mem::replace(&mut r1, r2);
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }
}

/// Applies the operator to a term list (shift) or truncated series coefficients (diff).
///
/// A shift operator of order r on N terms gives N - r values; a differential
/// operator of order s on a series known mod x^N gives the result mod x^(N-s).
pub fn apply_operator(op: &OreOperator, data: &[Rational]) -> Result<Vec<Rational>> {
    if op.is_zero() {
        return Ok(vec![Rational::zero(); data.len()]);
    }
    let r = op.order();
    if data.len() <= r {
        return Err(HoloError::NotEnoughData(format!(
            "operator of order {r} needs more than {r} values, got {}",
            data.len()
        )));
    }
    let len = data.len() - r;
    match op.kind {
        OreKind::Shift => (0..len)
            .map(|n| {
                let x = Rational::from_integer(BigInt::from(n));
                let mut acc = Rational::zero();
                for (i, c) in op.coeffs.iter().enumerate() {
                    if c.is_zero() || data[n + i].is_zero() {
                        continue;
                    }
                    let v = c.eval(&x).ok_or_else(|| {
                        HoloError::InvalidParameter(format!("coefficient has a pole at {n}"))
                    })?;
                    acc += v * &data[n + i];
                }
                Ok(acc)
            })
            .collect(),
        OreKind::Diff => {
            if !op.is_polynomial() {
                return Err(HoloError::InvalidParameter(
                    "differential operator must have polynomial coefficients to act on series".into(),
                ));
            }
            let mut out = vec![Rational::zero(); len];
            for (i, c) in op.coeffs.iter().enumerate() {
                // coefficients of f^(i): (k+1)...(k+i) * f_{k+i}
                let deriv: Vec<Rational> = (0..data.len() - i)
                    .map(|k| {
                        let mut f = Rational::one();
                        for t in 1..=i {
                            f *= Rational::from_integer(BigInt::from(k + t));
                        }
                        f * &data[k + i]
                    })
                    .collect();
                for (j, pc) in c.num.coeffs().iter().enumerate() {
                    if pc.is_zero() {
                        continue;
                    }
                    for m in j..len {
                        if m - j < deriv.len() && !deriv[m - j].is_zero() {
                            out[m] += pc * &deriv[m - j];
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn op(kind: OreKind, c: &[&[i64]]) -> OreOperator {
        OreOperator::from_polys(kind, if kind == OreKind::Diff { "x" } else { "n" }, c.iter().map(|v| Poly::from_i64s(v)).collect())
    }

    #[test]
    fn commutation_rules() {
        let d = OreOperator::generator(OreKind::Diff, "x");
        let x = op(OreKind::Diff, &[&[0, 1]]);
        // D*x = x*D + 1
        assert_eq!(ore_mul(&d, &x).unwrap(), op(OreKind::Diff, &[&[1], &[0, 1]]));
        let s = OreOperator::generator(OreKind::Shift, "n");
        let n = op(OreKind::Shift, &[&[0, 1]]);
        // S*n = (n+1)*S
        assert_eq!(ore_mul(&s, &n).unwrap(), op(OreKind::Shift, &[&[], &[1, 1]]));
    }

    #[test]
    fn kind_mismatch() {
        let d = OreOperator::generator(OreKind::Diff, "x");
        let s = OreOperator::generator(OreKind::Shift, "n");
        assert_eq!(ore_mul(&d, &s), Err(HoloError::KindMismatch));
    }

    #[test]
    fn fibonacci_annihilated() {
        let f = op(OreKind::Shift, &[&[-1], &[-1], &[1]]);
        let v: Vec<Rational> = [0, 1, 1, 2, 3, 5].iter().map(|&x| rat(x)).collect();
        assert!(apply_operator(&f, &v).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn divmod_recombines() {
        let a = op(OreKind::Diff, &[&[1, 2], &[0, 0, 1], &[3, 1]]);
        let b = op(OreKind::Diff, &[&[1], &[0, 1]]);
        let (q, r) = right_divmod(&a, &b).unwrap();
        assert!(r.order() < b.order() || r.is_zero());
        assert_eq!(ore_mul(&q, &b).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn gcrd_and_lclm_of_constructed_pair() {
        for kind in [OreKind::Diff, OreKind::Shift] {
            let g = op(kind, &[&[1, 1], &[0, 2]]);
            let a = ore_mul(&op(kind, &[&[2], &[1, 1]]), &g).unwrap();
            let b = ore_mul(&op(kind, &[&[0, 1], &[3]]), &g).unwrap();
            assert_eq!(gcrd(&a, &b).unwrap(), g.canonical());
            let l = lclm(&a, &b).unwrap();
            assert!(right_divmod(&l, &a).unwrap().1.is_zero());
            assert!(right_divmod(&l, &b).unwrap().1.is_zero());
            assert!(l.order() <= 3);
        }
    }

    #[test]
    fn canonical_idempotent() {
        let a = op(OreKind::Diff, &[&[0, -2, -2], &[0, 4]]);
        let c = a.canonical();
        assert_eq!(c, op(OreKind::Diff, &[&[-1, -1], &[2]]));
        assert_eq!(c.canonical(), c);
    }
}
