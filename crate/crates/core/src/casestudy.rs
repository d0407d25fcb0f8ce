//! End-to-end reproductions: the Yang–Zagier numbers and the Iso monotonicity identity.

use crate::algebraic::{algeq_to_diffeq, series_from_algeq};
use crate::arith::rational::{pochhammer, rat, ratio, Rational};
use crate::arith::Poly;
use crate::closure::{diffeq_derivative, diffeq_mul, diffeq_pow, geometric_scale, rec_mul};
use crate::convert::{diffeq_to_rec, homogenize_diffeq, rec_to_diffeq};
use crate::error::{HoloError, Result};
use crate::eval::{series_from_diffeq, unroll, NamedSeries};
use crate::guess::{guess_algeq, guess_diffeq, guess_rec, GuessConfig};
use crate::ore::{gcrd, lclm, right_divmod, OreKind, OreOperator};
use crate::relation::{AlgebraicEquation, DiffEquation, Recurrence};
use crate::series;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    pub checkpoints: Vec<Checkpoint>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl CaseReport {
    fn new(name: &str) -> Self {
        CaseReport { name: name.into(), checkpoints: vec![], notes: vec![], pass: true }
    }

    fn check(&mut self, label: &str, expected: impl ToString, computed: impl ToString) -> bool {
        let (e, c) = (expected.to_string(), computed.to_string());
        let pass = e == c;
        self.push(label, e, c, pass)
    }

    fn flag(&mut self, label: &str, expected: impl ToString, computed: impl ToString, pass: bool) -> bool {
        self.push(label, expected.to_string(), computed.to_string(), pass)
    }

    fn push(&mut self, label: &str, expected: String, computed: String, pass: bool) -> bool {
        self.pass &= pass;
        self.checkpoints.push(Checkpoint { label: label.into(), expected, computed, pass });
        pass
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.name, if self.pass { "PASS" } else { "FAIL" });
        for c in &self.checkpoints {
            s.push_str(&format!("  [{}] {}\n", if c.pass { "ok" } else { "FAIL" }, c.label));
            if !c.pass {
                s.push_str(&format!("      expected: {}\n      computed: {}\n", c.expected, c.computed));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

/// `c * prod factors`, each factor given by ascending integer coefficients.
fn product(c: BigInt, factors: &[&[i64]]) -> Poly {
    let mut p = Poly::constant(Rational::from_integer(c));
    for f in factors {
        p = &p * &Poly::from_i64s(f);
    }
    p
}

fn pw(b: u64, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

fn canon_shift(c: Vec<Poly>) -> OreOperator {
    OreOperator::from_polys(OreKind::Shift, "n", c).canonical()
}

fn canon_diff(c: Vec<Poly>) -> OreOperator {
    OreOperator::from_polys(OreKind::Diff, "x", c).canonical()
}

/// Zagier's recurrence for `c_n`, shifted to start at `c_0`.
pub fn yz_rec_c() -> Recurrence {
    let p0 = product(BigInt::from(80352000), &[&[0, 1], &[-1, 5], &[-2, 5], &[-4, 5]]);
    let p1 = Poly::from_i64s(&[14092603, -39189168, 39118320, -16588800, 2592000]).scale(&rat(25));
    let p2 = Poly::from_i64s(&[19739, -18900, 4500]).scale(&rat(20));
    let c1 = Rational::new(BigInt::from(-161), pw(2, 10) * pw(3, 5));
    let c2 = Rational::new(BigInt::from(26605753), pw(2, 23) * pw(3, 12) * pw(5, 2));
    Recurrence::new(vec![Poly::one(), p2.shift_int(3), p1.shift_int(3), p0.shift_int(3)], vec![rat(1), c1, c2])
}

pub fn yz_w() -> Rational {
    Rational::from_integer(pw(2, 10) * pw(3, 5) * pw(5, 4))
}

/// `a_n = c_n (3/5)_n (4/5)_n w^n` computed directly from the terms of `c`.
pub fn yz_terms_direct(n: usize) -> Result<Vec<Rational>> {
    let c = unroll(&yz_rec_c(), n)?;
    let w = yz_w();
    Ok(c.iter()
        .enumerate()
        .map(|(k, v)| v * pochhammer(&ratio(3, 5), k) * pochhammer(&ratio(4, 5), k) * num_traits::pow(w.clone(), k))
        .collect())
}

pub fn yz_rec_a() -> OreOperator {
    let p3 = product(BigInt::from(31), &[&[3, 1], &[11, 5]]);
    let p2 = Poly::from_i64s(&[10644379, 27559152, 29787120, 14515200, 2592000]).scale(&rat(60));
    let p1 = product(pw(2, 14) * pw(3, 6) * pw(5, 2), &[&[8, 5], &[9, 5], &[3539, 8100, 4500]]);
    let p0 = product(pw(2, 22) * pw(3, 11) * pw(5, 3), &[&[8, 5], &[3, 5], &[9, 5], &[4, 5]]);
    canon_shift(vec![p0, p1, p2, p3])
}

pub fn yz_rec_guess() -> OreOperator {
    let q2 = product(BigInt::one(), &[&[6, 5], &[2, 1], &[43, 60]]);
    let q1 = Poly::from_i64s(&[290603, 836940, 759600, 216000]).scale(&rat(300));
    let q0 = product(pw(2, 12) * pw(3, 6) * pw(5, 2), &[&[4, 5], &[3, 5], &[103, 60]]);
    canon_shift(vec![q0, q1, q2])
}

pub fn yz_deq_guess() -> OreOperator {
    let q2 = product(BigInt::from(5), &[&[0, 1], &[-31, 302400], &[1, 216000, 373248000]]);
    let q1 = Poly::new(vec![
        Rational::from_integer(big("-31")),
        Rational::from_integer(big("-61473600")),
        Rational::from_integer(big("64571904000")),
        Rational::from_integer(big("1354442342400000")),
    ]);
    let q0 = Poly::from_i64s(&[-4991, -240974784, 902961561600]).scale(&rat(300));
    canon_diff(vec![q0, q1, q2])
}

fn order_pair(r: usize, o: usize) -> String {
    format!("({r}, {o})")
}

/// Steps of the Yang–Zagier study: closure, guessing, LCLM and GCRD proofs, order table.
pub fn run_yang_zagier() -> Result<CaseReport> {
    let mut rep = CaseReport::new("yang-zagier");
    let t0 = Instant::now();
    let rec_c = yz_rec_c();
    let ph3 = Recurrence::new(vec![Poly::new(vec![ratio(-3, 5), rat(-1)]), Poly::one()], vec![rat(1)]);
    let ph4 = Recurrence::new(vec![Poly::new(vec![ratio(-4, 5), rat(-1)]), Poly::one()], vec![rat(1)]);
    let geo = Recurrence::new(vec![Poly::constant(-yz_w()), Poly::one()], vec![rat(1)]);
    let step = rec_mul(&rec_mul(&rec_c, &ph3)?, &ph4)?;
    let rec_a = rec_mul(&step, &geo)?;
    rep.check("closure_rec_a", yz_rec_a(), rec_a.canonical_operator());
    let scaled = geometric_scale(&step, &yz_w())?;
    rep.check("geometric_scale_matches", rec_a.canonical_operator(), scaled.canonical_operator());

    let a = yz_terms_direct(51)?;
    let from_rec = unroll(&rec_a, 51)?;
    rep.check("a_terms", "1, -48300, 7981725900, -1469166887370000", join(&from_rec[..4]));
    rep.check("a_terms_agree_51", join(&a), join(&from_rec));

    let cfg = GuessConfig::default();
    let g6 = guess_rec(&a, &cfg)?;
    let rec_guess = g6.recurrence().cloned().ok_or(HoloError::NoRelation)?;
    rep.check("guessed_rec", yz_rec_guess(), rec_guess.canonical_operator());
    rep.check(
        "guessed_rec_leading",
        Poly::from_zpoly(&yz_rec_guess().to_zpolys()[2]).display_var("n"),
        rec_guess.coefficients[rec_guess.order()].display_var("n"),
    );

    let deq_a = rec_to_diffeq(&rec_a)?;
    let deq_a_guess = rec_to_diffeq(&rec_guess)?;
    let l_a = deq_a.operator();
    let l = lclm(&l_a, &deq_a_guess.operator())?;
    let mut deq_l = DiffEquation::from_operator(&l, vec![]);
    deq_l.initial = a[..deq_l.required_initial().min(a.len())].to_vec();
    let back = diffeq_to_rec(&deq_l)?;
    rep.check("lclm_recovers_rec_a", yz_rec_a(), back.canonical_operator());
    rep.check("lclm_initial_terms", join(&a[..3]), join(&unroll(&back, 3)?));

    let g7 = guess_diffeq(&a, &cfg)?;
    let deq_guess2 = g7.diffeq().cloned().ok_or(HoloError::NoRelation)?;
    let l7 = deq_guess2.operator();
    rep.check("guessed_ode", yz_deq_guess(), l7.canonical());
    rep.check("gcrd_is_guessed_ode", yz_deq_guess(), gcrd(&l_a, &l7)?);
    let (_, rem) = right_divmod(&l_a, &l7)?;
    rep.flag("guessed_ode_right_divides_l_a", "remainder 0", if rem.is_zero() { "remainder 0".into() } else { rem.to_string() }, rem.is_zero());
    rep.check("guessed_ode_series_51", join(&a), join(&series_from_diffeq(&deq_guess2, 51)?));
    let rec7 = diffeq_to_rec(&deq_guess2)?;
    rep.check("guessed_ode_rec_terms", join(&a), join(&unroll(&rec7, 51)?));

    let table = [
        ("closure", rec_a.order(), deq_a.order(), (3, 4)),
        ("guess-rec", rec_guess.order(), deq_a_guess.order(), (2, 3)),
        ("guess-ode", rec7.order(), deq_guess2.order(), (3, 2)),
    ];
    for (name, r, o, (er, eo)) in table {
        rep.check(&format!("orders_{name}"), order_pair(er, eo), order_pair(r, o));
    }
    rep.notes.push(format!("elapsed {:.2} s", t0.elapsed().as_secs_f64()));
    Ok(rep)
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Number of terms used for the algebraic guess.
pub const ALG_TERMS: usize = 120;

/// Guess and prove an annihilating polynomial for `2F1(a, b; c; x)^12`.
/// Guess-and-prove for `f^12`; returns the polynomial and its homogeneous ODE when found.
pub fn algebraicity_of(
    rep: &mut CaseReport,
    tag: &str,
    f: &NamedSeries,
) -> Result<Option<(AlgebraicEquation, DiffEquation)>> {
    let base = f.series(ALG_TERMS)?;
    let y = series::pow(&base, 12, ALG_TERMS);
    let cfg = GuessConfig { max_order: 20, series_type: crate::guess::SeriesType::Ogf, ..GuessConfig::default() };
    let t = Instant::now();
    let g = guess_algeq(&y, &cfg)?;
    rep.notes.push(format!("{tag}: guess took {:.2} s", t.elapsed().as_secs_f64()));
    let Some(p) = g.algeq().cloned() else {
        rep.flag(&format!("{tag}_found"), "a polynomial", "none", false);
        return Ok(None);
    };
    rep.check(&format!("{tag}_deg_y"), 20, p.degree_y());
    rep.check(&format!("{tag}_deg_x"), 4, p.degree_x());
    let dy0 = Poly::new(p.dy().iter().map(|c| c.coeff(0)).collect()).eval(&p.seed);
    rep.flag(&format!("{tag}_seed_regular"), "nonzero", dy0.to_string(), !dy0.is_zero());
    let sub = series::eval_bivariate(&p.coefficients_y, &y[..100], 100);
    let zero = sub.iter().all(|v| v.is_zero());
    rep.flag(&format!("{tag}_annihilates_mod_x100"), "0", if zero { "0" } else { "nonzero" }, zero);

    let t = Instant::now();
    let deq = algeq_to_diffeq(&p)?;
    let deqh = if deq.is_homogeneous() { deq.clone() } else { homogenize_diffeq(&deq)? };
    rep.notes.push(format!("{tag}: algebraic ODE of order {} in {:.2} s", deqh.order(), t.elapsed().as_secs_f64()));
    let t = Instant::now();
    let deqf = diffeq_pow(&f.diffeq()?, 12)?;
    rep.notes.push(format!("{tag}: power ODE of order {} in {:.2} s", deqf.order(), t.elapsed().as_secs_f64()));
    rep.check(&format!("{tag}_same_ode"), deqf.canonical_operator(), deqh.canonical_operator());
    let g = gcrd(&deqh.operator(), &deqf.operator())?;
    rep.check(&format!("{tag}_gcrd"), deqh.canonical_operator(), g);
    let need = deqf.required_initial().max(deqh.required_initial());
    let from_p = series_from_algeq(&p, need)?;
    rep.check(&format!("{tag}_initial_terms"), join(&y[..need]), join(&from_p));
    Ok(Some((p, deqh)))
}

/// `f2^12` through the branch of `P` at `y(0) = 0`.
///
/// `x^(1/3) f2` solves the hypergeometric equation of `f1`, so the operator
/// proved for `f1^12` also kills `x^4 f2^12`, and the root of `P` through 0
/// is a power series solution of it as well. Agreement beyond the uniqueness
/// depth identifies the two, and `P(x, lambda x^4 y) / x^4` annihilates `f2^12`.
fn second_branch(rep: &mut CaseReport, p: &AlgebraicEquation, deqh: &DiffEquation, f2: &NamedSeries) -> Result<()> {
    let n = 100;
    let y2 = series::pow(&f2.series(ALG_TERMS)?, 12, ALG_TERMS);
    let cfg = GuessConfig { max_order: 20, series_type: crate::guess::SeriesType::Ogf, ..GuessConfig::default() };
    let direct = guess_algeq(&y2, &cfg)?;
    rep.notes.push(format!(
        "f2: direct guess on {ALG_TERMS} terms with y-degree <= 20 found {}",
        if direct.relation.is_some() { "a polynomial" } else { "nothing" }
    ));
    let c = &p.coefficients_y;
    let p0_monomial = c[0].coeffs().iter().take(4).all(|v| v.is_zero()) && c[0].deg() == 4;
    rep.flag("f2_p0_is_c_x4", "c*x^4", c[0].display_var("x"), p0_monomial);
    let p1 = c[1].coeff(0);
    if !p0_monomial || p1.is_zero() {
        rep.flag("f2_branch_regular", "P_y(0, 0) != 0", p1.to_string(), false);
        return Ok(());
    }
    let lambda = -c[0].coeff(4) / &p1;
    let root = crate::algebraic::algebraic_series(&AlgebraicEquation::new(c.clone(), Rational::zero()), n)?;
    let mut z = vec![Rational::zero(); 4];
    z.extend(y2.iter().take(n - 4).map(|v| v * &lambda));
    rep.check("f2_branch_agrees_100", join(&root), join(&z));
    let depth = deqh.required_initial();
    rep.flag("f2_uniqueness_depth", format!("<= {n}"), depth, depth <= n);
    let killed = crate::ore::apply_operator(&deqh.operator(), &z)?.iter().all(|v| v.is_zero());
    rep.flag("f2_power_ode_kills_branch", "0", if killed { "0" } else { "nonzero" }, killed);

    let mut scaled = Vec::with_capacity(c.len());
    let mut mono = Poly::one();
    let step = &Poly::new(vec![Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero(), lambda.clone()]);
    for (i, ci) in c.iter().enumerate() {
        let t = ci * &mono;
        scaled.push(Poly::new(t.coeffs().iter().skip(4).cloned().collect()));
        if i + 1 < c.len() {
            mono = &mono * step;
        }
    }
    let p2 = AlgebraicEquation::new(scaled, Rational::one()).canonical();
    rep.check("f2_deg_y", 20, p2.degree_y());
    rep.notes.push(format!("f2: minimal polynomial of f2^12 has x-degree {}", p2.degree_x()));
    let sub = series::eval_bivariate(&p2.coefficients_y, &y2[..n], n);
    let zero = sub.iter().all(|v| v.is_zero());
    rep.flag("f2_annihilates_mod_x100", "0", if zero { "0" } else { "nonzero" }, zero);
    Ok(())
}

pub fn run_yang_zagier_algebraicity() -> Result<CaseReport> {
    let mut rep = CaseReport::new("yang-zagier-algebraicity");
    let f1 = NamedSeries::TwoF1 { a: ratio(-1, 60), b: ratio(11, 60), c: ratio(2, 3) };
    let f2 = NamedSeries::TwoF1 { a: ratio(19, 60), b: ratio(31, 60), c: ratio(4, 3) };
    if let Some((p, deqh)) = algebraicity_of(&mut rep, "f1", &f1)? {
        second_branch(&mut rep, &p, &deqh, &f2)?;
    }
    rep.notes.push(format!("{ALG_TERMS} series terms were used for the guess; annihilation is checked modulo x^100"));
    Ok(rep)
}

/// Iso identity at a fixed rational `a`: `w_a'(x)/(a(a-1)) (1+x)^(a+1)/(1-x)^(2a) = 2F1(a, a+1; 2; x)`.
pub fn run_iso(a: &Rational) -> Result<CaseReport> {
    if a.is_zero() || a.is_one() {
        return Err(HoloError::InvalidParameter("a must differ from 0 and 1".into()));
    }
    let mut rep = CaseReport::new(&format!("iso a={a}"));
    let f = NamedSeries::TwoF1 { a: -a.clone(), b: -a.clone(), c: rat(1) };
    let p1 = NamedSeries::Pow1p { c: -a.clone() };
    let w = diffeq_mul(&f.diffeq()?, &p1.diffeq()?)?;
    let dw = diffeq_derivative(&w)?;
    let up = NamedSeries::Pow1p { c: a + rat(1) };
    let down = NamedSeries::PowLinear { s: rat(-1), c: a * rat(-2) };
    let lhs = diffeq_mul(&diffeq_mul(&dw, &up.diffeq()?)?, &down.diffeq()?)?;
    let scale = a * (a - rat(1));
    let l = lhs.operator();
    rep.notes.push(format!("closure operator L has order {}", l.order()));

    let rhs = NamedSeries::TwoF1 { a: a.clone(), b: a + rat(1), c: rat(2) };
    let l_guess = rhs.diffeq()?.operator();
    rep.check("gcrd_is_l_guess", l_guess.canonical(), gcrd(&l, &l_guess)?);

    let n = 50;
    let lhs_series: Vec<Rational> = series_from_diffeq(&lhs, n)?.iter().map(|v| v / &scale).collect();
    let rhs_series = rhs.series(n)?;
    rep.check("series_agree_50", join(&rhs_series), join(&lhs_series));
    let first = vec![
        rat(1),
        (a + rat(1)) * a / rat(2),
        (a + rat(2)) * (a + rat(1)) * (a + rat(1)) * a / rat(12),
    ];
    rep.check("leading_coefficients", join(&first), join(&lhs_series[..3]));

    let cfg = GuessConfig { series_type: crate::guess::SeriesType::Ogf, ..GuessConfig::default() };
    let g = guess_rec(&lhs_series[..10], &cfg)?;
    let expect = canon_shift(vec![
        -&(&Poly::linear(a + rat(1)) * &Poly::linear(a.clone())),
        product(BigInt::one(), &[&[2, 1], &[1, 1]]),
    ]);
    let got = g.recurrence().map(|r| r.canonical_operator().to_string()).unwrap_or_else(|| "none".into());
    rep.check("guessed_recurrence", expect, got);
    let nonneg = rhs_series.iter().all(|v| !v.is_negative());
    rep.flag("rhs_nonnegative_50", "all >= 0", if nonneg { "all >= 0" } else { "negative entry" }, nonneg);
    rep.notes.push("monotonicity is evidenced at this sample of a, not proven for all a".into());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yz_pipeline_passes() {
        let rep = run_yang_zagier().unwrap();
        eprintln!("{}", rep.to_text());
        assert!(rep.pass);
    }

    #[test]
    #[ignore]
    fn algebraicity_timing() {
        let rep = run_yang_zagier_algebraicity().unwrap();
        eprintln!("{}", rep.to_text());
        assert!(rep.pass);
    }

    #[test]
    fn iso_half() {
        let rep = run_iso(&ratio(1, 2)).unwrap();
        eprintln!("{}", rep.to_text());
        assert!(rep.pass);
    }
}
