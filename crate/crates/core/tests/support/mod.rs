#![allow(dead_code)]

use holonomic::arith::{Poly, Rational};
use holonomic::convert::{diffeq_to_rec, rec_to_diffeq};
use holonomic::eval::{nth_term, unroll};
use holonomic::guess::{guess_algeq, guess_rec, ArithmeticPath, GuessConfig, GuessReport, SeriesType};
use holonomic::ore::{gcrd, lclm, ore_mul, right_divmod, OreKind, OreOperator};
use holonomic::relation::Recurrence;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

pub fn strs(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|s| holonomic::arith::parse_rational(s).unwrap()).collect()
}

pub fn all_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Leading coefficient `c (n + a_1) ... (n + a_d)` with every `a_i >= 1`, so it never vanishes on n >= 0.
fn safe_leading(r: &mut StdRng, d: usize) -> Poly {
    let mut p = Poly::constant(Rational::from_integer(r.gen_range(1..=3i64).into()));
    for _ in 0..d {
        p = &p * &Poly::from_i64s(&[r.gen_range(1..=4), 1]);
    }
    p
}

fn random_poly(r: &mut StdRng, d: usize) -> Poly {
    let mut c: Vec<i64> = (0..=d).map(|_| r.gen_range(-5..=5)).collect();
    if c[0] == 0 {
        c[0] = r.gen_range(1..=5);
    }
    Poly::from_i64s(&c)
}

/// A random homogeneous recurrence of the given order and degree with generic initial values.
pub fn random_recurrence(r: &mut StdRng, order: usize, degree: usize) -> Recurrence {
    let mut coeffs: Vec<Poly> = (0..order).map(|_| random_poly(r, degree)).collect();
    coeffs.push(safe_leading(r, degree));
    let initial: Vec<Rational> = (0..order).map(|i| Rational::from_integer((r.gen_range(-9..=9i64) + if i == 0 { 10 } else { 0 }).into())).collect();
    Recurrence::new(coeffs, initial)
}

pub fn config(path: ArithmeticPath) -> GuessConfig {
    GuessConfig { path, series_type: SeriesType::Ogf, ..GuessConfig::default() }
}

/// Plants random recurrences, unrolls them and checks the guesser finds a relation of no larger
/// order that annihilates twice as many terms as it was shown.
pub fn plant_and_recover(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for case in 0..count {
        let order = r.gen_range(1..=2);
        let degree = r.gen_range(0..=2);
        let rec = random_recurrence(&mut r, order, degree);
        let shown = 2 * (order + 1) * (degree + 1) + order + 12;
        let long = unroll(&rec, 2 * shown).map_err(|e| e.to_string())?;
        let rep = guess_rec(&long[..shown], &config(ArithmeticPath::Modular)).map_err(|e| e.to_string())?;
        let found = rep.recurrence().ok_or_else(|| format!("case {case}: nothing found for {:?}", rec.coefficients))?;
        if found.order() > order {
            return Err(format!("case {case}: order {} > planted {order}", found.order()));
        }
        let res = found.operator().apply(&long).map_err(|e| e.to_string())?;
        if !all_zero(&res) {
            return Err(format!("case {case}: guessed relation fails beyond the shown terms"));
        }
        let again = unroll(found, 2 * shown).map_err(|e| e.to_string())?;
        if again != long {
            return Err(format!("case {case}: guessed relation does not regenerate the sequence"));
        }
    }
    Ok(())
}

/// Golden guessing inputs used for the path-equality property.
pub fn golden_inputs() -> Vec<(&'static str, Vec<Rational>)> {
    vec![
        ("catalan", ints(&[1, 1, 2, 5, 14, 42])),
        (
            "almkvist-zudilin",
            ints(&[
                1,
                -3,
                9,
                -3,
                -279,
                2997,
                -19431,
                65853,
                292329,
                -7202523,
                69363009,
                -407637387,
                702049401,
                17222388453,
                -261933431751,
            ]),
        ),
        ("central-binomial-squares", ints(&[1, 4, 36, 400, 4900, 63504, 853776, 11778624, 165636900, 2363904400])),
        ("apery", unroll(&apery(), 30).unwrap()),
        ("fibonacci", ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233])),
    ]
}

fn same(a: &GuessReport, b: &GuessReport) -> bool {
    a.relation == b.relation && a.order == b.order && a.degree == b.degree && a.series_type == b.series_type
}

pub fn path_equality() -> Result<(), String> {
    for (name, terms) in golden_inputs() {
        let m = guess_rec(&terms, &config(ArithmeticPath::Modular)).map_err(|e| e.to_string())?;
        let q = guess_rec(&terms, &config(ArithmeticPath::Rational)).map_err(|e| e.to_string())?;
        if m.relation.is_none() || !same(&m, &q) {
            return Err(format!("{name}: modular and rational guesses differ"));
        }
    }
    let motzkin = ints(&[1, 1, 2, 4, 9, 21, 51, 127, 323]);
    let m = guess_algeq(&motzkin, &config(ArithmeticPath::Modular)).map_err(|e| e.to_string())?;
    let q = guess_algeq(&motzkin, &config(ArithmeticPath::Rational)).map_err(|e| e.to_string())?;
    if m.relation.is_none() || !same(&m, &q) {
        return Err("motzkin: modular and rational algebraic guesses differ".into());
    }
    Ok(())
}

/// rec -> ODE -> rec on random recurrences; every output must annihilate the oracle data.
pub fn rec_ode_roundtrip(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for case in 0..count {
        let order = r.gen_range(1..=2);
        let degree = r.gen_range(0..=2);
        let rec = random_recurrence(&mut r, order, degree);
        let n = 40;
        let terms = unroll(&rec, n).map_err(|e| e.to_string())?;
        let ode = rec_to_diffeq(&rec).map_err(|e| format!("case {case}: {e}"))?;
        if !all_zero(&ode.operator().apply(&terms).map_err(|e| e.to_string())?) {
            return Err(format!("case {case}: ODE does not annihilate the series"));
        }
        let back = diffeq_to_rec(&ode).map_err(|e| format!("case {case}: {e}"))?;
        if !all_zero(&back.operator().apply(&terms).map_err(|e| e.to_string())?) {
            return Err(format!("case {case}: recovered recurrence does not annihilate the terms"));
        }
        if unroll(&back, n).map_err(|e| e.to_string())? != terms {
            return Err(format!("case {case}: recovered recurrence does not regenerate the terms"));
        }
    }
    Ok(())
}

fn random_operator(r: &mut StdRng, kind: OreKind, order: usize) -> OreOperator {
    let var = if kind == OreKind::Shift { "n" } else { "x" };
    let mut c: Vec<Poly> = (0..order)
        .map(|_| {
            let d = r.gen_range(0..=1);
            random_poly(r, d)
        })
        .collect();
    let d = r.gen_range(0..=1);
    c.push(safe_leading(r, d));
    OreOperator::from_polys(kind, var, c)
}

fn right_divides(d: &OreOperator, a: &OreOperator) -> Result<bool, String> {
    let (_, rem) = right_divmod(a, d).map_err(|e| e.to_string())?;
    Ok(rem.is_zero())
}

/// A = X G and B = Y G: the GCRD is a right multiple of G dividing both, the LCLM a left multiple
/// of both with order at most ord A + ord B - ord GCRD.
pub fn gcrd_lclm(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for case in 0..count {
        let kind = if case % 2 == 0 { OreKind::Shift } else { OreKind::Diff };
        let g = random_operator(&mut r, kind, 1);
        let ox = r.gen_range(1..=2);
        let x = random_operator(&mut r, kind, ox);
        let y = random_operator(&mut r, kind, 1);
        let a = ore_mul(&x, &g).map_err(|e| e.to_string())?;
        let b = ore_mul(&y, &g).map_err(|e| e.to_string())?;
        let d = gcrd(&a, &b).map_err(|e| e.to_string())?;
        if !(right_divides(&d, &a)? && right_divides(&d, &b)? && right_divides(&g, &d)?) {
            return Err(format!("case {case}: GCRD divisibility fails"));
        }
        if d.order() < g.order() {
            return Err(format!("case {case}: GCRD order {} below the planted factor", d.order()));
        }
        let l = lclm(&a, &b).map_err(|e| e.to_string())?;
        if !(right_divides(&a, &l)? && right_divides(&b, &l)?) {
            return Err(format!("case {case}: LCLM is not a common left multiple"));
        }
        if l.order() + d.order() > a.order() + b.order() || l.order() < a.order().max(b.order()) {
            return Err(format!("case {case}: LCLM order {} out of bounds", l.order()));
        }
    }
    Ok(())
}

pub fn apery() -> Recurrence {
    Recurrence::new(
        vec![
            Poly::from_i64s(&[1, 3, 3, 1]),
            Poly::from_i64s(&[-117, -231, -153, -34]),
            Poly::from_i64s(&[8, 12, 6, 1]),
        ],
        ints(&[1, 5]),
    )
}

pub fn catalan() -> Recurrence {
    Recurrence::new(vec![Poly::from_i64s(&[-2, -4]), Poly::from_i64s(&[2, 1])], ints(&[1]))
}

/// Binary splitting against plain unrolling for every N up to 200.
pub fn nth_matches_unroll(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let mut recs = vec![apery(), catalan()];
    for _ in 0..6 {
        let order = r.gen_range(1..=3);
        let degree = r.gen_range(0..=2);
        recs.push(random_recurrence(&mut r, order, degree));
    }
    for (i, rec) in recs.iter().enumerate() {
        let terms = unroll(rec, 201).map_err(|e| e.to_string())?;
        for (n, t) in terms.iter().enumerate() {
            let v = nth_term(rec, n).map_err(|e| e.to_string())?;
            if &v != t {
                return Err(format!("recurrence {i}: nth_term({n}) disagrees with unroll"));
            }
        }
    }
    Ok(())
}
