//! Guessing recurrences, differential equations and algebraic equations from terms.

use crate::arith::modular::PrimeSet;
use crate::arith::rational::Rational;
use crate::arith::Poly;
use crate::convert::{finish_diffeq, finish_recurrence};
use crate::error::{HoloError, Result};
use crate::linalg::{modular_kernel, rational_kernel, RationalMatrix};
use crate::relation::{integer_primitive, AlgebraicEquation, DiffEquation, Relation};
use crate::series;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticPath {
    Modular,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesType {
    Ogf,
    Egf,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GuessKind {
    Rec,
    Ode,
    Alg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessConfig {
    pub max_order: usize,
    /// `None` means as large as the data allows.
    pub max_degree: Option<usize>,
    pub margin: usize,
    pub validation: usize,
    pub path: ArithmeticPath,
    pub series_type: SeriesType,
    /// Never shrink the margin or the held-out block to fit the data.
    pub strict: bool,
}

impl Default for GuessConfig {
    fn default() -> Self {
        GuessConfig {
            max_order: 8,
            max_degree: None,
            margin: 3,
            validation: 5,
            path: ArithmeticPath::Modular,
            series_type: SeriesType::Auto,
            strict: false,
        }
    }
}

impl GuessConfig {
    pub fn check(&self) -> Result<()> {
        if self.margin < 1 {
            return Err(HoloError::InvalidParameter("margin must be at least 1".into()));
        }
        if self.max_order < 1 {
            return Err(HoloError::InvalidParameter("max order must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub series_type: SeriesType,
    pub order: usize,
    pub degree: usize,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessReport {
    pub kind: GuessKind,
    pub relation: Option<Relation>,
    pub series_type: Option<SeriesType>,
    pub order: Option<usize>,
    pub degree: Option<usize>,
    pub terms: usize,
    pub validation_terms: usize,
    pub primes_used: usize,
    pub trace: Vec<SweepEntry>,
}

fn falling(z: i64, i: usize) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..i as i64 {
        acc *= z - t;
    }
    acc
}

/// Ansatz data shared by all cells of one sweep.
struct Ansatz<'a> {
    kind: GuessKind,
    terms: &'a [Rational],
    powers: Vec<Vec<Rational>>,
}

impl<'a> Ansatz<'a> {
    fn new(kind: GuessKind, terms: &'a [Rational]) -> Self {
        Ansatz { kind, terms, powers: vec![series::one(terms.len())] }
    }

    fn rows(&self, r: usize) -> usize {
        match self.kind {
            GuessKind::Alg => self.terms.len(),
            _ => self.terms.len().saturating_sub(r),
        }
    }

    fn ensure_powers(&mut self, r: usize) {
        let n = self.terms.len();
        while self.powers.len() <= r {
            let next = series::mul(self.powers.last().unwrap(), self.terms, n);
            self.powers.push(next);
        }
    }

    /// Columns ordered by (i, k): coefficient of `x^k y^(i)` / `n^k u(n+i)` / `x^k y^i`.
    fn matrix(&mut self, r: usize, d: usize) -> RationalMatrix {
        if self.kind == GuessKind::Alg {
            self.ensure_powers(r);
        }
        let rows = self.rows(r);
        let cols = (r + 1) * (d + 1);
        let mut m = RationalMatrix::zeros(rows, cols);
        for row in 0..rows {
            for i in 0..=r {
                for k in 0..=d {
                    let c = i * (d + 1) + k;
                    let v = match self.kind {
                        GuessKind::Rec => {
                            let u = &self.terms[row + i];
                            if u.is_zero() {
                                continue;
                            }
                            u * Rational::from_integer(BigInt::from(row).pow(k as u32))
                        }
                        GuessKind::Ode => {
                            let idx = row as i64 - k as i64 + i as i64;
                            if idx < 0 {
                                continue;
                            }
                            let u = &self.terms[idx as usize];
                            if u.is_zero() {
                                continue;
                            }
                            u * Rational::from_integer(falling(idx, i))
                        }
                        GuessKind::Alg => {
                            if row < k {
                                continue;
                            }
                            self.powers[i][row - k].clone()
                        }
                    };
                    m.set(row, c, v);
                }
            }
        }
        m
    }
}

/// The recurrence ansatz matrix: row `j` holds `j^k u(j+i)` in column `i*(d+1)+k`.
pub fn build_guess_matrix(terms: &[Rational], r: usize, d: usize) -> Result<RationalMatrix> {
    if terms.len() <= r {
        return Err(HoloError::NotEnoughData(format!("{} terms cannot fit order {r}", terms.len())));
    }
    Ok(Ansatz::new(GuessKind::Rec, terms).matrix(r, d))
}

/// Kernel on the chosen arithmetic path.
pub fn kernel(m: &RationalMatrix, path: ArithmeticPath, primes: &mut PrimeSet) -> Result<(Vec<Vec<Rational>>, usize)> {
    match path {
        ArithmeticPath::Rational => Ok((rational_kernel(m), 0)),
        ArithmeticPath::Modular => {
            let k = modular_kernel(m, primes)?;
            Ok((k.basis, k.primes_used))
        }
    }
}

/// Deterministic choice inside a kernel: minimal degree of the top coefficient, then RREF order.
fn pick(basis: &[Vec<Rational>], r: usize, d: usize) -> Option<Vec<Rational>> {
    let cols = (r + 1) * (d + 1);
    let mut order: Vec<usize> = (0..=d).rev().map(|k| r * (d + 1) + k).collect();
    order.extend(0..r * (d + 1));
    let mut m = RationalMatrix::zeros(basis.len(), cols);
    for (i, v) in basis.iter().enumerate() {
        for (j, &c) in order.iter().enumerate() {
            m.set(i, j, v[c].clone());
        }
    }
    let piv = m.rref();
    let row = piv.iter().rposition(|&p| p <= d)?;
    let mut out = vec![Rational::zero(); cols];
    for (j, &c) in order.iter().enumerate() {
        out[c] = m.get(row, j).clone();
    }
    Some(out)
}

struct CellPlan {
    fit_rows: usize,
    validation: usize,
}

fn plan(rows: usize, unknowns: usize, cfg: &GuessConfig) -> Option<CellPlan> {
    if rows < unknowns {
        return None;
    }
    // equations beyond the U - 1 that always admit a solution
    let spare = rows - unknowns + 1;
    if spare >= cfg.margin + cfg.validation {
        return Some(CellPlan { fit_rows: rows - cfg.validation, validation: cfg.validation });
    }
    if cfg.strict {
        return None;
    }
    let v = spare.saturating_sub(cfg.margin);
    Some(CellPlan { fit_rows: rows - v, validation: v })
}

struct Found {
    vector: Vec<Rational>,
    order: usize,
    degree: usize,
    validation: usize,
}

fn sweep(
    kind: GuessKind,
    terms: &[Rational],
    cfg: &GuessConfig,
    st: SeriesType,
    limit: Option<(usize, usize)>,
    trace: &mut Vec<SweepEntry>,
    primes_used: &mut usize,
) -> Result<Option<Found>> {
    let mut ansatz = Ansatz::new(kind, terms);
    let mut primes = PrimeSet::default();
    let note = |trace: &mut Vec<SweepEntry>, r, d, s: &str| {
        trace.push(SweepEntry { series_type: st, order: r, degree: d, outcome: s.to_string() })
    };
    for r in 1..=cfg.max_order {
        if let Some((lr, _)) = limit {
            if r > lr {
                break;
            }
        }
        let rows = ansatz.rows(r);
        if rows == 0 {
            break;
        }
        let mut dmax = (rows / (r + 1)).checked_sub(1);
        if let (Some(dm), Some(cap)) = (dmax, cfg.max_degree) {
            dmax = Some(dm.min(cap));
        }
        if let Some((lr, ld)) = limit {
            if r == lr {
                dmax = dmax.map(|dm| dm.min(ld.saturating_sub(1)));
                if ld == 0 {
                    break;
                }
            }
        }
        let Some(dmax) = dmax else {
            note(trace, r, 0, "skipped: under-determined");
            continue;
        };
        if plan(rows, (r + 1) * (dmax + 1), cfg).is_none() {
            note(trace, r, dmax, "skipped: under-determined");
            continue;
        }
        let full = ansatz.matrix(r, dmax);
        let (k, used) = kernel(&full, cfg.path, &mut primes)?;
        *primes_used = (*primes_used).max(used);
        if k.is_empty() || pick(&k, r, dmax).is_none() {
            note(trace, r, dmax, "no relation at maximal degree");
            continue;
        }
        for d in 0..=dmax {
            let u = (r + 1) * (d + 1);
            let Some(p) = plan(rows, u, cfg) else {
                note(trace, r, d, "skipped: under-determined");
                continue;
            };
            let full = if d == dmax { full.clone() } else { ansatz.matrix(r, d) };
            let fit = full.take_rows(p.fit_rows);
            let (kf, used) = kernel(&fit, cfg.path, &mut primes)?;
            *primes_used = (*primes_used).max(used);
            if kf.is_empty() {
                note(trace, r, d, "no kernel");
                continue;
            }
            let (kv, used) = if p.validation == 0 { (kf, 0) } else { kernel(&full, cfg.path, &mut primes)? };
            *primes_used = (*primes_used).max(used);
            let Some(v) = pick(&kv, r, d) else {
                note(trace, r, d, if kv.is_empty() { "failed validation" } else { "only lower-order relations" });
                continue;
            };
            note(trace, r, d, "found");
            return Ok(Some(Found { vector: v, order: r, degree: d, validation: p.validation }));
        }
    }
    Ok(None)
}

fn egf_terms(terms: &[Rational]) -> Vec<Rational> {
    let mut f = BigInt::one();
    terms
        .iter()
        .enumerate()
        .map(|(n, v)| {
            if n > 0 {
                f *= n;
            }
            v / Rational::from_integer(f.clone())
        })
        .collect()
}

fn polys_of(v: &[Rational], r: usize, d: usize) -> Vec<Poly> {
    (0..=r).map(|i| Poly::new(v[i * (d + 1)..(i + 1) * (d + 1)].to_vec())).collect()
}

fn relation_of(kind: GuessKind, found: &Found, data: &[Rational]) -> Result<Relation> {
    let polys = polys_of(&found.vector, found.order, found.degree);
    let n = data.len();
    let take = |k: usize| -> Result<Vec<Rational>> {
        Ok(data[..k.min(n)].to_vec())
    };
    Ok(match kind {
        GuessKind::Rec => Relation::Rec(finish_recurrence(&polys, "n", 0, take)?),
        GuessKind::Ode => Relation::Ode(finish_diffeq(&polys, "x", take)?),
        GuessKind::Alg => Relation::Alg(AlgebraicEquation::new(integer_primitive(&polys), data[0].clone())),
    })
}

fn guess(kind: GuessKind, terms: &[Rational], cfg: &GuessConfig) -> Result<GuessReport> {
    cfg.check()?;
    if terms.len() < 6 {
        return Err(HoloError::NotEnoughData(format!("{} terms given, at least 6 needed", terms.len())));
    }
    if terms.iter().all(|t| t.is_zero()) {
        return Err(HoloError::InconsistentTerms("all terms are zero".into()));
    }
    let mut trace = Vec::new();
    let mut primes_used = 0;
    let types: &[SeriesType] = match cfg.series_type {
        SeriesType::Ogf => &[SeriesType::Ogf],
        SeriesType::Egf => &[SeriesType::Egf],
        SeriesType::Auto => &[SeriesType::Ogf, SeriesType::Egf],
    };
    let mut best: Option<(Found, SeriesType, Vec<Rational>)> = None;
    for &st in types {
        let data = if st == SeriesType::Egf { egf_terms(terms) } else { terms.to_vec() };
        let limit = best.as_ref().map(|(f, _, _)| (f.order, f.degree));
        if let Some((r, d)) = limit {
            if r == 1 && d == 0 {
                break;
            }
        }
        if let Some(f) = sweep(kind, &data, cfg, st, limit, &mut trace, &mut primes_used)? {
            best = Some((f, st, data));
        }
    }
    let mut report = GuessReport {
        kind,
        relation: None,
        series_type: None,
        order: None,
        degree: None,
        terms: terms.len(),
        validation_terms: 0,
        primes_used,
        trace,
    };
    if let Some((f, st, data)) = best {
        report.relation = Some(relation_of(kind, &f, &data)?);
        report.series_type = Some(st);
        report.order = Some(f.order);
        report.degree = Some(f.degree);
        report.validation_terms = f.validation;
    }
    Ok(report)
}

pub fn guess_rec(terms: &[Rational], cfg: &GuessConfig) -> Result<GuessReport> {
    guess(GuessKind::Rec, terms, cfg)
}

pub fn guess_diffeq(terms: &[Rational], cfg: &GuessConfig) -> Result<GuessReport> {
    guess(GuessKind::Ode, terms, cfg)
}

pub fn guess_algeq(terms: &[Rational], cfg: &GuessConfig) -> Result<GuessReport> {
    guess(GuessKind::Alg, terms, cfg)
}

impl GuessReport {
    pub fn recurrence(&self) -> Option<&crate::relation::Recurrence> {
        match &self.relation {
            Some(Relation::Rec(r)) => Some(r),
            _ => None,
        }
    }

    pub fn diffeq(&self) -> Option<&DiffEquation> {
        match &self.relation {
            Some(Relation::Ode(r)) => Some(r),
            _ => None,
        }
    }

    pub fn algeq(&self) -> Option<&AlgebraicEquation> {
        match &self.relation {
            Some(Relation::Alg(r)) => Some(r),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn example_one_kernel() {
        let m = build_guess_matrix(&ints(&[1, 4, 36, 400, 4900, 63504, 853776]), 1, 2).unwrap();
        assert_eq!((m.rows, m.cols), (6, 6));
        let k = rational_kernel(&m);
        assert_eq!(k, vec![ints(&[-4, -16, -16, 1, 2, 1])]);
    }

    #[test]
    fn catalan() {
        let rep = guess_rec(&ints(&[1, 1, 2, 5, 14, 42]), &GuessConfig::default()).unwrap();
        let r = rep.recurrence().unwrap();
        assert_eq!(r.coefficients, vec![Poly::from_i64s(&[-2, -4]), Poly::from_i64s(&[2, 1])]);
        assert_eq!(r.initial, ints(&[1]));
    }

    #[test]
    fn factorial_is_egf() {
        let rep = guess_rec(&ints(&[1, 1, 2, 6, 24, 120, 720, 5040]), &GuessConfig::default()).unwrap();
        assert_eq!(rep.series_type, Some(SeriesType::Egf));
        assert_eq!(rep.recurrence().unwrap().coefficients, vec![Poly::from_i64s(&[-1]), Poly::one()]);
    }

    #[test]
    fn random_refused() {
        let rep = guess_rec(&ints(&[3, -7, 2, 11, 5, -13]), &GuessConfig::default()).unwrap();
        assert!(rep.relation.is_none());
        assert!(!rep.trace.is_empty());
    }

    #[test]
    fn motzkin_alg() {
        let rep = guess_algeq(&ints(&[1, 1, 2, 4, 9, 21, 51, 127, 323]), &GuessConfig::default()).unwrap();
        let a = rep.algeq().unwrap();
        assert_eq!(
            a.coefficients_y,
            vec![Poly::one(), Poly::from_i64s(&[-1, 1]), Poly::from_i64s(&[0, 0, 1])]
        );
    }

    #[test]
    fn binomial_squares_ode() {
        let mut t = Vec::new();
        let mut c = BigInt::one();
        for n in 0..11i64 {
            t.push(Rational::from_integer(&c * &c));
            c = c * (2 * (2 * n + 1)) / (n + 1);
        }
        let rep = guess_diffeq(&t, &GuessConfig::default()).unwrap();
        let d = rep.diffeq().unwrap();
        assert_eq!(
            d.coefficients,
            vec![Poly::from_i64s(&[4]), Poly::from_i64s(&[-1, 32]), Poly::from_i64s(&[0, -1, 16])]
        );
    }

    #[test]
    fn paths_agree() {
        let t = ints(&[1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798]);
        let mut cfg = GuessConfig::default();
        let a = guess_rec(&t, &cfg).unwrap();
        cfg.path = ArithmeticPath::Rational;
        let b = guess_rec(&t, &cfg).unwrap();
        assert_eq!(a.relation, b.relation);
        assert!(a.relation.is_some());
    }
}
