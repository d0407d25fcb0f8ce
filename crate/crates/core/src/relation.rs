//! Recurrences, differential equations and algebraic equations with initial data.

use crate::arith::rational::{serde_rational, serde_rational_vec, Rational};
use crate::arith::roots::nonneg_integer_roots;
use crate::arith::Poly;
use crate::ore::{OreKind, OreOperator};
use serde::{Deserialize, Serialize};

/// `sum_i c_i(n) u(n+i) = g(n)`; the relation is used at every `n` whose
/// target index `n + r` lies beyond the supplied initial terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RelationJson", try_from = "RelationJson")]
pub struct Recurrence {
    pub variable: String,
    pub coefficients: Vec<Poly>,
    pub initial: Vec<Rational>,
    pub inhomogeneous: Option<Poly>,
}

/// `sum_i p_i(x) y^(i)(x) = g(x)` with initial Taylor coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RelationJson", try_from = "RelationJson")]
pub struct DiffEquation {
    pub variable: String,
    pub coefficients: Vec<Poly>,
    pub initial: Vec<Rational>,
    pub inhomogeneous: Option<Poly>,
}

/// `sum_i P_i(x) y^i = 0` together with the value `y(0)` of the wanted branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicEquation {
    pub coefficients_y: Vec<Poly>,
    #[serde(with = "serde_rational")]
    pub seed: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RelationJson {
    kind: String,
    #[serde(default)]
    variable: Option<String>,
    coefficients: Vec<Poly>,
    #[serde(with = "serde_rational_vec", default)]
    initial: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inhomogeneous: Option<Poly>,
}

impl From<Recurrence> for RelationJson {
    fn from(r: Recurrence) -> Self {
        RelationJson {
            kind: "rec".into(),
            variable: Some(r.variable),
            coefficients: r.coefficients,
            initial: r.initial,
            inhomogeneous: r.inhomogeneous.filter(|g| !g.is_zero()),
        }
    }
}

impl From<DiffEquation> for RelationJson {
    fn from(r: DiffEquation) -> Self {
        RelationJson {
            kind: "ode".into(),
            variable: Some(r.variable),
            coefficients: r.coefficients,
            initial: r.initial,
            inhomogeneous: r.inhomogeneous.filter(|g| !g.is_zero()),
        }
    }
}

fn trim(mut c: Vec<Poly>) -> Vec<Poly> {
    while c.last().is_some_and(|p| p.is_zero()) {
        c.pop();
    }
    c
}

impl TryFrom<RelationJson> for Recurrence {
    type Error = String;
    fn try_from(j: RelationJson) -> std::result::Result<Self, String> {
        if j.kind != "rec" {
            return Err(format!("expected kind \"rec\", found {:?}", j.kind));
        }
        let c = trim(j.coefficients);
        if c.is_empty() {
            return Err("recurrence needs a nonzero coefficient".into());
        }
        Ok(Recurrence {
            variable: j.variable.unwrap_or_else(|| "n".into()),
            coefficients: c,
            initial: j.initial,
            inhomogeneous: j.inhomogeneous.filter(|g| !g.is_zero()),
        })
    }
}

impl TryFrom<RelationJson> for DiffEquation {
    type Error = String;
    fn try_from(j: RelationJson) -> std::result::Result<Self, String> {
        if j.kind != "ode" {
            return Err(format!("expected kind \"ode\", found {:?}", j.kind));
        }
        let c = trim(j.coefficients);
        if c.is_empty() {
            return Err("differential equation needs a nonzero coefficient".into());
        }
        Ok(DiffEquation {
            variable: j.variable.unwrap_or_else(|| "x".into()),
            coefficients: c,
            initial: j.initial,
            inhomogeneous: j.inhomogeneous.filter(|g| !g.is_zero()),
        })
    }
}

impl Recurrence {
    pub fn new(coefficients: Vec<Poly>, initial: Vec<Rational>) -> Self {
        let c = trim(coefficients);
        assert!(!c.is_empty(), "recurrence needs a nonzero coefficient");
        Recurrence { variable: "n".into(), coefficients: c, initial, inhomogeneous: None }
    }

    pub fn from_operator(op: &OreOperator, initial: Vec<Rational>) -> Self {
        assert_eq!(op.kind, OreKind::Shift);
        let mut r = Recurrence::new(op.polys(), initial);
        r.variable = op.var.clone();
        r
    }

    pub fn with_inhomogeneous(mut self, g: Poly) -> Self {
        self.inhomogeneous = if g.is_zero() { None } else { Some(g) };
        self
    }

    /// The sequence that vanishes identically.
    pub fn zero_sequence() -> Self {
        Recurrence::new(vec![Poly::one()], vec![])
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inhomogeneous.as_ref().is_none_or(|g| g.is_zero())
    }

    pub fn operator(&self) -> OreOperator {
        OreOperator::from_polys(OreKind::Shift, &self.variable, self.coefficients.clone())
    }

    /// Canonical form of the operator only.
    pub fn canonical_operator(&self) -> OreOperator {
        self.operator().canonical()
    }

    /// Indices that must be given for the sequence to be determined below `limit`.
    pub fn missing_indices(&self, limit: usize) -> Vec<usize> {
        let r = self.order();
        let have = self.initial.len();
        let mut out: Vec<usize> = (have..r.min(limit)).collect();
        for j in nonneg_integer_roots(&self.coefficients[r]) {
            let idx = j + r;
            if idx >= have && idx < limit && idx >= r {
                out.push(idx);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `max(r, 1 + largest index j + r with c_r(j) = 0)`.
    pub fn required_initial(&self) -> usize {
        let r = self.order();
        nonneg_integer_roots(&self.coefficients[r]).into_iter().map(|j| j + r + 1).fold(r, usize::max)
    }

    /// Keeps only the initial terms that are actually needed.
    pub fn trimmed(mut self) -> Self {
        let need = self.required_initial();
        self.initial.truncate(need);
        self
    }
}

impl DiffEquation {
    pub fn new(coefficients: Vec<Poly>, initial: Vec<Rational>) -> Self {
        let c = trim(coefficients);
        assert!(!c.is_empty(), "differential equation needs a nonzero coefficient");
        DiffEquation { variable: "x".into(), coefficients: c, initial, inhomogeneous: None }
    }

    pub fn from_operator(op: &OreOperator, initial: Vec<Rational>) -> Self {
        assert_eq!(op.kind, OreKind::Diff);
        let mut d = DiffEquation::new(op.polys(), initial);
        d.variable = op.var.clone();
        d
    }

    pub fn with_inhomogeneous(mut self, g: Poly) -> Self {
        self.inhomogeneous = if g.is_zero() { None } else { Some(g) };
        self
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inhomogeneous.as_ref().is_none_or(|g| g.is_zero())
    }

    pub fn operator(&self) -> OreOperator {
        OreOperator::from_polys(OreKind::Diff, &self.variable, self.coefficients.clone())
    }

    pub fn canonical_operator(&self) -> OreOperator {
        self.operator().canonical()
    }

    /// Number of Taylor coefficients that determine the solution.
    pub fn required_initial(&self) -> usize {
        crate::convert::raw_recurrence(self).required_initial()
    }
}

impl AlgebraicEquation {
    pub fn new(coefficients_y: Vec<Poly>, seed: Rational) -> Self {
        AlgebraicEquation { coefficients_y: trim(coefficients_y), seed }
    }

    pub fn degree_y(&self) -> usize {
        self.coefficients_y.len().saturating_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.coefficients_y.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// `P(0, y)` as a polynomial in `y`.
    pub fn at_x0(&self) -> Poly {
        Poly::new(self.coefficients_y.iter().map(|p| p.coeff(0)).collect())
    }

    /// `dP/dy` as coefficients in `y`.
    pub fn dy(&self) -> Vec<Poly> {
        self.coefficients_y
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, p)| p.scale(&Rational::from_integer(i.into())))
            .collect()
    }

    /// Integer primitive form with positive leading coefficient in y.
    pub fn canonical(&self) -> AlgebraicEquation {
        AlgebraicEquation { coefficients_y: integer_primitive(&self.coefficients_y), seed: self.seed.clone() }
    }
}

/// Scales a list of polynomials to coprime integers with positive leading coefficient of the last.
pub fn integer_primitive(c: &[Poly]) -> Vec<Poly> {
    let l = c.iter().fold(num_bigint::BigInt::from(1), |acc, p| {
        num_integer::Integer::lcm(&acc, &crate::arith::rational::common_denominator(p.coeffs()))
    });
    let lr = Rational::from_integer(l);
    let ints: Vec<crate::arith::ZPoly> = c
        .iter()
        .map(|p| crate::arith::ZPoly::new(p.coeffs().iter().map(|v| (v * &lr).to_integer()).collect()))
        .collect();
    let mut g = num_bigint::BigInt::from(0);
    for z in &ints {
        g = num_integer::Integer::gcd(&g, &z.content());
    }
    if g == num_bigint::BigInt::from(0) {
        return c.to_vec();
    }
    let last = ints.iter().rev().find(|z| !z.is_zero()).unwrap().lc();
    if last < num_bigint::BigInt::from(0) {
        g = -g;
    }
    ints.iter().map(|z| Poly::from_zpoly(&z.div_scalar(&g))).collect()
}

/// Any of the three relation kinds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Relation {
    Rec(Recurrence),
    Ode(DiffEquation),
    Alg(AlgebraicEquation),
}

impl From<Recurrence> for Relation {
    fn from(r: Recurrence) -> Self {
        Relation::Rec(r)
    }
}

impl From<DiffEquation> for Relation {
    fn from(r: DiffEquation) -> Self {
        Relation::Ode(r)
    }
}

impl From<AlgebraicEquation> for Relation {
    fn from(r: AlgebraicEquation) -> Self {
        Relation::Alg(r)
    }
}
