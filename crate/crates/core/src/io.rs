//! Sequence files and textual forms of relations.
//!
//! Sequences come either as one rational per line or as OEIS b-files
//! ("index value" pairs). Relations print as JSON or as equations such as
//! `(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1`.

use crate::arith::rational::{parse_rational, Rational};
use crate::arith::{Poly, RatFun};
use crate::ore::{OreKind, OreOperator};
use crate::error::{HoloError, Result};
use crate::relation::{AlgebraicEquation, DiffEquation, Recurrence, Relation};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceFormat {
    Plain,
    BFile,
}

/// Parsed term list; b-file entries carry their index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub entries: Vec<(Option<i64>, Rational)>,
    pub format: SourceFormat,
}

impl SequenceFile {
    pub fn plain(values: Vec<Rational>) -> Self {
        SequenceFile { entries: values.into_iter().map(|v| (None, v)).collect(), format: SourceFormat::Plain }
    }

    pub fn values(&self) -> Vec<Rational> {
        self.entries.iter().map(|(_, v)| v.clone()).collect()
    }

    /// Index of the first entry (0 for plain files).
    pub fn offset(&self) -> i64 {
        self.entries.first().and_then(|(i, _)| *i).unwrap_or(0)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> HoloError {
    HoloError::ParseError { line, message: message.into() }
}

fn rational_on(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| parse_error(line, format!("not a rational number: {s:?}")))
}

/// Reads a plain or b-file term list; `#` starts a comment line.
pub fn parse_sequence(input: &str) -> Result<SequenceFile> {
    let mut entries = Vec::new();
    let mut format = None;
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        let this = match fields.len() {
            1 => SourceFormat::Plain,
            2 => SourceFormat::BFile,
            _ => return Err(parse_error(line, "expected one value or an index and a value")),
        };
        if *format.get_or_insert(this) != this {
            return Err(parse_error(line, "mixed plain and b-file lines"));
        }
        match this {
            SourceFormat::Plain => entries.push((None, rational_on(line, fields[0])?)),
            SourceFormat::BFile => {
                let idx: i64 = fields[0].parse().map_err(|_| parse_error(line, format!("bad index {:?}", fields[0])))?;
                if let Some((Some(prev), _)) = entries.last() {
                    if idx != prev + 1 {
                        return Err(HoloError::NonContiguousIndices(line));
                    }
                }
                entries.push((Some(idx), rational_on(line, fields[1])?));
            }
        }
    }
    Ok(SequenceFile { entries, format: format.unwrap_or(SourceFormat::Plain) })
}

pub fn format_sequence(seq: &SequenceFile) -> String {
    let mut out = String::new();
    for (i, v) in &seq.entries {
        match i {
            Some(i) => out.push_str(&format!("{i} {v}\n")),
            None => out.push_str(&format!("{v}\n")),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Json,
    Pretty,
}

/// JSON or equation text for a relation.
pub fn format_relation(rel: &Relation, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => serde_json::to_string_pretty(rel).expect("relations serialize"),
        OutputMode::Pretty => pretty(rel),
    }
}

pub fn parse_relation_json(text: &str) -> Result<Relation> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))
}

fn coefficient_term(c: &Poly, var: &str, unknown: &str) -> String {
    if *c == Poly::one() {
        unknown.to_string()
    } else {
        format!("({})*{unknown}", c.display_var(var))
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn rec_unknown(var: &str, i: usize) -> String {
    if i == 0 {
        format!("u({var})")
    } else {
        format!("u({var}+{i})")
    }
}

fn ode_unknown(var: &str, k: usize) -> String {
    match k {
        0 => format!("y({var})"),
        1 => format!("y'({var})"),
        2 => format!("y''({var})"),
        _ => format!("y^({k})({var})"),
    }
}

fn rhs(g: &Option<Poly>, var: &str) -> String {
    g.as_ref().filter(|g| !g.is_zero()).map_or_else(|| "0".into(), |g| g.display_var(var))
}

fn pretty(rel: &Relation) -> String {
    match rel {
        Relation::Rec(r) => {
            let v = &r.variable;
            let terms = (0..=r.order())
                .rev()
                .filter(|&i| !r.coefficients[i].is_zero())
                .map(|i| coefficient_term(&r.coefficients[i], v, &rec_unknown(v, i)))
                .collect();
            let mut s = format!("{} = {}", join_terms(terms), rhs(&r.inhomogeneous, v));
            let init: Vec<String> = r.initial.iter().enumerate().map(|(i, c)| format!("u({i}) = {c}")).collect();
            if !init.is_empty() {
                s.push_str("; ");
                s.push_str(&init.join(", "));
            }
            s
        }
        Relation::Ode(d) => {
            let v = &d.variable;
            let terms = (0..=d.order())
                .rev()
                .filter(|&k| !d.coefficients[k].is_zero())
                .map(|k| coefficient_term(&d.coefficients[k], v, &ode_unknown(v, k)))
                .collect();
            let mut s = format!("{} = {}", join_terms(terms), rhs(&d.inhomogeneous, v));
            let init: Vec<String> =
                d.initial.iter().enumerate().map(|(k, c)| format!("[{v}^{k}] y({v}) = {c}")).collect();
            if !init.is_empty() {
                s.push_str("; ");
                s.push_str(&init.join(", "));
            }
            s
        }
        Relation::Alg(a) => {
            let terms = (0..a.coefficients_y.len())
                .rev()
                .filter(|&i| !a.coefficients_y[i].is_zero())
                .map(|i| {
                    let c = &a.coefficients_y[i];
                    match i {
                        0 => format!("({})", c.display_var("x")),
                        1 => coefficient_term(c, "x", "y"),
                        _ => coefficient_term(c, "x", &format!("y^{i}")),
                    }
                })
                .collect();
            format!("{} = 0; y(0) = {}", join_terms(terms), a.seed)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Rec,
    Ode,
    Alg,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
    Primes(usize),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len()).find(|&j| !cs[j].is_ascii_digit()).unwrap_or(cs.len());
            let n: String = cs[i..j].iter().collect();
            out.push(Tok::Num(rational_on(1, &n)?));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let j = (i..cs.len()).find(|&j| !(cs[j].is_alphanumeric() || cs[j] == '_')).unwrap_or(cs.len());
            out.push(Tok::Ident(cs[i..j].iter().collect()));
            i = j;
        } else if c == '\'' {
            let j = (i..cs.len()).find(|&j| cs[j] != '\'').unwrap_or(cs.len());
            out.push(Tok::Primes(j - i));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(parse_error(1, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// `sum_k parts[k] * unknown_k`, where key 0 is the constant part for
/// recurrences and ODEs (`u(n+i)` and `y^(i)` have key `i + 1`) and the power of `y` otherwise.
#[derive(Debug, Clone, Default)]
struct Value {
    parts: BTreeMap<usize, Poly>,
}

impl Value {
    fn constant(p: Poly) -> Self {
        Value::unknown(0, p)
    }

    fn unknown(k: usize, p: Poly) -> Self {
        let mut parts = BTreeMap::new();
        if !p.is_zero() {
            parts.insert(k, p);
        }
        Value { parts }
    }

    fn add(mut self, o: Value, sign: i64) -> Value {
        for (k, p) in o.parts {
            let p = if sign < 0 { -&p } else { p };
            let e = self.parts.entry(k).or_insert_with(Poly::zero);
            *e = &*e + &p;
            if e.is_zero() {
                self.parts.remove(&k);
            }
        }
        self
    }

    fn mul(&self, o: &Value, shape: Shape) -> Result<Value> {
        let mut out = Value::default();
        for (ka, a) in &self.parts {
            for (kb, b) in &o.parts {
                if shape != Shape::Alg && *ka > 0 && *kb > 0 {
                    return Err(parse_error(1, "product of two unknowns in a linear relation"));
                }
                out = out.add(Value::unknown(ka + kb, a * b), 1);
            }
        }
        Ok(out)
    }

    fn as_poly(&self) -> Option<Poly> {
        match self.parts.len() {
            0 => Some(Poly::zero()),
            1 => self.parts.get(&0).cloned(),
            _ => None,
        }
    }
}

struct Parser<'a> {
    toks: &'a [Tok],
    at: usize,
    shape: Shape,
    var: String,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_error(1, format!("expected {c:?}")))
        }
    }

    fn integer(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                let v = n.to_integer().to_usize().ok_or_else(|| parse_error(1, "integer too large"))?;
                self.at += 1;
                Ok(v)
            }
            _ => Err(parse_error(1, "expected a nonnegative integer")),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = if self.eat('-') { Value::default().add(self.term()?, -1) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.add(self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let f = self.unary()?;
                acc = acc.mul(&f, self.shape)?;
            } else if self.eat('/') {
                let d = self.unary()?.as_poly().filter(|p| p.is_constant() && !p.is_zero());
                let d = d.ok_or_else(|| parse_error(1, "division by a non-constant"))?;
                let inv = Poly::constant(d.coeff(0).recip());
                acc = acc.mul(&Value::constant(inv), self.shape)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(Value::default().add(self.unary()?, -1));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let mut acc = Value::constant(Poly::one());
            for _ in 0..e {
                acc = acc.mul(&base, self.shape)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    /// Argument of `u(...)` or `y(...)`: the variable plus a nonnegative integer.
    fn shift_argument(&mut self) -> Result<usize> {
        self.expect('(')?;
        let v = self.expr()?.as_poly().ok_or_else(|| parse_error(1, "unknown inside an argument"))?;
        self.expect(')')?;
        let k = v.coeff(0);
        if v.deg() != 1 || !v.coeff(1).is_one() || !k.is_integer() || k.is_negative() {
            return Err(parse_error(1, format!("argument must be {} + k", self.var)));
        }
        Ok(k.to_integer().to_usize().unwrap_or(0))
    }

    fn atom(&mut self) -> Result<Value> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Value::constant(Poly::constant(n)))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match (self.shape, name.as_str()) {
                    (_, n) if n == self.var => Ok(Value::constant(Poly::x())),
                    (Shape::Rec, "u") => {
                        let k = self.shift_argument()?;
                        Ok(Value::unknown(k + 1, Poly::one()))
                    }
                    (Shape::Ode, "y") => {
                        let mut k = 0;
                        if let Some(Tok::Primes(p)) = self.peek() {
                            k = *p;
                            self.at += 1;
                        } else if self.peek() == Some(&Tok::Sym('^')) {
                            self.at += 1;
                            self.expect('(')?;
                            k = self.integer()?;
                            self.expect(')')?;
                        }
                        if self.shift_argument()? != 0 {
                            return Err(parse_error(1, "derivatives are taken at the variable itself"));
                        }
                        Ok(Value::unknown(k + 1, Poly::one()))
                    }
                    (Shape::Alg, "y") => Ok(Value::unknown(1, Poly::one())),
                    _ => Err(parse_error(1, format!("unknown symbol {name:?}"))),
                }
            }
            t => Err(parse_error(1, format!("unexpected token {t:?}"))),
        }
    }
}

fn detect(eq: &str) -> (Shape, String) {
    let inner = |from: usize| -> String {
        eq[from..].chars().skip_while(|c| *c != '(').skip(1).take_while(|c| c.is_alphanumeric() || *c == '_').collect()
    };
    if let Some(i) = eq.find("u(") {
        return (Shape::Rec, inner(i));
    }
    for pat in ["y(", "y'", "y^("] {
        if let Some(i) = eq.find(pat) {
            let from = if pat == "y^(" { i + 3 + eq[i + 3..].find('(').unwrap_or(0) } else { i };
            return (Shape::Ode, inner(from));
        }
    }
    (Shape::Alg, "x".into())
}

fn linear_parts(v: &Value, what: &str) -> Result<(Vec<Poly>, Poly)> {
    let g = v.parts.get(&0).cloned().unwrap_or_else(Poly::zero);
    let top = v.parts.keys().copied().max().unwrap_or(0);
    if top == 0 {
        return Err(parse_error(1, format!("{what} has no unknown")));
    }
    let coeffs = (1..=top).map(|k| v.parts.get(&k).cloned().unwrap_or_else(Poly::zero)).collect();
    Ok((coeffs, -&g))
}

/// Parses the equation text printed by the pretty formatter.
pub fn parse_relation_pretty(text: &str) -> Result<Relation> {
    let (eq, init) = text.split_once(';').unwrap_or((text, ""));
    let (shape, var) = detect(eq);
    let (lhs, rhs) = eq.split_once('=').ok_or_else(|| parse_error(1, "missing '='"))?;
    let parse_side = |s: &str| -> Result<Value> {
        let toks = lex(s)?;
        let mut p = Parser { toks: &toks, at: 0, shape, var: var.clone() };
        let v = p.expr()?;
        if p.at != toks.len() {
            return Err(parse_error(1, "trailing input"));
        }
        Ok(v)
    };
    let total = parse_side(lhs)?.add(parse_side(rhs)?, -1);
    let items: Vec<(String, Rational)> = init
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (l, r) = s.split_once('=').ok_or_else(|| parse_error(1, "initial value needs '='"))?;
            Ok((l.split_whitespace().collect::<String>(), rational_on(1, r)?))
        })
        .collect::<Result<_>>()?;
    match shape {
        Shape::Rec | Shape::Ode => {
            let (coeffs, g) = linear_parts(&total, "equation")?;
            let mut initial = Vec::new();
            for (k, (l, v)) in items.into_iter().enumerate() {
                let want = if shape == Shape::Rec { format!("u({k})") } else { format!("[{var}^{k}]y({var})") };
                if l != want {
                    return Err(parse_error(1, format!("expected initial value {want}, found {l}")));
                }
                initial.push(v);
            }
            Ok(if shape == Shape::Rec {
                let mut r = Recurrence::new(coeffs, initial).with_inhomogeneous(g);
                r.variable = var;
                Relation::Rec(r)
            } else {
                let mut d = DiffEquation::new(coeffs, initial).with_inhomogeneous(g);
                d.variable = var;
                Relation::Ode(d)
            })
        }
        Shape::Alg => {
            let top = total.parts.keys().copied().max().unwrap_or(0);
            let coeffs = (0..=top).map(|k| total.parts.get(&k).cloned().unwrap_or_else(Poly::zero)).collect();
            let seed = match items.as_slice() {
                [(l, v)] if l == "y(0)" => v.clone(),
                [] => Rational::zero(),
                _ => return Err(parse_error(1, "expected a single seed y(0) = c")),
            };
            Ok(Relation::Alg(AlgebraicEquation::new(coeffs, seed)))
        }
    }
}

/// Accepts either JSON or the pretty equation form.
pub fn parse_relation(text: &str) -> Result<Relation> {
    if text.trim_start().starts_with('{') {
        parse_relation_json(text)
    } else {
        parse_relation_pretty(text.trim())
    }
}

fn poly_array(s: &str) -> Result<Poly> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_error(1, format!("expected a coefficient list, got {t:?}")))?;
    let mut c = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        c.push(rational_on(1, part)?);
    }
    Ok(Poly::new(c))
}

/// Inverse of [`OreOperator::to_text`].
pub fn parse_operator_text(text: &str) -> Result<OreOperator> {
    let t = text.trim();
    let (head, body) = t.split_once(';').ok_or_else(|| parse_error(1, "missing ';' after the header"))?;
    let mut kind = None;
    let mut var = None;
    for field in head.split_whitespace() {
        match field.split_once('=') {
            Some(("kind", "diff")) => kind = Some(OreKind::Diff),
            Some(("kind", "shift")) => kind = Some(OreKind::Shift),
            Some(("var", v)) if !v.is_empty() => var = Some(v.to_string()),
            _ => return Err(parse_error(1, format!("unexpected header field {field:?}"))),
        }
    }
    let kind = kind.ok_or_else(|| parse_error(1, "missing kind"))?;
    let var = var.ok_or_else(|| parse_error(1, "missing var"))?;
    let body = body.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_error(1, "coefficients must be enclosed in [ ]"))?;
    let mut coeffs = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(';') {
            let c = match part.split_once("]/[") {
                Some((n, d)) => {
                    let den = poly_array(&format!("[{d}"))?;
                    if den.is_zero() {
                        return Err(parse_error(1, "zero denominator"));
                    }
                    RatFun::new(poly_array(&format!("{n}]"))?, den)
                }
                None => RatFun::from_poly(poly_array(part)?),
            };
            coeffs.push(c);
        }
    }
    Ok(OreOperator::new(kind, &var, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    #[test]
    fn bfile_and_plain() {
        let s = parse_sequence("# fib\n0 0\n1 1\n2 1\n3 2\n").unwrap();
        assert_eq!(s.format, SourceFormat::BFile);
        assert_eq!(s.values(), vec![rat(0), rat(1), rat(1), rat(2)]);
        let p = parse_sequence("1\n-161/248832\n").unwrap();
        assert_eq!(p.format, SourceFormat::Plain);
        assert_eq!(p.values(), vec![rat(1), ratio(-161, 248832)]);
        assert_eq!(parse_sequence("1 1\n3 2"), Err(HoloError::NonContiguousIndices(2)));
        assert!(matches!(parse_sequence("1\n2 3"), Err(HoloError::ParseError { line: 2, .. })));
        assert!(matches!(parse_sequence("1\nabc"), Err(HoloError::ParseError { line: 2, .. })));
        assert_eq!(parse_sequence(&format_sequence(&s)).unwrap(), s);
    }

    #[test]
    fn catalan_pretty() {
        let r = Recurrence::new(vec![Poly::from_i64s(&[-2, -4]), Poly::from_i64s(&[2, 1])], vec![rat(1)]);
        let rel = Relation::Rec(r);
        let text = format_relation(&rel, OutputMode::Pretty);
        assert_eq!(text, "(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1");
        assert_eq!(parse_relation(&text).unwrap(), rel);
        let json = format_relation(&rel, OutputMode::Json);
        assert_eq!(parse_relation(&json).unwrap(), rel);
    }

    #[test]
    fn ode_and_alg_pretty() {
        let d = DiffEquation::new(
            vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[1, -1]), Poly::zero(), Poly::from_i64s(&[0, 1])],
            vec![rat(1), ratio(1, 2)],
        )
        .with_inhomogeneous(Poly::from_i64s(&[0, 3]));
        let rel = Relation::Ode(d);
        let text = format_relation(&rel, OutputMode::Pretty);
        assert_eq!(text, "(x)*y^(3)(x) + (-x + 1)*y'(x) + (-1)*y(x) = 3*x; [x^0] y(x) = 1, [x^1] y(x) = 1/2");
        assert_eq!(parse_relation(&text).unwrap(), rel);
        let m = AlgebraicEquation::new(vec![Poly::one(), Poly::from_i64s(&[-1, 1]), Poly::from_i64s(&[0, 0, 1])], rat(1));
        let rel = Relation::Alg(m);
        let text = format_relation(&rel, OutputMode::Pretty);
        assert_eq!(text, "(x^2)*y^2 + (x - 1)*y + (1) = 0; y(0) = 1");
        assert_eq!(parse_relation(&text).unwrap(), rel);
    }

    #[test]
    fn hand_written_equations() {
        let r = parse_relation("u(n+2) = u(n+1) + u(n); u(0) = 0, u(1) = 1").unwrap();
        let Relation::Rec(r) = r else { panic!() };
        assert_eq!(r.coefficients, vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[-1]), Poly::one()]);
        let d = parse_relation("2*k*y'(k) - y(k)/3 = 0").unwrap();
        let Relation::Ode(d) = d else { panic!() };
        assert_eq!(d.variable, "k");
        assert_eq!(d.coefficients[0], Poly::constant(ratio(-1, 3)));
        assert!(parse_relation("u(n)*u(n+1) = 0").is_err());
        assert!(parse_relation("u(n-1) = 0").is_err());
    }
}
