//! The `holo` command line front end.

use crate::algebraic::{algeq_to_diffeq, series_from_algeq};
use crate::arith::rational::{parse_rational, Rational};
use crate::casestudy::{run_iso, run_yang_zagier, run_yang_zagier_algebraicity, CaseReport};
use crate::closure::{diffeq_add, diffeq_mul, geometric_scale, rec_add, rec_mul};
use crate::convert::{diffeq_to_rec, homogenize_diffeq, homogenize_rec, rec_to_diffeq};
use crate::error::{HoloError, Result};
use crate::eval::{nth_term, series_from_diffeq, unroll};
use crate::guess::{guess_algeq, guess_diffeq, guess_rec, ArithmeticPath, GuessConfig, GuessReport, SeriesType};
use crate::io::{format_relation, parse_relation, parse_sequence, OutputMode};
use crate::arith::{Poly, RatFun};
use crate::ore::{gcrd, lclm, right_divmod, OreKind, OreOperator};
use crate::relation::{DiffEquation, Recurrence, Relation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::{Read, Write};

#[derive(Debug, Parser)]
#[command(name = "holo", version, about = "Guess, convert, combine and evaluate holonomic relations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Machine readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Held-out terms checked after a fit.
    #[arg(long, global = true)]
    pub validate: Option<usize>,
    /// Extra equations beyond the unknown count.
    #[arg(long, global = true)]
    pub margin: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub path: Option<PathArg>,
    /// Use only the first N input terms.
    #[arg(long, global = true)]
    pub seed_terms: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub series_type: Option<SeriesArg>,
    /// Refuse to shrink margin and validation on short input.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PathArg {
    Modular,
    Rational,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeriesArg {
    Ogf,
    Egf,
    Auto,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Guess a linear recurrence from a term list.
    GuessRec { file: String },
    /// Guess a linear ODE for the generating function of a term list.
    GuessOde { file: String },
    /// Guess a polynomial equation for the generating function of a term list.
    GuessAlg { file: String },
    #[command(subcommand)]
    Convert(ConvertCmd),
    #[command(subcommand)]
    Closure(ClosureCmd),
    #[command(subcommand)]
    Ore(OreCmd),
    #[command(subcommand)]
    Eval(EvalCmd),
    #[command(subcommand)]
    Case(CaseCmd),
}

#[derive(Debug, Subcommand)]
pub enum ConvertCmd {
    Rec2ode { file: String },
    Ode2rec { file: String },
    Alg2ode { file: String },
    Homogenize { file: String },
}

#[derive(Debug, Subcommand)]
pub enum ClosureCmd {
    Add { first: String, second: String },
    Mul { first: String, second: String },
    /// Recurrence of `w^n u(n)`.
    Scale {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        ratio: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum OreCmd {
    Gcrd { first: String, second: String },
    Lclm { first: String, second: String },
    /// Right division `first = q * second + r`.
    Divmod { first: String, second: String },
}

#[derive(Debug, Subcommand)]
pub enum EvalCmd {
    /// Terms 0..N-1 of a recurrence.
    Unroll {
        file: String,
        #[arg(short, long)]
        n: usize,
    },
    /// Term N of a homogeneous recurrence by binary splitting.
    Nth {
        file: String,
        #[arg(short, long)]
        n: usize,
    },
    /// Coefficients 0..N-1 of an ODE or algebraic equation solution.
    Series {
        file: String,
        #[arg(short, long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CaseCmd {
    YangZagier,
    YangZagierAlg,
    Iso {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    json: bool,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        let invalid = |e: std::io::Error| HoloError::InvalidParameter(format!("cannot read {path}: {e}"));
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(invalid)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(invalid)
        }
    }

    fn relation(&mut self, path: &str) -> Result<Relation> {
        let text = self.read(path)?;
        parse_relation(&text)
    }

    fn operator(&mut self, path: &str) -> Result<OreOperator> {
        let text = self.read(path)?;
        if text.trim_start().starts_with("kind=") {
            return crate::io::parse_operator_text(text.trim());
        }
        if let Some(op) = operator_from_json(&text)? {
            return Ok(op);
        }
        match parse_relation(&text)? {
            Relation::Rec(r) => Ok(r.operator()),
            Relation::Ode(d) => Ok(d.operator()),
            Relation::Alg(_) => Err(HoloError::InvalidParameter("an algebraic equation is not an operator".into())),
        }
    }

    fn show(&self, rel: Relation) -> String {
        format_relation(&rel, if self.json { OutputMode::Json } else { OutputMode::Pretty })
    }
}

fn config(g: &Global) -> Result<GuessConfig> {
    let mut cfg = GuessConfig::default();
    if let Some(v) = g.max_order {
        cfg.max_order = v;
    }
    cfg.max_degree = g.max_degree;
    if let Some(v) = g.validate {
        cfg.validation = v;
    }
    if let Some(v) = g.margin {
        cfg.margin = v;
    }
    if let Some(p) = g.path {
        cfg.path = match p {
            PathArg::Modular => ArithmeticPath::Modular,
            PathArg::Rational => ArithmeticPath::Rational,
        };
    }
    if let Some(s) = g.series_type {
        cfg.series_type = match s {
            SeriesArg::Ogf => SeriesType::Ogf,
            SeriesArg::Egf => SeriesType::Egf,
            SeriesArg::Auto => SeriesType::Auto,
        };
    }
    cfg.strict = g.strict;
    cfg.check()?;
    Ok(cfg)
}

fn rec_of(rel: Relation) -> Result<Recurrence> {
    match rel {
        Relation::Rec(r) => Ok(r),
        _ => Err(HoloError::InvalidParameter("expected a recurrence".into())),
    }
}

fn ode_of(rel: Relation) -> Result<DiffEquation> {
    match rel {
        Relation::Ode(d) => Ok(d),
        _ => Err(HoloError::InvalidParameter("expected a differential equation".into())),
    }
}

fn report_text(rep: &GuessReport) -> String {
    let mut s = String::new();
    match &rep.relation {
        Some(rel) => {
            s.push_str(&format_relation(rel, OutputMode::Pretty));
            s.push('\n');
            s.push_str(&format!(
                "# order {} degree {} series {:?}; {} terms, {} held out, {} primes\n",
                rep.order.unwrap_or(0),
                rep.degree.unwrap_or(0),
                rep.series_type.unwrap_or(SeriesType::Ogf),
                rep.terms,
                rep.validation_terms,
                rep.primes_used
            ));
        }
        None => {
            s.push_str("no relation found\n");
            for e in &rep.trace {
                s.push_str(&format!("# {:?} order {} degree {}: {}\n", e.series_type, e.order, e.degree, e.outcome));
            }
        }
    }
    s
}

fn operator_json(op: &OreOperator) -> serde_json::Value {
    let arr = |p: &Poly| p.coeffs().iter().map(|v| v.to_string()).collect::<Vec<_>>();
    json!({
        "kind": op.kind.name(),
        "var": op.var,
        "coefficients": op.coeffs.iter().map(|c| json!({"num": arr(&c.num), "den": arr(&c.den)})).collect::<Vec<_>>(),
    })
}

/// Reads the `{"kind", "var", "coefficients": [{"num", "den"}]}` form written by `--json`.
fn operator_from_json(text: &str) -> Result<Option<OreOperator>> {
    let Ok(v) = serde_json::from_str::<serde_json::Value>(text) else {
        return Ok(None);
    };
    let Some(cs) = v.get("coefficients").and_then(|c| c.as_array()) else {
        return Ok(None);
    };
    if !cs.iter().all(|c| c.is_object()) || v.get("var").is_none() {
        return Ok(None);
    }
    let bad = |m: &str| HoloError::ParseError { line: 1, message: m.to_string() };
    let kind = match v["kind"].as_str() {
        Some("diff") => OreKind::Diff,
        Some("shift") => OreKind::Shift,
        _ => return Err(bad("operator kind must be diff or shift")),
    };
    let var = v["var"].as_str().ok_or_else(|| bad("var must be a string"))?;
    let poly = |x: &serde_json::Value| -> Result<Poly> {
        let arr = x.as_array().ok_or_else(|| bad("coefficient lists must be arrays"))?;
        let mut c = Vec::with_capacity(arr.len());
        for e in arr {
            let s = e.as_str().ok_or_else(|| bad("coefficients must be strings"))?;
            c.push(parse_rational(s)?);
        }
        Ok(Poly::new(c))
    };
    let mut coeffs = Vec::with_capacity(cs.len());
    for c in cs {
        let den = poly(&c["den"])?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        coeffs.push(RatFun::new(poly(&c["num"])?, den));
    }
    Ok(Some(OreOperator::new(kind, var, coeffs)))
}

fn operator_out(ctx: &Ctx, op: &OreOperator) -> String {
    if ctx.json {
        serde_json::to_string_pretty(&operator_json(op)).expect("json")
    } else {
        op.to_string()
    }
}

fn terms_out(ctx: &Ctx, v: &[Rational]) -> String {
    if ctx.json {
        serde_json::to_string_pretty(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).expect("json")
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n")
    }
}

fn case_out(ctx: &Ctx, rep: &CaseReport) -> (String, i32) {
    let text = if ctx.json { serde_json::to_string_pretty(rep).expect("json") } else { rep.to_text() };
    (text, if rep.pass { 0 } else { 5 })
}

fn dispatch(cli: Cli, ctx: &mut Ctx) -> Result<(String, i32)> {
    let ok = |s: String| Ok((s, 0));
    match cli.command {
        Command::GuessRec { ref file } | Command::GuessOde { ref file } | Command::GuessAlg { ref file } => {
            let text = ctx.read(file)?;
            let mut terms = parse_sequence(&text)?.values();
            if let Some(k) = cli.global.seed_terms {
                terms.truncate(k);
            }
            let cfg = config(&cli.global)?;
            let rep = match cli.command {
                Command::GuessRec { .. } => guess_rec(&terms, &cfg)?,
                Command::GuessOde { .. } => guess_diffeq(&terms, &cfg)?,
                _ => guess_algeq(&terms, &cfg)?,
            };
            let code = if rep.relation.is_some() { 0 } else { 2 };
            let out = if ctx.json { serde_json::to_string_pretty(&rep).expect("json") } else { report_text(&rep) };
            Ok((out, code))
        }
        Command::Convert(c) => match c {
            ConvertCmd::Rec2ode { file } => {
                let r = rec_of(ctx.relation(&file)?)?;
                ok(ctx.show(rec_to_diffeq(&r)?.into()))
            }
            ConvertCmd::Ode2rec { file } => {
                let d = ode_of(ctx.relation(&file)?)?;
                ok(ctx.show(diffeq_to_rec(&d)?.into()))
            }
            ConvertCmd::Alg2ode { file } => match ctx.relation(&file)? {
                Relation::Alg(a) => ok(ctx.show(algeq_to_diffeq(&a)?.into())),
                _ => Err(HoloError::InvalidParameter("expected an algebraic equation".into())),
            },
            ConvertCmd::Homogenize { file } => match ctx.relation(&file)? {
                Relation::Rec(r) => ok(ctx.show(homogenize_rec(&r)?.into())),
                Relation::Ode(d) => ok(ctx.show(homogenize_diffeq(&d)?.into())),
                Relation::Alg(_) => Err(HoloError::InvalidParameter("algebraic equations have no right-hand side".into())),
            },
        },
        Command::Closure(c) => match c {
            ClosureCmd::Add { first, second } => match (ctx.relation(&first)?, ctx.relation(&second)?) {
                (Relation::Rec(a), Relation::Rec(b)) => ok(ctx.show(rec_add(&a, &b)?.into())),
                (Relation::Ode(a), Relation::Ode(b)) => ok(ctx.show(diffeq_add(&a, &b)?.into())),
                _ => Err(HoloError::KindMismatch),
            },
            ClosureCmd::Mul { first, second } => match (ctx.relation(&first)?, ctx.relation(&second)?) {
                (Relation::Rec(a), Relation::Rec(b)) => ok(ctx.show(rec_mul(&a, &b)?.into())),
                (Relation::Ode(a), Relation::Ode(b)) => ok(ctx.show(diffeq_mul(&a, &b)?.into())),
                _ => Err(HoloError::KindMismatch),
            },
            ClosureCmd::Scale { file, ratio } => {
                let r = rec_of(ctx.relation(&file)?)?;
                let w = parse_rational(&ratio).map_err(|_| HoloError::InvalidParameter(format!("bad ratio {ratio:?}")))?;
                ok(ctx.show(geometric_scale(&r, &w)?.into()))
            }
        },
        Command::Ore(c) => {
            let (first, second) = match &c {
                OreCmd::Gcrd { first, second } | OreCmd::Lclm { first, second } | OreCmd::Divmod { first, second } => {
                    (first.clone(), second.clone())
                }
            };
            let a = ctx.operator(&first)?;
            let b = ctx.operator(&second)?;
            match c {
                OreCmd::Gcrd { .. } => ok(operator_out(ctx, &gcrd(&a, &b)?)),
                OreCmd::Lclm { .. } => ok(operator_out(ctx, &lclm(&a, &b)?)),
                OreCmd::Divmod { .. } => {
                    let (q, r) = right_divmod(&a, &b)?;
                    if ctx.json {
                        let v = json!({"quotient": operator_json(&q), "remainder": operator_json(&r)});
                        ok(serde_json::to_string_pretty(&v).expect("json"))
                    } else {
                        ok(format!("quotient: {q}\nremainder: {r}"))
                    }
                }
            }
        }
        Command::Eval(c) => match c {
            EvalCmd::Unroll { file, n } => {
                let r = rec_of(ctx.relation(&file)?)?;
                ok(terms_out(ctx, &unroll(&r, n)?))
            }
            EvalCmd::Nth { file, n } => {
                let r = rec_of(ctx.relation(&file)?)?;
                let v = nth_term(&r, n)?;
                ok(if ctx.json { json!({"n": n, "value": v.to_string()}).to_string() } else { v.to_string() })
            }
            EvalCmd::Series { file, n } => match ctx.relation(&file)? {
                Relation::Ode(d) => ok(terms_out(ctx, &series_from_diffeq(&d, n)?)),
                Relation::Alg(a) => ok(terms_out(ctx, &series_from_algeq(&a, n)?)),
                Relation::Rec(_) => Err(HoloError::InvalidParameter("use eval unroll for recurrences".into())),
            },
        },
        Command::Case(c) => {
            let rep = match c {
                CaseCmd::YangZagier => run_yang_zagier()?,
                CaseCmd::YangZagierAlg => run_yang_zagier_algebraicity()?,
                CaseCmd::Iso { a } => {
                    let a = parse_rational(&a).map_err(|_| HoloError::InvalidParameter(format!("bad value {a:?}")))?;
                    run_iso(&a)?
                }
            };
            Ok(case_out(ctx, &rep))
        }
    }
}

/// Runs `holo` on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { stdin, json: cli.global.json };
    match dispatch(cli, &mut ctx) {
        Ok((out, code)) => {
            let _ = writeln!(stdout, "{}", out.trim_end());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
