//! Difference quotients `Δ(h)/h^n` on concrete functions.
//!
//! Two channels: polynomials with rational coefficients are evaluated exactly
//! at rational points; every other function is evaluated in `f64`. Float
//! rows carry a rounding bound `ε · Σ|c_j f(x_j)| / |h|^n` and a reliability
//! flag. Nothing here asserts a limit; the tables only show the trend.

use crate::certificate::{certify_inductive, CaseTag, Certificate};
use crate::difference::{ggr_difference, mz_difference, DifferenceScheme};
use crate::par::Exec;
use crate::rational::{factorial, mz_moment, parse_decimal, Rational};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("step h must be nonzero")]
    ZeroStep,
    #[error("scheme order must be at least 1")]
    ZeroOrder,
    #[error("invalid table parameters: {0}")]
    BadTable(String),
    #[error("invalid function spec: {0}")]
    BadFunction(String),
    #[error(transparent)]
    Algebra(#[from] crate::error::Error),
}

/// Float rows at order ≥ 6 with `|h|` below this are always flagged.
pub const CANCELLATION_ORDER: u32 = 6;
pub const CANCELLATION_STEP: f64 = 1e-3;
/// Float rows whose rounding bound exceeds this fraction of `max(1, |q|)` are flagged.
pub const RELIABLE_RELATIVE_BOUND: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// `Σ a_i x^i`, coefficients ascending.
    Poly(Vec<Rational>),
    Exp,
    Sin,
    /// `|x|^α`, α > 0.
    AbsPow(f64),
    /// `x^m sin(x^{−p})`, with `f(0) = 0`; for `x < 0`, `x^{−p}` means `−|x|^{−p}`.
    Osc {
        m: i32,
        p: f64,
    },
}

impl TestFunction {
    pub fn is_exact(&self) -> bool {
        matches!(self, TestFunction::Poly(_))
    }

    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        match self {
            TestFunction::Poly(a) => Some(a.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)),
            _ => None,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        match self {
            TestFunction::Poly(a) => a.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c)),
            TestFunction::Exp => x.exp(),
            TestFunction::Sin => x.sin(),
            TestFunction::AbsPow(alpha) => x.abs().powf(*alpha),
            TestFunction::Osc { m, p } => {
                if x == 0.0 {
                    0.0
                } else {
                    x.powi(*m) * x.abs().powf(-p).copysign(x).sin()
                }
            }
        }
    }
}

impl FromStr for TestFunction {
    type Err = NumericError;

    /// `poly:a0,a1,…`, `exp`, `sin`, `abs_pow:α`, `osc:m,p`.
    fn from_str(s: &str) -> Result<Self, NumericError> {
        let bad = |why: &str| NumericError::BadFunction(format!("{s:?}: {why}"));
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        match name {
            "exp" | "sin" if !args.is_empty() => Err(bad("takes no parameters")),
            "exp" => Ok(TestFunction::Exp),
            "sin" => Ok(TestFunction::Sin),
            "poly" => {
                let coeffs = args
                    .split(',')
                    .map(|a| parse_decimal(a).ok_or_else(|| bad("coefficients must be rational numbers")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(TestFunction::Poly(coeffs))
            }
            "abs_pow" => {
                let alpha: f64 = args.parse().map_err(|_| bad("expected abs_pow:<alpha>"))?;
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(bad("alpha must be positive"));
                }
                Ok(TestFunction::AbsPow(alpha))
            }
            "osc" => {
                let (m, p) = args.split_once(',').ok_or_else(|| bad("expected osc:<m>,<p>"))?;
                let m: i32 = m.trim().parse().map_err(|_| bad("m must be an integer"))?;
                let p: f64 = p.trim().parse().map_err(|_| bad("p must be a number"))?;
                if m < 0 || !(p > 0.0 && p.is_finite()) {
                    return Err(bad("need m >= 0 and p > 0"));
                }
                Ok(TestFunction::Osc { m, p })
            }
            _ => Err(bad("unknown function (poly, exp, sin, abs_pow, osc)")),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Poly(a) => {
                let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            TestFunction::Exp => f.write_str("exp"),
            TestFunction::Sin => f.write_str("sin"),
            TestFunction::AbsPow(alpha) => write!(f, "abs_pow:{alpha}"),
            TestFunction::Osc { m, p } => write!(f, "osc:{m},{p}"),
        }
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A quotient value from either channel.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    fn scaled(&self, c: &Rational) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(r * c),
            Value::Float(x) => Value::Float(x * to_f64(c)),
        }
    }

    fn plus(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            (a, b) => Value::Float(a.to_f64() + b.to_f64()),
        }
    }
}

/// Exact values serialize as fraction strings, floats as JSON numbers.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&r.to_string()),
            Value::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => write!(f, "{x:.12e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRow {
    pub h: Rational,
    pub q: Value,
    /// Rounding bound on `q`; zero in the exact channel.
    pub error_bound: f64,
    pub reliable: bool,
}

fn check(d: &DifferenceScheme, h: &Rational) -> Result<(), NumericError> {
    if h.is_zero() {
        return Err(NumericError::ZeroStep);
    }
    if d.order() == 0 {
        return Err(NumericError::ZeroOrder);
    }
    Ok(())
}

/// `Σ c_j f(c + b_j h) / h^n` with `n = d.order()`.
pub fn quotient(d: &DifferenceScheme, f: &TestFunction, c: &Rational, h: &Rational) -> Result<Value, NumericError> {
    Ok(quotient_row(d, f, c, h)?.q)
}

pub fn quotient_row(
    d: &DifferenceScheme,
    f: &TestFunction,
    c: &Rational,
    h: &Rational,
) -> Result<QuotientRow, NumericError> {
    check(d, h)?;
    let n = d.order();
    if f.is_exact() {
        let numerator = d.apply(|b| {
            let x = c + h * Rational::from_integer(b.into());
            f.eval_exact(&x).expect("exact channel")
        });
        let q = numerator / num_traits::pow(h.clone(), n as usize);
        return Ok(QuotientRow { h: h.clone(), q: Value::Exact(q), error_bound: 0.0, reliable: true });
    }
    let (cf, hf) = (to_f64(c), to_f64(h));
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    for (b, coeff) in d.terms() {
        let term = to_f64(coeff) * f.eval_f64(cf + b as f64 * hf);
        sum += term;
        magnitude += term.abs();
    }
    let hn = hf.abs().powi(n as i32);
    let q = sum / hf.powi(n as i32);
    let error_bound = d.len() as f64 * f64::EPSILON * magnitude / hn;
    Ok(QuotientRow { h: h.clone(), q: Value::Float(q), error_bound, reliable: float_reliable(n, hf, q, error_bound) })
}

fn float_reliable(n: u32, h: f64, q: f64, bound: f64) -> bool {
    if n >= CANCELLATION_ORDER && h.abs() < CANCELLATION_STEP {
        return false;
    }
    q.is_finite() && bound <= RELIABLE_RELATIVE_BOUND * q.abs().max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientTable {
    pub label: String,
    /// Rendered scheme (or identity, for certificate tables).
    pub scheme: String,
    pub center: Rational,
    pub order: u32,
    pub rows: Vec<QuotientRow>,
}

impl QuotientTable {
    pub fn exact(&self) -> bool {
        self.rows.iter().all(|r| r.q.is_exact())
    }

    pub fn last(&self) -> &QuotientRow {
        self.rows.last().expect("tables have at least one row")
    }
}

impl Serialize for QuotientTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            h: Value,
            q: &'a Value,
            reliable: bool,
        }
        let exact = self.exact();
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                h: if exact { Value::Exact(r.h.clone()) } else { Value::Float(to_f64(&r.h)) },
                q: &r.q,
                reliable: r.reliable,
            })
            .collect();
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("label", &self.label)?;
        map.serialize_entry("scheme", &self.scheme)?;
        map.serialize_entry("rows", &rows)?;
        map.serialize_entry("exact", &exact)?;
        map.end()
    }
}

impl fmt::Display for QuotientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let channel = if self.exact() { "exact" } else { "float" };
        writeln!(f, "{}: {}  [{channel}]", self.label, self.scheme)?;
        for r in &self.rows {
            let flag = if r.reliable { "" } else { "  (unreliable)" };
            writeln!(f, "  h = {:<14} q = {}{flag}", r.h.to_string(), r.q)?;
        }
        Ok(())
    }
}

/// Steps `h0 · ratio^i` for `i < steps`, exactly.
pub fn step_sequence(h0: &Rational, ratio: &Rational, steps: usize) -> Result<Vec<Rational>, NumericError> {
    if steps == 0 {
        return Err(NumericError::BadTable("steps must be at least 1".into()));
    }
    if !h0.is_positive() {
        return Err(NumericError::BadTable("h0 must be positive".into()));
    }
    if !(ratio.is_positive() && ratio < &Rational::from_integer(1.into())) {
        return Err(NumericError::BadTable("ratio must lie in (0, 1)".into()));
    }
    let mut out = Vec::with_capacity(steps);
    let mut h = h0.clone();
    for _ in 0..steps {
        out.push(h.clone());
        h *= ratio;
    }
    Ok(out)
}

pub fn quotient_table(
    d: &DifferenceScheme,
    f: &TestFunction,
    c: &Rational,
    h0: &Rational,
    ratio: &Rational,
    steps: usize,
) -> Result<QuotientTable, NumericError> {
    quotient_table_with(d, f, c, h0, ratio, steps, Exec::default())
}

pub fn quotient_table_with(
    d: &DifferenceScheme,
    f: &TestFunction,
    c: &Rational,
    h0: &Rational,
    ratio: &Rational,
    steps: usize,
    exec: Exec,
) -> Result<QuotientTable, NumericError> {
    let hs = step_sequence(h0, ratio, steps)?;
    let rows = exec.map(&hs, |h| quotient_row(d, f, c, h)).into_iter().collect::<Result<_, _>>()?;
    Ok(QuotientTable { label: String::new(), scheme: d.to_string(), center: c.clone(), order: d.order(), rows })
}

/// `Σ coeff · s^n · Δ_k(s·h)/(s·h)^n`, i.e. the certificate's combination
/// of dilated GGR quotients, evaluated term by term.
pub fn certificate_row(
    cert: &Certificate,
    f: &TestFunction,
    c: &Rational,
    h: &Rational,
) -> Result<QuotientRow, NumericError> {
    let n = cert.n();
    let mut q = Value::Exact(Rational::zero());
    let mut bound = 0.0;
    for t in cert.terms() {
        let s = Rational::from_integer(t.s.into());
        let row = quotient_row(&ggr_difference(n, t.k)?, f, c, &(h * &s))?;
        let weight = &t.coeff * num_traits::pow(s, n as usize);
        bound += to_f64(&weight.abs()) * row.error_bound;
        q = q.plus(row.q.scaled(&weight));
    }
    let reliable = match &q {
        Value::Exact(_) => true,
        Value::Float(x) => float_reliable(n, to_f64(h), *x, bound),
    };
    Ok(QuotientRow { h: h.clone(), q, error_bound: bound, reliable })
}

pub fn certificate_table_with(
    cert: &Certificate,
    f: &TestFunction,
    c: &Rational,
    h0: &Rational,
    ratio: &Rational,
    steps: usize,
    exec: Exec,
) -> Result<QuotientTable, NumericError> {
    let hs = step_sequence(h0, ratio, steps)?;
    let rows = exec.map(&hs, |h| certificate_row(cert, f, c, h)).into_iter().collect::<Result<_, _>>()?;
    let scheme =
        cert.terms().iter().map(|t| format!("({})*D_{}({}h)", t.coeff, t.k, t.s)).collect::<Vec<_>>().join(" + ");
    Ok(QuotientTable {
        label: format!("sum c*D_k(sh) for R_{n}", n = cert.n()),
        scheme,
        center: c.clone(),
        order: cert.n(),
        rows,
    })
}

#[derive(Debug, Clone)]
pub struct DemoOptions {
    pub case: CaseTag,
    pub h0: Rational,
    pub ratio: Rational,
    pub steps: usize,
    /// Relative agreement tolerance for the float channel.
    pub tolerance: f64,
}

impl Default for DemoOptions {
    fn default() -> Self {
        Self {
            case: CaseTag::Ggr,
            h0: Rational::new(1.into(), 10.into()),
            ratio: Rational::new(1.into(), 2.into()),
            steps: 8,
            tolerance: 1e-2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DemoReport {
    pub n: u32,
    pub case: CaseTag,
    pub function: TestFunction,
    pub center: Rational,
    /// `θ_n(r_n)/n!`: the `R_n` quotient tends to this times `f^{(n)}(c)`.
    pub mz_scale: Rational,
    pub ggr: Vec<(i64, QuotientTable)>,
    pub mz: QuotientTable,
    pub combined: QuotientTable,
    pub tolerance: f64,
    /// Whether the last rows agree after normalizing `R_n` by `mz_scale`.
    pub agree: bool,
}

impl DemoReport {
    /// Last-row values of every table, with `R_n` and the combination
    /// divided by `mz_scale`.
    pub fn normalized_last(&self) -> Vec<Value> {
        let inv = self.mz_scale.recip();
        let mut out: Vec<Value> = self.ggr.iter().map(|(_, t)| t.last().q.clone()).collect();
        out.push(self.mz.last().q.scaled(&inv));
        out.push(self.combined.last().q.scaled(&inv));
        out
    }
}

impl Serialize for DemoReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("case", &self.case)?;
        map.serialize_entry("function", &self.function.to_string())?;
        map.serialize_entry("c", &self.center.to_string())?;
        map.serialize_entry("mz_scale", &self.mz_scale.to_string())?;
        let ggr: Vec<&QuotientTable> = self.ggr.iter().map(|(_, t)| t).collect();
        map.serialize_entry("ggr", &ggr)?;
        map.serialize_entry("mz", &self.mz)?;
        map.serialize_entry("combined", &self.combined)?;
        map.serialize_entry("tolerance", &self.tolerance)?;
        map.serialize_entry("agree", &self.agree)?;
        map.end()
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, case = {}, f = {}, c = {}", self.n, self.case, self.function, self.center)?;
        writeln!(f, "R_n quotient tends to {} * f^(n)(c)", self.mz_scale)?;
        writeln!(f)?;
        for (_, t) in &self.ggr {
            writeln!(f, "{t}")?;
        }
        writeln!(f, "{}", self.mz)?;
        writeln!(f, "{}", self.combined)?;
        let verdict = if self.agree { "agree" } else { "disagree" };
        write!(f, "last rows (R_n normalized) {verdict}")?;
        if !self.mz.exact() {
            write!(f, " at relative tolerance {:e}", self.tolerance)?;
        }
        writeln!(f)
    }
}

/// Quotient tables for every admissible `Δ_k`, for `R_n`, and for the
/// certificate's combination of dilated `Δ_k`.
pub fn demo_ggr(n: u32, f: &TestFunction, c: &Rational, opts: &DemoOptions) -> Result<DemoReport, NumericError> {
    demo_ggr_with(n, f, c, opts, Exec::default())
}

pub fn demo_ggr_with(
    n: u32,
    f: &TestFunction,
    c: &Rational,
    opts: &DemoOptions,
    exec: Exec,
) -> Result<DemoReport, NumericError> {
    if n < 2 {
        return Err(NumericError::Algebra(crate::error::Error::OrderTooSmall { min: 2, got: n }));
    }
    let ks = opts.case.admissible_k(n);
    let ggr = exec
        .map(&ks, |&k| {
            let mut t = quotient_table_with(&ggr_difference(n, k)?, f, c, &opts.h0, &opts.ratio, opts.steps, exec)?;
            t.label = format!("D_{k}");
            Ok((k, t))
        })
        .into_iter()
        .collect::<Result<Vec<_>, NumericError>>()?;
    let mut mz = quotient_table_with(&mz_difference(n)?, f, c, &opts.h0, &opts.ratio, opts.steps, exec)?;
    mz.label = format!("R_{n}");
    let cert = certify_inductive(n, opts.case)?;
    let combined = certificate_table_with(&cert, f, c, &opts.h0, &opts.ratio, opts.steps, exec)?;
    let mz_scale = Rational::new(mz_moment(n), factorial(n));

    let mut report = DemoReport {
        n,
        case: opts.case,
        function: f.clone(),
        center: c.clone(),
        mz_scale,
        ggr,
        mz,
        combined,
        tolerance: opts.tolerance,
        agree: false,
    };
    let values = report.normalized_last();
    report.agree = if values.iter().all(Value::is_exact) {
        values.windows(2).all(|w| w[0] == w[1])
    } else {
        let xs: Vec<f64> = values.iter().map(Value::to_f64).collect();
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = xs.iter().map(|x| x.abs()).fold(1.0, f64::max);
        hi - lo <= opts.tolerance * scale
    };
    Ok(report)
}
