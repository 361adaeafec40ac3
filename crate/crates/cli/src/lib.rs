//! The `ggr` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 solver infeasible,
//! 3 internal invariant violation, 4 verification or moment check failed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ggr_core::certificate::{self, certificate_identity, verify, CaseTag, Certificate, Strategy};
use ggr_core::difference::{check_order_within, ggr_difference, mz_difference, mz_polynomial, MAX_ORDER};
use ggr_core::numeric::{demo_ggr, DemoOptions, TestFunction};
use ggr_core::rational::{factorial, mz_moment, parse_decimal, Rational};
use ggr_core::Error;
use serde_json::json;
use std::io::{Read, Write};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

/// Default ceiling on n; `--allow-large` lifts it to the library maximum.
pub const DEFAULT_N_CAP: u32 = 16;

#[derive(Parser, Debug)]
#[command(name = "ggr", version, about = "Exact certificates writing R_n as a combination of dilated GGR differences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Produce a verified certificate for r_n.
    Certify(CertifyArgs),
    /// Check a certificate JSON file (or stdin).
    Verify(VerifyArgs),
    /// Moment table for d_k and r_n.
    Moments(MomentsArgs),
    /// Difference quotient tables on a test function.
    Demo(DemoArgs),
    /// Human-readable r_n, R_n and the certificate identity.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Ggr,
    Variant,
}

impl From<CaseArg> for CaseTag {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Ggr => CaseTag::Ggr,
            CaseArg::Variant => CaseTag::Variant,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Inductive,
    Solver,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Inductive => Strategy::Inductive,
            StrategyArg::Solver => Strategy::Solver,
        }
    }
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "ggr")]
    pub case: CaseArg,
    /// Lift the default cap of n <= 16.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub order: OrderArgs,
    #[arg(long, value_enum, default_value = "inductive")]
    pub strategy: StrategyArg,
    /// Largest dilation the solver may use (default 2^(n-1)).
    #[arg(long)]
    pub s_max: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate JSON; stdin when omitted or "-".
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub order: OrderArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[command(flatten)]
    pub order: OrderArgs,
    /// poly:a0,a1,... | exp | sin | abs_pow:<alpha> | osc:<m>,<p>
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, default_value = "0.1")]
    pub h0: String,
    #[arg(long, default_value = "0.5")]
    pub ratio: String,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub order: OrderArgs,
    #[arg(long, value_enum, default_value = "inductive")]
    pub strategy: StrategyArg,
    #[arg(long)]
    pub s_max: Option<u64>,
    /// Render this certificate JSON instead of generating one.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed run: exit code plus a one-line reason.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible { .. } => EXIT_INFEASIBLE,
            Error::Invariant(_) => EXIT_INVARIANT,
            Error::Unverified(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(io.stdout, "{text}");
            } else {
                let _ = write!(io.stderr, "{text}");
            }
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Certify(a) => run_certify(a, io),
        Command::Verify(a) => run_verify(a, io),
        Command::Moments(a) => run_moments(a, io),
        Command::Demo(a) => run_demo(a, io),
        Command::Render(a) => run_render(a, io),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn validated(order: &OrderArgs) -> Result<(u32, CaseTag), Failure> {
    let case = CaseTag::from(order.case);
    let cap = if order.allow_large { MAX_ORDER } else { DEFAULT_N_CAP };
    check_order_within(order.n, case.min_order(), cap).map_err(|e| {
        let hint = if !order.allow_large && order.n > DEFAULT_N_CAP { " (pass --allow-large)" } else { "" };
        Failure::usage(format!("--n: {e}{hint}"))
    })?;
    Ok((order.n, case))
}

fn emit(io: &mut Io<'_>, out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("--out {}: {e}", path.display()))),
        None => io.stdout.write_all(text.as_bytes()).map_err(|e| Failure::usage(format!("stdout: {e}"))),
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_input(io: &mut Io<'_>, path: Option<&PathBuf>) -> Result<String, Failure> {
    match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io.stdin.read_to_string(&mut s).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn produce(n: u32, case: CaseTag, strategy: StrategyArg, s_max: Option<u64>) -> Result<Certificate, Failure> {
    if s_max == Some(0) {
        return Err(Failure::usage("--s-max must be at least 1"));
    }
    let cert = certificate::certify(n, case, strategy.into(), s_max)?;
    let v = verify(&cert);
    if !v.ok {
        return Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("produced certificate fails verification: {}", v.diagnostic()),
        });
    }
    Ok(cert)
}

pub fn run_certify(a: &CertifyArgs, io: &mut Io<'_>) -> CmdResult {
    let (n, case) = validated(&a.order)?;
    let cert = produce(n, case, a.strategy, a.s_max)?;
    let text = match a.format {
        Format::Json => cert.to_json(),
        Format::Text => format!("{}\n", certificate_identity(&cert)?),
    };
    emit(io, a.out.as_ref(), &text)?;
    Ok(EXIT_OK)
}

pub fn run_verify(a: &VerifyArgs, io: &mut Io<'_>) -> CmdResult {
    let text = read_input(io, a.input.as_ref())?;
    let cert = Certificate::from_json(&text).map_err(|e| Failure::usage(format!("malformed certificate: {e}")))?;
    let v = verify(&cert);
    let report = match a.format {
        Format::Json => pretty(&json!({
            "n": cert.n(),
            "case": cert.case(),
            "ok": v.ok,
            "difference": v.difference.as_ref().map(|d| d.to_string()),
            "range_violations": v.range_violations.iter().map(|(k, s)| json!({"k": k, "s": s})).collect::<Vec<_>>(),
            "diagnostic": v.diagnostic(),
        })),
        Format::Text if v.ok => {
            format!("verified: n = {}, case = {}, {} terms\n", cert.n(), cert.case(), cert.terms().len())
        }
        Format::Text => format!("verification failed: {}\n", v.diagnostic()),
    };
    emit(io, None, &report)?;
    Ok(if v.ok { EXIT_OK } else { EXIT_FAILED })
}

pub fn run_moments(a: &MomentsArgs, io: &mut Io<'_>) -> CmdResult {
    let (n, case) = validated(&a.order)?;
    let fact = Rational::from_integer(factorial(n));
    let mz_expected = Rational::from_integer(mz_moment(n));
    let moments = |p: &ggr_core::LaurentPoly| (0..=n).map(|m| p.theta_moment(m)).collect::<Vec<_>>();
    let good = |ms: &[Rational], top: &Rational| {
        ms[..n as usize].iter().all(num_traits::Zero::is_zero) && &ms[n as usize] == top
    };

    let mut rows = Vec::new();
    let mut ok = true;
    for k in case.admissible_k(n) {
        let ms = moments(&ggr_difference(n, k)?.to_laurent());
        let row_ok = good(&ms, &fact);
        ok &= row_ok;
        rows.push((format!("d_{k}"), ms, row_ok));
    }
    let ms = moments(&mz_polynomial(n)?);
    let row_ok = good(&ms, &mz_expected);
    ok &= row_ok;
    rows.push((format!("r_{n}"), ms, row_ok));

    let text = match a.format {
        Format::Json => pretty(&json!({
            "n": n,
            "case": case,
            "expected": {"d_k": fact.to_string(), "r_n": mz_expected.to_string()},
            "rows": rows.iter().map(|(name, ms, row_ok)| json!({
                "name": name,
                "moments": ms.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "ok": row_ok,
            })).collect::<Vec<_>>(),
            "ok": ok,
        })),
        Format::Text => {
            let mut s =
                format!("theta_m for m = 0..{n}; expected order-{n} moments: d_k -> {fact}, r_n -> {mz_expected}\n");
            for (name, ms, row_ok) in &rows {
                let cells: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                let mark = if *row_ok { "ok" } else { "FAIL" };
                s.push_str(&format!("{name:>6}: {}  [{mark}]\n", cells.join(" ")));
            }
            s
        }
    };
    emit(io, a.out.as_ref(), &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn number(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_decimal(text).ok_or_else(|| Failure::usage(format!("{flag}: {text:?} is not a number")))
}

pub fn run_demo(a: &DemoArgs, io: &mut Io<'_>) -> CmdResult {
    let (n, case) = validated(&a.order)?;
    if n < 2 {
        return Err(Failure::usage("--n: demo needs n >= 2"));
    }
    let f: TestFunction = a.function.parse().map_err(|e| Failure::usage(format!("--fn: {e}")))?;
    let opts = DemoOptions {
        case,
        h0: number("--h0", &a.h0)?,
        ratio: number("--ratio", &a.ratio)?,
        steps: a.steps,
        ..DemoOptions::default()
    };
    let c = number("--c", &a.c)?;
    let report = demo_ggr(n, &f, &c, &opts).map_err(|e| match e {
        ggr_core::numeric::NumericError::Algebra(inner) => Failure::from(inner),
        other => Failure::usage(other.to_string()),
    })?;
    let text = match a.format {
        Format::Json => pretty(&report),
        Format::Text => report.to_string(),
    };
    emit(io, a.out.as_ref(), &text)?;
    Ok(EXIT_OK)
}

pub fn run_render(a: &RenderArgs, io: &mut Io<'_>) -> CmdResult {
    let cert = match &a.input {
        Some(path) => {
            let text = read_input(io, Some(path))?;
            Certificate::from_json(&text).map_err(|e| Failure::usage(format!("malformed certificate: {e}")))?
        }
        None => {
            let (n, case) = validated(&a.order)?;
            produce(n, case, a.strategy, a.s_max)?
        }
    };
    let identity = certificate_identity(&cert)?;
    let r = mz_polynomial(cert.n())?;
    let text = match a.format {
        Format::Json => pretty(&json!({
            "n": cert.n(),
            "case": cert.case(),
            "r_n": r.to_string(),
            "mz_difference": mz_difference(cert.n())?.to_string(),
            "identity": identity.to_string(),
            "equal": identity.equal,
        })),
        Format::Text => format!(
            "r_{n}(t) = {r}\nR_{n}(h) = {}\n{identity}\nschemes equal: {}\n",
            identity.mz,
            identity.equal,
            n = cert.n()
        ),
    };
    emit(io, a.out.as_ref(), &text)?;
    Ok(if identity.equal { EXIT_OK } else { EXIT_INVARIANT })
}
