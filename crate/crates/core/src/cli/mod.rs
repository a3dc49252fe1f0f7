//! Command-line front end. The binary only forwards its arguments to [`main_with`].
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a prediction or oracle
//! disagreed with enumeration, 3 a hypothesis of a closed form is not met,
//! 4 the enumeration budget was exceeded.

pub mod report;
pub mod reproduce;

use std::ffi::OsString;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::constructions::{
    first_generic_code, predict_first_generic, second_generic_code, ScalarTriple, VectorialPair,
};
use crate::error::{Error, Result};
use crate::functions::{fn_invert, parse_scalar, parse_vectorial, FnSpec};
use crate::galois::{is_prime, FieldCtx};
use crate::linearcode::{GeneratorJson, LinearCode, DEFAULT_BUDGET};

pub use report::{BoundsQuery, CodeReport, CssReport, GateCheck, WalshReport, SCHEMA_VERSION};
pub use reproduce::{reproduce, ReproduceReport, TARGETS};

/// Environment variable holding the default enumeration budget.
pub const BUDGET_ENV: &str = "FNCODES_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fncodes", version, about = "Linear codes from bent, plateaued and almost-bent functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print Markdown instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for the enumeration kernels.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Maximum number of codewords to enumerate (default from FNCODES_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and compare its weight table with the closed form.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Walsh spectrum histogram of a catalog function.
    Walsh(WalshArgs),
    /// Bound verdicts for given parameters.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Validate a CSS pair and its transversal-gate conditions.
    Css(CssArgs),
    /// Rebuild a published instance and compare it with the stated values.
    Reproduce {
        /// Target id; omit with --list to see them all.
        target: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Size of the base field GF(q).
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Extension degree: functions live on GF(q^m).
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Also compare the closed-form weights with enumeration and the trace form with the matrix.
    #[arg(long)]
    pub oracle: bool,
    /// Print the observed weight table as CSV instead of a report.
    #[arg(long)]
    pub csv: bool,
    /// Write the generator matrix to this path (.json for JSON, text otherwise).
    #[arg(long)]
    pub export: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum BuildTarget {
    /// Subfield code of the triple (f, g, h) of scalar functions.
    Scalar {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "tr")]
        f: String,
        #[arg(long, default_value = "tr_square")]
        g: String,
        #[arg(long, default_value = "norm")]
        h: String,
        /// Drop the first coordinate.
        #[arg(long)]
        punctured: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Subfield code of the pair (f, g) of vectorial functions, punctured unless --full.
    Vectorial {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "id")]
        f: String,
        #[arg(long)]
        g: String,
        /// Keep the first coordinate.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// C(f) = {(Tr(a f(x) + bx))_x} over the prime field.
    FirstGeneric {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        /// Use the compositional inverse of f.
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// C_F = {(⟨a, F(x)⟩)_x} over the prime field.
    SecondGeneric {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct WalshArgs {
    /// Function descriptor, e.g. gold:i=1 or tr_square.
    pub function: String,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Read the descriptor as scalar even if it also parses as vectorial.
    #[arg(long)]
    pub scalar: bool,
}

#[derive(Debug, Args)]
pub struct CssArgs {
    /// C_X: cf:<desc>, first:<desc>, dual:<ref> or a generator file.
    #[arg(long)]
    pub cx: String,
    /// C_Z, in the same syntax as --cx.
    #[arg(long)]
    pub cz: String,
    /// t for the T condition, phase:k for the k-th power moment condition.
    #[arg(long)]
    pub check: Option<String>,
    /// Field for function-based references.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub m: Option<u32>,
}

/// Everything a command prints, with its exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Maps a library error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        Error::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_ERROR,
    }
}

/// Splits q into p^r.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q))?;
    match crate::arith::exact_log(q as u64, p as u64) {
        Some(r) if is_prime(p) && p.pow(r) == q => Ok((p, r)),
        _ => Err(Error::InvalidParams(format!("{q} is not a prime power"))),
    }
}

fn field(args: &FieldArgs) -> Result<Arc<FieldCtx>> {
    let (p, r) = prime_power(args.q)?;
    FieldCtx::new(p, r, args.m)
}

fn budget_from_env() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("{BUDGET_ENV}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn render<T: Serialize>(value: &T, markdown: impl FnOnce(&T) -> String, pretty: bool) -> String {
    if pretty {
        markdown(value)
    } else {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn export(code: &LinearCode, path: &str) -> Result<()> {
    let body = if Path::new(path).extension().is_some_and(|e| e == "json") {
        serde_json::to_string_pretty(&code.to_generator_json()).expect("generator serializes")
    } else {
        code.to_text()
    };
    std::fs::write(path, body).map_err(|e| Error::InvalidParams(format!("cannot write {path}: {e}")))
}

fn load(path: &str) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidParams(format!("cannot read {path}: {e}")))?;
    if text.trim_start().starts_with('{') {
        let g: GeneratorJson = serde_json::from_str(&text)
            .map_err(|e| Error::Parse { input: path.to_string(), pos: e.column(), msg: e.to_string() })?;
        LinearCode::from_generator_json(&g)
    } else {
        LinearCode::from_text(&text)
    }
}

/// Resolves a code reference for `css`.
pub fn resolve_code(reference: &str, ctx: Option<&Arc<FieldCtx>>) -> Result<LinearCode> {
    let need_ctx = || ctx.ok_or_else(|| Error::InvalidParams(format!("'{reference}' needs --m")));
    if let Some(rest) = reference.strip_prefix("dual:") {
        return Ok(resolve_code(rest, ctx)?.dual());
    }
    if let Some(desc) = reference.strip_prefix("cf:") {
        return second_generic_code(&parse_vectorial(desc, need_ctx()?)?);
    }
    if let Some(desc) = reference.strip_prefix("first:") {
        return first_generic_code(&parse_vectorial(desc, need_ctx()?)?);
    }
    load(reference.strip_prefix("file:").unwrap_or(reference))
}

fn parse_check(s: &str) -> Result<GateCheck> {
    if s == "t" {
        return Ok(GateCheck::T);
    }
    s.strip_prefix("phase:")
        .and_then(|k| k.parse().ok())
        .map(GateCheck::Phase)
        .ok_or_else(|| Error::Parse { input: s.to_string(), pos: 0, msg: "expected t or phase:<k>".into() })
}

fn code_outcome(report: CodeReport, out: &OutputArgs, code: Option<&LinearCode>, pretty: bool) -> Result<Outcome> {
    if let (Some(path), Some(code)) = (&out.export, code) {
        export(code, path)?;
    }
    let status = if report.mismatch() {
        EXIT_MISMATCH
    } else if report.prediction_refused.is_some() {
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    };
    let stdout = if out.csv { report.observed.to_csv() } else { render(&report, CodeReport::to_markdown, pretty) };
    Ok(Outcome { stdout, code: status })
}

fn build(target: &BuildTarget, pretty: bool, budget: u64) -> Result<Outcome> {
    match target {
        BuildTarget::Scalar { field: fa, f, g, h, punctured, out } => {
            let ctx = field(fa)?;
            let t = ScalarTriple::new(&parse_scalar(f, &ctx)?, &parse_scalar(g, &ctx)?, &parse_scalar(h, &ctx)?)?;
            let report = report::scalar_report(&t, *punctured, out.oracle, budget)?;
            let code = if out.export.is_some() { Some(subfield(t.build()?, *punctured)?) } else { None };
            code_outcome(report, out, code.as_ref(), pretty)
        }
        BuildTarget::Vectorial { field: fa, f, g, full, out } => {
            let ctx = field(fa)?;
            let t = VectorialPair::new(&parse_vectorial(f, &ctx)?, &parse_vectorial(g, &ctx)?)?;
            let report = report::vectorial_report(&t, !*full, out.oracle, budget)?;
            let code = if out.export.is_some() { Some(subfield(t.build()?, !*full)?) } else { None };
            code_outcome(report, out, code.as_ref(), pretty)
        }
        BuildTarget::FirstGeneric { field: fa, f, inverse, out } => {
            let ctx = field(fa)?;
            let mut func = parse_vectorial(f, &ctx)?;
            if *inverse {
                func = fn_invert(&func)?;
            }
            let code = first_generic_code(&func)?;
            let predicted = Some(predict_first_generic(&func));
            let report = report::code_report(&code, "first-generic", vec![func.name().to_string()], predicted, budget)?;
            code_outcome(report, out, Some(&code), pretty)
        }
        BuildTarget::SecondGeneric { field: fa, f, out } => {
            let ctx = field(fa)?;
            let func = parse_vectorial(f, &ctx)?;
            let code = second_generic_code(&func)?;
            let report = report::code_report(&code, "second-generic", vec![func.name().to_string()], None, budget)?;
            code_outcome(report, out, Some(&code), pretty)
        }
    }
}

fn subfield(top: LinearCode, punctured: bool) -> Result<LinearCode> {
    let sub = top.subfield_code()?;
    if punctured {
        sub.puncture(0)
    } else {
        Ok(sub)
    }
}

fn parse_function(args: &WalshArgs, ctx: &Arc<FieldCtx>) -> Result<FnSpec> {
    if args.scalar {
        return parse_scalar(&args.function, ctx);
    }
    parse_vectorial(&args.function, ctx).or_else(|e| parse_scalar(&args.function, ctx).map_err(|_| e))
}

/// Runs a parsed command on the current thread pool.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let budget = match cli.budget {
        Some(b) => b,
        None => budget_from_env()?,
    };
    let pretty = cli.pretty;
    match &cli.command {
        Command::Build { target } => build(target, pretty, budget),
        Command::Walsh(args) => {
            let ctx = field(&args.field)?;
            let report = WalshReport::new(&parse_function(args, &ctx)?)?;
            Ok(Outcome { stdout: render(&report, WalshReport::to_markdown, pretty), code: EXIT_OK })
        }
        Command::Bounds { n, k, d, q } => {
            let report = BoundsQuery::new(*n, *k, *d, *q)?;
            Ok(Outcome { stdout: render(&report, BoundsQuery::to_markdown, pretty), code: EXIT_OK })
        }
        Command::Css(args) => {
            let ctx = match args.m {
                Some(m) => Some(field(&FieldArgs { q: args.q, m })?),
                None => None,
            };
            let cx = resolve_code(&args.cx, ctx.as_ref())?;
            let cz = resolve_code(&args.cz, ctx.as_ref())?;
            let check = args.check.as_deref().map(parse_check).transpose()?;
            let report = CssReport::new(&cx, &cz, check, budget)?;
            Ok(Outcome { stdout: render(&report, CssReport::to_markdown, pretty), code: EXIT_OK })
        }
        Command::Reproduce { target, list } => match (target, list) {
            (Some(t), _) => {
                let report = reproduce(t, budget)?;
                let code = if report.pass { EXIT_OK } else { EXIT_MISMATCH };
                Ok(Outcome { stdout: render(&report, ReproduceReport::to_markdown, pretty), code })
            }
            (None, _) => {
                let stdout = TARGETS.iter().map(|(id, d)| format!("{id}\t{d}\n")).collect();
                Ok(Outcome { stdout, code: EXIT_OK })
            }
        },
    }
}

/// Parses arguments, runs the command on a pool of the requested size and
/// prints the result. Returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start workers: {e}");
            return EXIT_ERROR;
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
