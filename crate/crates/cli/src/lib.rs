//! The `bzeta` command line: argument parsing, dispatch to the library, and output.
//!
//! [`run`] never prints or exits; it returns the exit code and both output streams so
//! that the binary and the tests share one code path.

pub mod cache;
pub mod output;

use std::path::PathBuf;

use bessel_zeta::bessel;
use bessel_zeta::numerics::{decimal_digits, format_float};
use bessel_zeta::verify::{self, Suite, UNATTAINABLE};
use bessel_zeta::zeta;
use bessel_zeta::{
    Argument, BetaPolicy, CoefficientTable, EvalConfig, EvalResult, Evaluator, Family, Num, Order, Split,
    DEFAULT_PRECISION,
};
use clap::{Args, Parser, Subcommand};
use rug::Float;
use serde_json::{json, Map, Value};

use cache::Cache;
pub use output::{Format, Output};

/// Exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    /// Domain errors, including evaluation at a pole.
    pub const DOMAIN: i32 = 2;
    pub const NONCONVERGENCE: i32 = 3;
    /// `verify` found a failure not listed as unattainable.
    pub const VERIFY_FAILED: i32 = 4;
}

/// Environment variable naming the cache file when `--cache` is absent.
pub const CACHE_ENV: &str = "BZETA_CACHE";

#[derive(Parser, Debug)]
#[command(name = "bzeta", version, about = "Arbitrary-precision Bessel zeta function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Working precision in bits.
    #[arg(long, global = true, value_name = "BITS", default_value_t = DEFAULT_PRECISION)]
    prec: u32,
    /// Coefficient cache file (defaults to $BZETA_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ζ_ν(s).
    Eval(EvalArgs),
    /// Evaluate the derivative ζ_ν'(s).
    Deriv(EvalArgs),
    /// Residue at a pole s = 1, -1, -3, ...
    Residue {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        pole: i64,
    },
    /// Print a prefix of a coefficient family.
    Coeffs {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        count: usize,
        /// Rational arithmetic (needs a p/q order).
        #[arg(long)]
        exact: bool,
    },
    /// Positive zeros of J_ν.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        count: usize,
    },
    /// The Riemann zeta function.
    Riemann {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1000)]
        alpha_terms: usize,
    },
    /// Product of the positive zeros of J_ν, exp(-ζ_ν'(0)).
    ProdRoots {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Order: `p/q` for exact arithmetic or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    /// Argument: `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Split point T, or `auto`.
    #[arg(long, value_parser = parse_split, default_value = "1")]
    split: Split,
    #[arg(long, default_value_t = 1000)]
    alpha_terms: usize,
    /// `auto` for optimal truncation, or a fixed term count.
    #[arg(long, value_parser = parse_beta, default_value = "auto")]
    beta: BetaPolicy,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: bessel_zeta::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: bessel_zeta::Error| e.to_string())
}

fn parse_split(s: &str) -> Result<Split, String> {
    if s == "auto" {
        return Ok(Split::Auto);
    }
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(Split::Fixed(t)),
        _ => Err(format!("expected a positive number or `auto`, got {s:?}")),
    }
}

fn parse_beta(s: &str) -> Result<BetaPolicy, String> {
    if s == "auto" {
        return Ok(BetaPolicy::OptimalTruncation);
    }
    s.parse().map(BetaPolicy::Fixed).map_err(|_| format!("expected a term count or `auto`, got {s:?}"))
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a command, with the exit code it maps to.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    extra: Map<String, Value>,
}

impl From<bessel_zeta::Error> for Failure {
    fn from(e: bessel_zeta::Error) -> Self {
        use bessel_zeta::Error as E;
        let mut extra = Map::new();
        let (code, kind) = match &e {
            E::Domain(_) => (exit::DOMAIN, "domain"),
            E::Pole { pole, residue } => {
                extra.insert("pole".into(), json!(pole));
                extra.insert("residue".into(), json!(text(residue)));
                (exit::DOMAIN, "pole")
            }
            E::NonConvergence(_) => (exit::NONCONVERGENCE, "nonconvergence"),
            E::Argument(_) => (exit::USAGE, "usage"),
        };
        let mut message = e.to_string();
        if kind == "pole" {
            message.push_str("; use `bzeta residue` for the residue");
        }
        Failure { code, kind, message, extra }
    }
}

/// Runs `bzeta` on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: exit::USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: exit::SUCCESS, stdout: text, stderr: String::new() }
            };
        }
    };
    let format = cli.format;
    let mut notes = Vec::new();
    let (code, stdout) = match dispatch(&cli, &mut notes) {
        Ok((code, out)) => (code, out.render(format)),
        Err(f) => {
            let rendered = match format {
                Format::Json => {
                    let mut obj = Map::new();
                    obj.insert("kind".into(), json!(f.kind));
                    obj.insert("message".into(), json!(f.message));
                    obj.insert("exit_code".into(), json!(f.code));
                    obj.extend(f.extra);
                    let mut s = serde_json::to_string_pretty(&json!({ "error": obj })).expect("json");
                    s.push('\n');
                    s
                }
                _ => {
                    notes.push(format!("bzeta: {}", f.message));
                    String::new()
                }
            };
            (f.code, rendered)
        }
    };
    let stderr = notes.iter().map(|n| format!("{n}\n")).collect();
    Outcome { code, stdout, stderr }
}

fn dispatch(cli: &Cli, notes: &mut Vec<String>) -> Result<(i32, Output), Failure> {
    let prec = cli.prec;
    let ok = |out| Ok((exit::SUCCESS, out));
    match &cli.command {
        Command::Eval(a) => {
            let (order, config, s) = eval_inputs(a, prec)?;
            let ev = Evaluator::new(order.clone(), config)?;
            ok(result_output(Some(&order), a.s.trim(), prec, &ev.eval(&s)?, notes))
        }
        Command::Deriv(a) => {
            let (order, config, s) = eval_inputs(a, prec)?;
            let ev = Evaluator::new(order.clone(), config)?;
            ok(result_output(Some(&order), a.s.trim(), prec, &ev.derivative(&s)?, notes))
        }
        Command::Residue { nu, pole } => {
            let order = Order::parse(nu, prec)?;
            let ev = Evaluator::new(order.clone(), EvalConfig::with_precision(prec))?;
            let r = ev.residue(*pole)?;
            let mut out = result_output(Some(&order), &pole.to_string(), prec, &r, notes);
            if let Output::Record(m) = &mut out {
                rename_key(m, "s", "pole", json!(pole));
            }
            ok(out)
        }
        Command::Riemann { s, alpha_terms } => {
            let config = EvalConfig { alpha_terms: *alpha_terms, ..EvalConfig::with_precision(prec) };
            let arg = Argument::parse(s, prec)?;
            let r = zeta::riemann(&arg, &config)?;
            let mut out = result_output(None, s.trim(), prec, &r, notes);
            if let Output::Record(m) = &mut out {
                m.insert("branch".into(), json!(r.method.to_string()));
            }
            ok(out)
        }
        Command::ProdRoots { nu } => {
            let order = Order::parse(nu, prec)?;
            let ev = Evaluator::new(order.clone(), EvalConfig::with_precision(prec))?;
            let v = ev.product_of_roots()?;
            let mut m = order_meta(&order, prec);
            m.insert("value".into(), json!(text(&v)));
            ok(Output::Record(m))
        }
        Command::Zeros { nu, count } => {
            let order = Order::parse(nu, prec)?;
            let table = bessel::zeros(&order, *count, prec)?;
            let rows = table
                .zeros()
                .iter()
                .enumerate()
                .map(|(i, z)| row(&[("n", json!(i + 1)), ("value", json!(text(z)))]))
                .collect();
            ok(Output::Table { meta: order_meta(&order, prec), key: "zeros", rows })
        }
        Command::Coeffs { family, nu, count, exact } => {
            let order = Order::parse(nu, prec)?;
            coeffs(cli, *family, &order, *count, *exact, notes).map(|o| (exit::SUCCESS, o))
        }
        Command::Verify { suite } => {
            let reports = verify::run(*suite);
            let unexpected = reports.iter().filter(|r| !r.passed && !UNATTAINABLE.contains(&r.id)).count();
            let passed = reports.iter().filter(|r| r.passed).count();
            let rows = reports
                .iter()
                .map(|r| {
                    row(&[
                        ("id", json!(r.id)),
                        ("name", json!(r.name)),
                        ("passed", json!(r.passed)),
                        ("unattainable", json!(UNATTAINABLE.contains(&r.id))),
                        ("detail", json!(r.detail)),
                    ])
                })
                .collect();
            let meta = row(&[
                ("suite", json!(format!("{suite:?}").to_lowercase())),
                ("count", json!(reports.len())),
                ("passed", json!(passed)),
                ("unexpected_failures", json!(unexpected)),
            ]);
            let code = if unexpected == 0 { exit::SUCCESS } else { exit::VERIFY_FAILED };
            Ok((code, Output::Table { meta, key: "criteria", rows }))
        }
    }
}

fn eval_inputs(a: &EvalArgs, prec: u32) -> Result<(Order, EvalConfig, Argument), Failure> {
    let order = Order::parse(&a.nu, prec)?;
    let config = EvalConfig {
        alpha_terms: a.alpha_terms,
        beta_policy: a.beta,
        split: a.split,
        ..EvalConfig::with_precision(prec)
    };
    config.validate()?;
    let s = Argument::parse(&a.s, prec)?;
    Ok((order, config, s))
}

fn coeffs(cli: &Cli, family: Family, order: &Order, count: usize, exact: bool, notes: &mut Vec<String>) -> Result<Output, Failure> {
    let prec = cli.prec;
    if exact && !order.is_exact() {
        return Err(bessel_zeta::Error::Argument("--exact needs a rational order p/q".into()).into());
    }
    let path = cli.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let mut cache = path.map(Cache::open);
    if let Some(reason) = cache.as_ref().and_then(|c| c.rejected.clone()) {
        notes.push(format!("bzeta: ignoring cache: {reason}"));
    }
    let hit = cache.as_ref().and_then(|c| c.lookup(family, order, prec, exact, count));
    let cached = hit.is_some();
    let table = match hit {
        Some(t) => t,
        None => {
            let t = if exact {
                CoefficientTable::build(family, order, count, prec)?
            } else {
                CoefficientTable::build_float(family, order, count, prec)?
            };
            if let Some(c) = cache.as_mut() {
                if let Err(e) = c.insert(t.clone()) {
                    notes.push(format!("bzeta: cannot write cache {}: {e}", c.path().display()));
                }
            }
            t
        }
    };
    let mut meta = Map::new();
    meta.insert("family".into(), json!(family.name()));
    meta.extend(order_meta(order, prec));
    meta.insert("arithmetic".into(), json!(if exact { "exact" } else { "float" }));
    meta.insert("cached".into(), json!(cached));
    if let Some(b0) = table.beta0() {
        meta.insert("beta0".into(), json!(text(b0)));
    }
    let rows = table
        .entries()
        .iter()
        .enumerate()
        .map(|(i, v)| row(&[("index", json!(i + table.first_index())), ("value", json!(num_text(v)))]))
        .collect();
    Ok(Output::Table { meta, key: "coefficients", rows })
}

/// Full-precision decimal; positional for moderate exponents, scientific otherwise.
fn text(x: &Float) -> String {
    positional(&format_float(x, decimal_digits(x.prec())))
}

fn num_text(n: &Num) -> String {
    match n {
        Num::Exact(r) => r.to_string(),
        Num::Approx(f) => text(f),
    }
}

fn positional(sci: &str) -> String {
    let Some((mantissa, exp)) = sci.split_once('e') else {
        return sci.to_string();
    };
    let Ok(exp) = exp.parse::<i32>() else {
        return sci.to_string();
    };
    if !(-6..=20).contains(&exp) {
        return sci.to_string();
    }
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let all = format!("{int}{frac}");
    // position of the decimal point within `all`
    let point = int.len() as i32 + exp;
    let body = if point <= 0 {
        format!("0.{}{all}", "0".repeat((-point) as usize))
    } else if point as usize >= all.len() {
        format!("{all}{}", "0".repeat(point as usize - all.len()))
    } else {
        let (a, b) = all.split_at(point as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}

fn row(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| ((*k).to_string(), v.clone())).collect()
}

fn order_meta(order: &Order, prec: u32) -> Map<String, Value> {
    row(&[
        ("nu", json!(positional(&order.label()))),
        ("arithmetic", json!(if order.is_exact() { "exact" } else { "float" })),
        ("prec", json!(prec)),
    ])
}

/// Replaces `old` by `new` (with `value`) in place, keeping the key order.
fn rename_key(m: &mut Map<String, Value>, old: &str, new: &str, value: Value) {
    *m = std::mem::take(m)
        .into_iter()
        .map(|(k, v)| if k == old { (new.to_string(), value.clone()) } else { (k, v) })
        .collect();
}

fn result_output(order: Option<&Order>, s: &str, prec: u32, r: &EvalResult, notes: &mut Vec<String>) -> Output {
    let mut m = match order {
        Some(o) => order_meta(o, prec),
        None => row(&[("prec", json!(prec))]),
    };
    m.insert("s".into(), json!(s));
    m.insert("split".into(), r.split.map_or(Value::Null, |t| json!(t)));
    m.insert("value".into(), json!({ "re": text(r.value.real()), "im": text(r.value.imag()) }));
    m.insert("exact".into(), r.exact.as_ref().map_or(Value::Null, |e| json!(e.to_string())));
    m.insert("error_estimate".into(), json!(format_float(&r.error_estimate, 6)));
    m.insert("classification".into(), json!(r.classification.to_string()));
    m.insert("method".into(), json!(r.method.to_string()));
    m.insert("alpha_terms_used".into(), json!(r.alpha_terms_used));
    m.insert("beta_terms_used".into(), json!(r.beta_terms_used));
    m.insert("warnings".into(), json!(r.warnings));
    notes.extend(r.warnings.iter().map(|w| format!("bzeta: warning: {w}")));
    Output::Record(m)
}

#[cfg(test)]
mod tests {
    use super::positional;

    #[test]
    fn positional_rendering() {
        assert_eq!(positional("2.5e-1"), "0.25");
        assert_eq!(positional("-8.33e-2"), "-0.0833");
        assert_eq!(positional("1.5e2"), "150");
        assert_eq!(positional("1.25e1"), "12.5");
        assert_eq!(positional("3"), "3");
        assert_eq!(positional("1e-30"), "1e-30");
        assert_eq!(positional("4.1e0"), "4.1");
    }
}
