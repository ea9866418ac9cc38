//! The `qaw` command line.
//!
//! Exit codes: 0 when every emitted record passes, 1 when any check fails,
//! 2 for usage, parse and configuration errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::awcore::check_operator_laws;
use crate::error::Error;
use crate::families::{counterexample_family, oracle_suite};
use crate::inductor::{verify_proof, DEFAULT_K_SAMPLES};
use crate::numeric::{eval_poly, numeric_crosscheck, NumericConfig};
use crate::parse::parse_xpoly;
use crate::structure::{bandwidth_summary, c_n4_nonvanishing, expand_in_basis, verify_proposition};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qaw", version, about = "Exact structure-relation checks for a continuous dual q-Hahn family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Expand a polynomial in x in the basis P_0, P_1, ...
    Expand {
        #[arg(long = "degree-poly")]
        degree_poly: String,
        /// Substitute u = q^(n/2) before expanding.
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Print P_n.
    Show {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        latex: bool,
    },
    /// Evaluate P_n at a real point.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Both structure relations for n <= n-max, bandwidth, nonvanishing certificate.
    Proposition {
        #[arg(long = "n-max", env = "QAW_NMAX_DEFAULT", default_value_t = 40)]
        n_max: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Symbolic certificates for the inductive step and base case.
    Proof {
        #[arg(long = "k-samples", value_delimiter = ',', default_values_t = DEFAULT_K_SAMPLES)]
        k_samples: Vec<i64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Floating-point lattice cross-check.
    Numeric {
        #[arg(long = "n-max", default_value_t = 15)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.7])]
        q: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [1.1, 1.5, 2.0, 3.0])]
        x: Vec<f64>,
        #[arg(long = "rel-tol", default_value_t = 1e-9)]
        rel_tol: f64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Hypergeometric sum against the recurrence.
    Oracle {
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Product rules, linearity and degree laws on a seeded random corpus.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long = "max-degree", default_value_t = 8)]
        max_degree: usize,
        #[arg(long = "degree-law-max", default_value_t = 12)]
        degree_law_max: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Writes records and tracks whether all of them passed.
struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    failed: bool,
}

impl<'a> Emitter<'a> {
    fn new(out: &'a mut dyn Write, format: Format) -> Self {
        Emitter { out, format, failed: false }
    }

    fn emit(&mut self, record: &impl Serialize) -> std::io::Result<()> {
        let value = serde_json::to_value(record).expect("records serialize");
        match value.get("status").or_else(|| value.get("verdict")).and_then(Value::as_str) {
            Some("pass" | "zero") | None => {}
            Some(_) => self.failed = true,
        }
        match self.format {
            Format::Json => writeln!(self.out, "{value}"),
            Format::Text => writeln!(self.out, "{}", text_line(&value)),
        }
    }

    fn exit_code(&self) -> i32 {
        if self.failed {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) if s.is_empty() || s.contains(char::is_whitespace) => format!("{s:?}"),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(text_value).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn text_line(v: &Value) -> String {
    let Value::Object(map) = v else {
        return text_value(v);
    };
    let mut parts: Vec<String> = Vec::new();
    if let Some(check) = map.get("check") {
        parts.push(text_value(check));
    }
    parts.extend(map.iter().filter(|(k, _)| k.as_str() != "check").map(|(k, v)| format!("{k}={}", text_value(v))));
    parts.join(" ")
}

#[derive(Serialize)]
struct ExpandRecord {
    check: &'static str,
    k: usize,
    coefficient: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } | Error::Config(_) | Error::InvalidParameter(_) | Error::MissingIndex => EXIT_USAGE,
                _ => EXIT_FAIL,
            }
        }
    }
}

enum CliError {
    Io(std::io::Error),
    Domain(Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Verify { suite } => verify(suite, out),
        Command::Expand { degree_poly, n, fmt } => {
            let mut f = parse_xpoly(&degree_poly)?;
            if let Some(n) = n {
                f = f.try_map_coeffs(|c| c.instantiate_n(n))?;
            }
            let fam = counterexample_family();
            let mut em = Emitter::new(out, fmt.format);
            for (k, c) in expand_in_basis(&f, &fam).iter().enumerate() {
                em.emit(&ExpandRecord { check: "expand", k, coefficient: c.to_string() })?;
            }
            Ok(em.exit_code())
        }
        Command::Show { n, latex } => {
            let p = counterexample_family().poly(n);
            let text = if latex { p.to_latex() } else { p.to_string() };
            writeln!(out, "{text}")?;
            Ok(EXIT_PASS)
        }
        Command::Eval { n, q, x } => {
            if !(q > 0.0 && q.is_finite() && x.is_finite()) {
                return Err(Error::Config(format!("need q > 0 and finite x, got q = {q}, x = {x}")).into());
            }
            let p = counterexample_family().poly(n);
            writeln!(out, "{}", eval_poly(&p, q, None, x)?)?;
            Ok(EXIT_PASS)
        }
    }
}

fn verify(suite: Suite, out: &mut dyn Write) -> Result<i32, CliError> {
    match suite {
        Suite::Proposition { n_max, fmt } => {
            let rep = verify_proposition(n_max)?;
            let mut em = Emitter::new(out, fmt.format);
            for r in rep.records() {
                em.emit(&r)?;
            }
            if n_max >= 2 {
                em.emit(&bandwidth_summary(&rep.dq))?;
                em.emit(&c_n4_nonvanishing())?;
            }
            Ok(em.exit_code())
        }
        Suite::Proof { k_samples, fmt } => {
            let rep = verify_proof(&k_samples)?;
            let mut em = Emitter::new(out, fmt.format);
            for r in rep.records() {
                em.emit(&r)?;
            }
            for row in &rep.coherence {
                em.emit(row)?;
            }
            Ok(em.exit_code())
        }
        Suite::Numeric { n_max, q, x, rel_tol, fmt } => {
            let cfg = NumericConfig { q_samples: q, x_samples: x, rel_tol, ..NumericConfig::default() };
            let summary = numeric_crosscheck(&cfg, n_max)?;
            let mut em = Emitter::new(out, fmt.format);
            em.emit(&summary)?;
            Ok(em.exit_code())
        }
        Suite::Oracle { n_max, fmt } => {
            let mut em = Emitter::new(out, fmt.format);
            for row in oracle_suite(n_max)? {
                em.emit(&row)?;
            }
            Ok(em.exit_code())
        }
        Suite::Laws { seed, pairs, max_degree, degree_law_max, fmt } => {
            let rep = check_operator_laws(seed, pairs, max_degree, degree_law_max)?;
            let mut em = Emitter::new(out, fmt.format);
            em.emit(&rep)?;
            Ok(em.exit_code())
        }
    }
}
