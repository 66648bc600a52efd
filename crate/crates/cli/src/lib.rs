//! Command-line frontend for `grassmann-core`.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 computational guard
//! (enumeration cap or oracle budget), 3 verification mismatch.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmann_core::counting::{self, coeff_poly, Method};
use grassmann_core::field::FieldSpec;
use grassmann_core::grassmannian::{
    canonicalize, enumerate_grassmannian, enumerate_stratum, EnumLimit, DEFAULT_CAP,
};
use grassmann_core::oracle::{cross_check, DEFAULT_BUDGET};
use grassmann_core::pivots::{pivot_sequences, stratum_size, PivotSeq};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::format::{
    big_json, echelon_json, matrix_text, parse_matrix_json, parse_matrix_text, poly_json,
    poly_text, report_json, FieldOrder, FormatError, MatrixJson, RECORD_SEPARATOR,
};

/// Environment variable overriding the default enumeration cap.
pub const CAP_ENV: &str = "GRASSMANN_ENUM_CAP";
/// Environment variable overriding the default oracle budget.
pub const BUDGET_ENV: &str = "GRASSMANN_ORACLE_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "grassmann", version, about = "Grassmannians over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum MethodArg {
    Gaussian,
    #[default]
    Pivot,
    Poly,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Gaussian => Method::Gaussian,
            MethodArg::Pivot => Method::PivotSum,
            MethodArg::Poly => Method::Poly,
        }
    }
}

#[derive(Debug, Args)]
pub struct Dims {
    /// Ambient dimension
    #[arg(long)]
    pub n: usize,
    /// Subspace dimension
    #[arg(long)]
    pub d: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print |Gr(d, n)| over a field of order q
    Count {
        /// Field order, as `q` or `p^k`
        #[arg(long)]
        q: FieldOrder,
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Sum strata on a thread pool (pivot method)
        #[arg(long)]
        parallel: bool,
    },
    /// Print the coefficients of |Gr(d, n)| as a polynomial in q
    Poly {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stream every d-dimensional subspace of F_q^n as its echelon form
    Enumerate {
        #[arg(long)]
        q: FieldOrder,
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Refuse to enumerate more than this many subspaces
        /// (default 10000000, or $GRASSMANN_ENUM_CAP)
        #[arg(long)]
        cap: Option<u64>,
        /// Ignore the cap
        #[arg(long)]
        force: bool,
        /// Build strata on a thread pool; output order is unchanged but each
        /// stratum is buffered in memory
        #[arg(long)]
        parallel: bool,
    },
    /// List the pivot sequences for (n, d) in lexicographic order
    Pivots {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Canonical echelon form of the row space of a matrix
    Canon {
        /// Field order; optional when the input is JSON carrying "q"
        #[arg(long)]
        q: Option<FieldOrder>,
        /// Matrix file (text or JSON); `-` or absent reads standard input
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-check counts and the canonical-form bijection against brute force
    Verify {
        #[arg(long)]
        q: FieldOrder,
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Maximum q^(dn) tuples the oracle may examine
        /// (default 16777216, or $GRASSMANN_ORACLE_BUDGET)
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// A failed command: exit code plus a one-line diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<grassmann_core::Error> for Failure {
    fn from(e: grassmann_core::Error) -> Failure {
        use grassmann_core::Error as E;
        let code = match e {
            E::EnumerationTooLarge { .. } | E::BudgetExceeded { .. } => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        match e {
            FormatError::Core(e) => e.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        if e.kind() == io::ErrorKind::BrokenPipe {
            // the reader went away; nothing left to report
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure::usage(e.to_string())
    }
}

fn env_u64(name: &str) -> Result<Option<u64>, Failure> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::usage(format!("{name} must be a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn field(q: FieldOrder) -> Result<FieldSpec, Failure> {
    Ok(FieldSpec::from_order(q.0)?)
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = match std::error::Error::source(&e) {
                Some(inner) if e.kind() == ErrorKind::ValueValidation => inner.to_string(),
                _ => e.to_string(),
            };
            // clap spreads some messages over several lines before the usage block
            let line = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let line = line.strip_prefix("error: ").unwrap_or(&line);
            let _ = writeln!(err, "error: {line}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Count {
            q,
            dims,
            method,
            format,
            parallel,
        } => cmd_count(q, dims, method.into(), format, parallel, out),
        Command::Poly { dims, format } => cmd_poly(dims, format, out),
        Command::Enumerate {
            q,
            dims,
            format,
            cap,
            force,
            parallel,
        } => {
            let cap = match cap {
                Some(c) => c,
                None => env_u64(CAP_ENV)?.unwrap_or(DEFAULT_CAP),
            };
            cmd_enumerate(q, dims, format, EnumLimit { cap, force }, parallel, out)
        }
        Command::Pivots { dims, format } => cmd_pivots(dims, format, out),
        Command::Canon { q, input, format } => cmd_canon(q, input, format, stdin, out),
        Command::Verify {
            q,
            dims,
            format,
            budget,
        } => {
            let budget = match budget {
                Some(b) => b,
                None => env_u64(BUDGET_ENV)?.unwrap_or(DEFAULT_BUDGET),
            };
            cmd_verify(q, dims, format, budget, out)
        }
    }
}

fn count_pivot_sum_parallel(q: u64, n: usize, d: usize) -> Result<BigUint, Failure> {
    let strata: Vec<PivotSeq> = pivot_sequences(n, d)?.collect();
    strata
        .par_iter()
        .map(|s| stratum_size(s, q))
        .try_reduce(|| BigUint::from(0u32), |a, b| Ok(a + b))
        .map_err(Failure::from)
}

fn cmd_count(
    q: FieldOrder,
    dims: Dims,
    method: Method,
    format: Format,
    parallel: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let value = if parallel && method == Method::PivotSum {
        count_pivot_sum_parallel(q.0, dims.n, dims.d)?
    } else {
        counting::count(q.0, dims.n, dims.d, method)?
    };
    match format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => write_json(
            out,
            &json!({
                "q": q.0,
                "n": dims.n,
                "d": dims.d,
                "method": method.to_string(),
                "count": big_json(&value),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_poly(dims: Dims, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = coeff_poly(dims.n, dims.d)?;
    match format {
        Format::Text => out.write_all(poly_text(&p).as_bytes())?,
        Format::Json => write_json(out, &poly_json(&p))?,
    }
    Ok(EXIT_OK)
}

fn cmd_pivots(dims: Dims, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    for s in pivot_sequences(dims.n, dims.d)? {
        match format {
            Format::Text => writeln!(out, "{s}")?,
            Format::Json => write_json(out, &json!(s.columns()))?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(
    q: FieldOrder,
    dims: Dims,
    format: Format,
    limit: EnumLimit,
    parallel: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let f = field(q)?;
    // validates dimensions and the cap before anything is written
    let subspaces = enumerate_grassmannian(&f, dims.n, dims.d, limit)?;
    let render = |form: &grassmann_core::EchelonForm| match format {
        Format::Text => matrix_text(form.rows()),
        Format::Json => {
            let mut s = serde_json::to_string(&echelon_json(form)).expect("JSON value");
            s.push('\n');
            s
        }
    };
    let mut first = true;
    let mut emit = |out: &mut dyn Write, record: &str| -> io::Result<()> {
        if format == Format::Text && !first {
            writeln!(out, "{RECORD_SEPARATOR}")?;
        }
        first = false;
        out.write_all(record.as_bytes())
    };
    if parallel {
        let strata: Vec<PivotSeq> = pivot_sequences(dims.n, dims.d)?.collect();
        // each worker renders one stratum; par_iter collect keeps stratum order
        let rendered: Vec<Vec<String>> = strata
            .par_iter()
            .map(|s| {
                enumerate_stratum(&f, s, EnumLimit::UNBOUNDED)
                    .map(|it| it.map(|form| render(&form)).collect())
            })
            .collect::<Result<_, _>>()?;
        for record in rendered.iter().flatten() {
            emit(out, record)?;
        }
    } else {
        for w in subspaces {
            emit(out, &render(w.canon()))?;
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn cmd_canon(
    q: Option<FieldOrder>,
    input: Option<PathBuf>,
    format: Format,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(&p)
            .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let a = if text.trim_start().starts_with('{') {
        let j = parse_matrix_json(&text)?;
        if let Some(q) = q {
            if q.0 != j.q {
                return Err(Failure::usage(format!(
                    "--q {} does not match \"q\": {} in the input",
                    q.0, j.q
                )));
            }
        }
        j.to_mat()?
    } else {
        let q = q.ok_or_else(|| Failure::usage("--q is required for text matrix input"))?;
        parse_matrix_text(&field(q)?, &text)?
    };
    let w = canonicalize(&a);
    match format {
        Format::Text => {
            out.write_all(matrix_text(w.canon().rows()).as_bytes())?;
            writeln!(out, "dim {}", w.dim())?;
        }
        Format::Json => {
            let m = MatrixJson::from_mat(w.canon().rows());
            write_json(
                out,
                &json!({
                    "q": m.q,
                    "rows": m.rows,
                    "cols": m.cols,
                    "entries": m.entries,
                    "dim": w.dim(),
                }),
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    q: FieldOrder,
    dims: Dims,
    format: Format,
    budget: u64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let f = field(q)?;
    let report = cross_check(&f, dims.n, dims.d, budget)?;
    match format {
        Format::Text => writeln!(out, "{report}")?,
        Format::Json => write_json(out, &report_json(&report))?,
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
}
