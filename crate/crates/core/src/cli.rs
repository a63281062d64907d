//! Command-line front end.
//!
//! Results go to stdout and diagnostics to stderr. Exit codes: 0 success,
//! 1 internal failure, 2 usage or input error, 3 non-admissible sequence,
//! 4 verification mismatch (including direct/oracle disagreement).

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coeffs::{fnomial, multi_fnomial};
use crate::compositions::composition_count;
use crate::fseq::{check_admissible, FSequence};
use crate::inversion::{
    fnomial_inverse_direct, inverse_matrix_direct, inverse_matrix_oracle, verify_delta_convolution,
    TriMatrix,
};
use crate::polybasis::{phi_polynomial, roundtrip_check, InversePath};
use crate::report::json_int;
use crate::tiling::{lambda_decompose, verify_theorem1_recurrence};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_ADMISSIBLE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Sequence selector: `natural`, `fibonacci`, `gaussian:<q>` or `file:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    Natural,
    Fibonacci,
    Gaussian(u64),
    File(PathBuf),
}

impl FromStr for SequenceSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "natural" => return Ok(SequenceSpec::Natural),
            "fibonacci" => return Ok(SequenceSpec::Fibonacci),
            _ => {}
        }
        if let Some(q) = s.strip_prefix("gaussian:") {
            let q: u64 = q
                .parse()
                .map_err(|_| format!("gaussian base `{q}` is not a non-negative integer"))?;
            if q < 2 {
                return Err(format!("gaussian base must be at least 2, got {q}"));
            }
            return Ok(SequenceSpec::Gaussian(q));
        }
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err("file: needs a path".into());
            }
            return Ok(SequenceSpec::File(PathBuf::from(path)));
        }
        Err(format!(
            "unknown sequence `{s}` (expected natural, fibonacci, gaussian:<q> or file:<path>)"
        ))
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Natural => write!(f, "natural"),
            SequenceSpec::Fibonacci => write!(f, "fibonacci"),
            SequenceSpec::Gaussian(q) => write!(f, "gaussian:{q}"),
            SequenceSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl SequenceSpec {
    pub fn load(&self) -> crate::Result<FSequence> {
        match self {
            SequenceSpec::Natural => Ok(FSequence::natural()),
            SequenceSpec::Fibonacci => Ok(FSequence::fibonacci()),
            SequenceSpec::Gaussian(q) => FSequence::gaussian(*q),
            SequenceSpec::File(path) => FSequence::from_file(path),
        }
    }
}

/// Comma-separated list of non-negative integers, e.g. `2,1,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartsList(pub Vec<usize>);

impl FromStr for PartsList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("`{p}` is not a non-negative integer"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PartsList)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiMethod {
    Oracle,
    Direct,
}

#[derive(Debug, Parser)]
#[command(
    name = "fnomial",
    version,
    about = "Exact F-nomial coefficients and their inverse"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// natural | fibonacci | gaussian:<q> | file:<path>
    #[arg(long = "seq", default_value = "fibonacci")]
    pub seq: SequenceSpec,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// C(n,k)_F
    Fnomial {
        #[command(flatten)]
        common: Common,
        n: usize,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// C(n; k_1,...,k_s)_F
    Multinomial {
        #[command(flatten)]
        common: Common,
        n: usize,
        /// comma-separated parts
        parts: PartsList,
    },
    /// Inverse of the F-nomial matrix up to order N
    Invert {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N')]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Phi_n(x), the n-th row of the inverse as a polynomial
    Phi {
        #[command(flatten)]
        common: Common,
        n: usize,
        #[arg(long, value_enum, default_value_t = PhiMethod::Oracle)]
        method: PhiMethod,
    },
    /// Admissibility, delta-convolution and basis round trip up to N
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N')]
        bound: usize,
    },
    /// Lambda decomposition of a part tuple and the multi F-nomial recurrence
    Lambda {
        #[command(flatten)]
        common: Common,
        /// comma-separated positive parts
        parts: PartsList,
    },
    /// Time the direct entry (N,0) against full oracle inversion
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
    },
}

enum Failure {
    Compute(Error),
    Mismatch(String),
    NotAdmissible(String),
    Output(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        e if e.is_non_admissible() => EXIT_NON_ADMISSIBLE,
        Error::NonUnitDiagonal { .. } | Error::MalformedMatrix { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
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
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Compute(e)) => {
            let code = exit_code_for(&e);
            if code == EXIT_NON_ADMISSIBLE {
                let _ = writeln!(err, "error: sequence is not cobweb-admissible: {e}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "error: writing output: {e}");
            EXIT_INTERNAL
        }
        Err(Failure::NotAdmissible(msg)) => {
            let _ = writeln!(err, "error: sequence is not cobweb-admissible: {msg}");
            EXIT_NON_ADMISSIBLE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Fnomial { common, n, k } => cmd_fnomial(common, *n, *k, out),
        Command::Multinomial { common, n, parts } => cmd_multinomial(common, *n, &parts.0, out),
        Command::Invert {
            common,
            bound,
            method,
        } => cmd_inverse_matrix(common, *bound, *method, out),
        Command::Phi { common, n, method } => cmd_phi(common, *n, *method, out),
        Command::Check { common, bound } => cmd_check(common, *bound, out),
        Command::Lambda { common, parts } => cmd_lambda(common, &parts.0, out),
        Command::Bench { common, bounds } => cmd_bench(common, bounds, out),
    }
}

fn emit_scalar(
    out: &mut dyn Write,
    format: Format,
    fields: Value,
    header: &str,
    row: String,
    value: &BigInt,
) -> Result<(), Failure> {
    match format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => writeln!(out, "{fields}")?,
        Format::Csv => {
            writeln!(out, "{header}")?;
            writeln!(out, "{row}")?;
        }
    }
    Ok(())
}

fn cmd_fnomial(common: &Common, n: usize, k: i64, out: &mut dyn Write) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    let value = match usize::try_from(k) {
        Ok(k) => fnomial(&seq, n, k)?,
        Err(_) => BigInt::from(0),
    };
    let fields = json!({
        "sequence": seq.name(),
        "n": n,
        "k": k,
        "value": json_int(&value),
    });
    emit_scalar(
        out,
        common.format,
        fields,
        "n,k,value",
        format!("{n},{k},{value}"),
        &value,
    )
}

fn cmd_multinomial(
    common: &Common,
    n: usize,
    parts: &[usize],
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    let value = multi_fnomial(&seq, n, parts)?;
    let joined: Vec<String> = parts.iter().map(ToString::to_string).collect();
    let fields = json!({
        "sequence": seq.name(),
        "n": n,
        "parts": parts,
        "value": json_int(&value),
    });
    emit_scalar(
        out,
        common.format,
        fields,
        "n,parts,value",
        format!("{n},\"{}\",{value}", joined.join(",")),
        &value,
    )
}

fn first_difference(a: &TriMatrix, b: &TriMatrix) -> Option<(usize, usize, BigInt, BigInt)> {
    (0..a.order()).find_map(|n| {
        (0..=n).find_map(|k| {
            let (x, y) = (a.entry(n, k), b.entry(n, k));
            (x != y).then_some((n, k, x, y))
        })
    })
}

fn write_matrix(out: &mut dyn Write, format: Format, m: &TriMatrix) -> std::io::Result<()> {
    match format {
        Format::Text => write!(out, "{}", m.to_text()),
        Format::Json => writeln!(out, "{}", m.to_json()),
        Format::Csv => write!(out, "{}", m.to_csv()),
    }
}

fn cmd_inverse_matrix(
    common: &Common,
    bound: usize,
    method: Method,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    match method {
        Method::Direct => write_matrix(out, common.format, &inverse_matrix_direct(&seq, bound)?)?,
        Method::Oracle => write_matrix(out, common.format, &inverse_matrix_oracle(&seq, bound)?)?,
        Method::Both => {
            let oracle = inverse_matrix_oracle(&seq, bound)?;
            let direct = inverse_matrix_direct(&seq, bound)?;
            if let Some((n, k, d, o)) = first_difference(&direct, &oracle) {
                return Err(Failure::Mismatch(format!(
                    "entry ({n},{k}): direct {d}, oracle {o}"
                )));
            }
            match common.format {
                Format::Json => {
                    let doc = json!({ "agree": true, "matrix": oracle.to_json_value() });
                    writeln!(out, "{doc}")?;
                }
                Format::Text => {
                    write!(out, "{}", oracle.to_text())?;
                    writeln!(out, "agreement: direct and oracle match on all entries")?;
                }
                Format::Csv => write!(out, "{}", oracle.to_csv())?,
            }
        }
    }
    Ok(())
}

fn cmd_phi(
    common: &Common,
    n: usize,
    method: PhiMethod,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    let path = match method {
        PhiMethod::Oracle => InversePath::Oracle,
        PhiMethod::Direct => InversePath::Direct,
    };
    let phi = phi_polynomial(&seq, n, path)?;
    match common.format {
        Format::Text => writeln!(out, "{phi}")?,
        Format::Json => writeln!(out, "{}", phi.to_json())?,
        Format::Csv => {
            let cells: Vec<String> = phi.coeffs().iter().map(ToString::to_string).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    Ok(())
}

fn cmd_check(common: &Common, bound: usize, out: &mut dyn Write) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    let admissible = check_admissible(&seq, bound)?;
    if let Some(failure) = &admissible.first_failure {
        let (n, k) = failure.position();
        match common.format {
            Format::Json => writeln!(
                out,
                "{}",
                json!({
                    "sequence": seq.name(),
                    "bound": bound,
                    "admissible": false,
                    "first_failure": { "n": n, "k": k, "reason": failure.to_string() },
                })
            )?,
            Format::Text => writeln!(out, "not admissible up to N={bound}: {failure}")?,
            Format::Csv => {
                writeln!(out, "check,status,detail")?;
                writeln!(out, "admissible,fail,\"{failure}\"")?;
            }
        }
        return Err(Failure::NotAdmissible(failure.to_string()));
    }
    let delta = verify_delta_convolution(&seq, bound)?;
    let roundtrip = roundtrip_check(&seq, bound)?;
    match common.format {
        Format::Json => {
            let doc = json!({
                "sequence": seq.name(),
                "bound": bound,
                "admissible": true,
                "delta_convolution": {
                    "passed": delta.passed(),
                    "checked": delta.checked,
                    "first_failure": delta.first_failure.as_ref().map(|f| json!({"n": f.n, "k": f.k, "sum": json_int(&f.sum)})),
                },
                "roundtrip": {
                    "passed": roundtrip.passed(),
                    "checked": roundtrip.checked,
                    "first_failure": roundtrip.first_failure.as_ref().map(|f| json!({"n": f.n, "expanded": f.expanded.to_string()})),
                },
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            writeln!(out, "sequence: {}", seq.name())?;
            writeln!(out, "admissible up to N={bound}")?;
            match &delta.first_failure {
                None => writeln!(out, "delta convolution: pass ({} entries)", delta.checked)?,
                Some(f) => writeln!(
                    out,
                    "delta convolution: FAIL at ({},{}), sum {}",
                    f.n, f.k, f.sum
                )?,
            }
            match &roundtrip.first_failure {
                None => writeln!(
                    out,
                    "basis round trip: pass ({} degrees)",
                    roundtrip.checked
                )?,
                Some(f) => writeln!(
                    out,
                    "basis round trip: FAIL at n={}, got {}",
                    f.n, f.expanded
                )?,
            }
        }
        Format::Csv => {
            writeln!(out, "check,status,detail")?;
            writeln!(out, "admissible,pass,")?;
            let status = |ok: bool| if ok { "pass" } else { "fail" };
            writeln!(
                out,
                "delta_convolution,{},{}",
                status(delta.passed()),
                delta.checked
            )?;
            writeln!(
                out,
                "roundtrip,{},{}",
                status(roundtrip.passed()),
                roundtrip.checked
            )?;
        }
    }
    if !delta.passed() || !roundtrip.passed() {
        return Err(Failure::Mismatch("verification failed".into()));
    }
    Ok(())
}

fn cmd_lambda(common: &Common, parts: &[usize], out: &mut dyn Write) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    let vector = lambda_decompose(&seq, parts)?;
    let total: usize = parts.iter().sum();
    let identity_holds = vector.satisfies_identity(&seq)?;
    let recurrence = verify_theorem1_recurrence(&seq, total, parts)?;
    let lambdas: Vec<String> = vector.lambdas.iter().map(ToString::to_string).collect();
    let joined: Vec<String> = parts.iter().map(ToString::to_string).collect();
    match common.format {
        Format::Json => {
            let doc = json!({
                "sequence": seq.name(),
                "parts": parts,
                "lambdas": vector.lambdas.iter().map(json_int).collect::<Vec<_>>(),
                "identity_holds": identity_holds,
                "recurrence": {
                    "n": total,
                    "lhs": json_int(&recurrence.lhs),
                    "rhs": json_int(&recurrence.rhs),
                    "passed": recurrence.passed(),
                },
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            let terms: Vec<String> = parts
                .iter()
                .zip(&vector.lambdas)
                .map(|(k, l)| format!("{l}*{}", seq.value(*k).unwrap_or_default()))
                .collect();
            writeln!(out, "parts: {}", joined.join(" "))?;
            writeln!(out, "lambdas: {}", lambdas.join(" "))?;
            writeln!(
                out,
                "identity: {} = {} ({})",
                terms.join(" + "),
                seq.value(total)?,
                if identity_holds { "holds" } else { "FAILS" }
            )?;
            writeln!(
                out,
                "recurrence: C({total}; {}) = {}, lambda-weighted sum = {} ({})",
                joined.join(","),
                recurrence.lhs,
                recurrence.rhs,
                if recurrence.passed() { "pass" } else { "FAIL" }
            )?;
        }
        Format::Csv => {
            writeln!(out, "part,lambda")?;
            for (k, l) in parts.iter().zip(&lambdas) {
                writeln!(out, "{k},{l}")?;
            }
        }
    }
    if !identity_holds || !recurrence.passed() {
        return Err(Failure::Mismatch(format!(
            "lambda identity or recurrence failed for parts ({})",
            joined.join(",")
        )));
    }
    Ok(())
}

/// One row of the benchmark table.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub bound: usize,
    pub compositions: u128,
    pub direct_nanos: u128,
    pub oracle_entries: usize,
    pub oracle_nanos: u128,
    pub agree: bool,
}

/// Times `C(N,0)^{-1}` by the composition sum against inverting the whole
/// matrix up to `N`, each on a sequence with cold caches.
pub fn bench_one(seq: &FSequence, bound: usize) -> crate::Result<BenchRow> {
    let cold = seq.clone();
    let start = Instant::now();
    let direct = fnomial_inverse_direct(&cold, bound, 0)?;
    let direct_nanos = start.elapsed().as_nanos();

    let cold = seq.clone();
    let start = Instant::now();
    let oracle = inverse_matrix_oracle(&cold, bound)?;
    let oracle_nanos = start.elapsed().as_nanos();

    Ok(BenchRow {
        bound,
        compositions: composition_count(bound),
        direct_nanos,
        oracle_entries: bound * (bound + 1) / 2,
        oracle_nanos,
        agree: oracle.entry(bound, 0) == direct,
    })
}

fn cmd_bench(common: &Common, bounds: &[usize], out: &mut dyn Write) -> Result<(), Failure> {
    let seq = common.seq.load()?;
    let rows = bounds
        .iter()
        .map(|&b| bench_one(&seq, b))
        .collect::<crate::Result<Vec<_>>>()?;
    let doc = json!({
        "sequence": seq.name(),
        "results": rows.iter().map(|r| json!({
            "n": r.bound,
            "compositions": r.compositions.to_string().parse::<serde_json::Number>().expect("integer"),
            "direct_ns": r.direct_nanos.to_string().parse::<serde_json::Number>().expect("integer"),
            "oracle_entries": r.oracle_entries,
            "oracle_ns": r.oracle_nanos.to_string().parse::<serde_json::Number>().expect("integer"),
            "agree": r.agree,
        })).collect::<Vec<_>>(),
    });
    match common.format {
        Format::Json => writeln!(out, "{doc}")?,
        Format::Csv => {
            writeln!(
                out,
                "n,compositions,direct_ns,oracle_entries,oracle_ns,agree"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.bound,
                    r.compositions,
                    r.direct_nanos,
                    r.oracle_entries,
                    r.oracle_nanos,
                    r.agree
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "sequence: {}", seq.name())?;
            writeln!(
                out,
                "{:>4} {:>14} {:>14} {:>10} {:>14} {:>6}",
                "N", "compositions", "direct (ms)", "entries", "oracle (ms)", "agree"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>4} {:>14} {:>14.3} {:>10} {:>14.3} {:>6}",
                    r.bound,
                    r.compositions,
                    r.direct_nanos as f64 / 1e6,
                    r.oracle_entries,
                    r.oracle_nanos as f64 / 1e6,
                    r.agree
                )?;
            }
            writeln!(out)?;
            writeln!(out, "{doc}")?;
        }
    }
    if let Some(r) = rows.iter().find(|r| !r.agree) {
        return Err(Failure::Mismatch(format!(
            "direct and oracle disagree on entry ({},0)",
            r.bound
        )));
    }
    Ok(())
}
