//! Command line front end for `constel-core`.
//!
//! Each subcommand resolves its configuration, builds one prime table
//! sized to the request, fans out to library calls, and renders the
//! result single threaded. Exit codes are stable per error class:
//! 0 success, 1 failed acceptance criterion (`report` only), 2 usage,
//! parse, and domain errors, 3 sieve range exceeded, 4 overflow
//! ceiling exceeded.

pub mod suite;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use constel_core::bateman_horn::bateman_horn_constant;
use constel_core::constants::half_e_gamma;
use constel_core::constellations::singular_series;
use constel_core::poly::poly_eval;
use constel_core::report::{
    comparison_csv, comparison_rows, dependency_trend_report, rows_json, trend_csv,
};
use constel_core::sieve::MAX_SIEVE_LIMIT;
use constel_core::{
    with_thread_count, BatemanHornConstant, ComparisonTarget, DensityComparison, Error,
    IrreducibilityScreen, OffsetTuple, PolynomialFamily, PrimeTable, Result, SingularSeries,
    TrendRow,
};

/// Prime constellation heuristics from the command line: Mertens
/// products, singular series, Bateman-Horn constants, and empirical
/// comparisons against a segmented sieve.
#[derive(Debug, Parser)]
#[command(name = "constel", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dependency ratio trend against its 0.5 e^gamma limit
    MertensRatio(MertensRatioArgs),
    /// Singular series and empirical counts for a prime k-tuple
    Tuple(TupleArgs),
    /// Bateman-Horn constant and empirical counts for a polynomial family
    Bh(BhArgs),
    /// Run the canned acceptance suite over the whole pipeline
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct MertensRatioArgs {
    /// Comma separated evaluation points, scientific notation welcome
    /// (for example 1e4,1e8,1e12)
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_count)]
    pub checkpoints: Vec<u64>,

    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct TupleArgs {
    /// Offsets of the tuple, for example "0,2,6,8"
    pub offsets: String,

    /// Count constellation starts up to this bound
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub xmax: u64,

    /// Report checkpoints; defaults to the powers of ten up to xmax
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub checkpoints: Option<Vec<u64>>,

    /// Truncate the singular series at this prime bound
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub plimit: u64,

    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct BhArgs {
    /// Polynomials of the family, for example "x^2+1" or "x" "x+2"
    #[arg(required = true)]
    pub polys: Vec<String>,

    /// Count prime family arguments up to this bound
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub xmax: u64,

    /// Report checkpoints; defaults to the powers of ten up to xmax
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub checkpoints: Option<Vec<u64>>,

    /// Truncate the constant at this prime bound (nonlinear families
    /// cap at 1e5 regardless)
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub plimit: u64,

    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Size of the worker pool; defaults to one worker per core
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Size of the worker pool; defaults to one worker per core
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Parses a nonnegative integer flag in plain or scientific notation.
/// Evaluated exactly in integer arithmetic, so the whole u64 range is
/// expressible and 1e18 means precisely 10^18.
pub fn parse_count(text: &str) -> std::result::Result<u64, String> {
    let t = text.trim();
    let malformed = || format!("expected a nonnegative integer such as 1000 or 1e3, got {text:?}");
    let (mantissa, exponent) = match t.split_once(['e', 'E']) {
        None => (t, "0"),
        Some((m, e)) => (m, e),
    };
    let exponent: i64 = exponent.parse().map_err(|_| malformed())?;
    let (int_part, frac_part) = match mantissa.split_once('.') {
        None => (mantissa, ""),
        Some((i, f)) => (i, f),
    };
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.len() + frac_part.len() == 0 || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(malformed());
    }
    let too_large = || format!("{text:?} exceeds the 64-bit count ceiling");
    let mut digits: u128 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        digits = digits
            .checked_mul(10)
            .and_then(|d| d.checked_add(u128::from(b - b'0')))
            .ok_or_else(too_large)?;
    }
    let shift = exponent - frac_part.len() as i64;
    let value = if shift >= 0 {
        let scale = u32::try_from(shift)
            .ok()
            .and_then(|s| 10u128.checked_pow(s))
            .ok_or_else(too_large);
        if digits == 0 {
            0
        } else {
            digits.checked_mul(scale?).ok_or_else(too_large)?
        }
    } else {
        // a negative exponent must divide out exactly: 2500e-2 is an
        // integer, 25e-2 is not
        let scale = u32::try_from(-shift)
            .ok()
            .and_then(|s| 10u128.checked_pow(s));
        match scale {
            Some(s) if digits % s == 0 => digits / s,
            _ if digits == 0 => 0,
            _ => return Err(format!("{text:?} is not an integer")),
        }
    };
    u64::try_from(value).map_err(|_| too_large())
}

/// Maps an error to the exit code documented for its class.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::Domain(_) => 2,
        Error::Range(_) => 3,
        Error::Overflow(_) => 4,
    }
}

/// Executes the parsed command and returns the process exit code for
/// the success path (0, or 1 when `report` finds a failing criterion).
pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::MertensRatio(args) => {
            let report = in_pool(args.render.threads, || mertens_ratio_report(args))?;
            emit(&args.render.out, &report)?;
            Ok(0)
        }
        Command::Tuple(args) => {
            let report = in_pool(args.render.threads, || tuple_report(args))?;
            emit(&args.render.out, &report)?;
            Ok(0)
        }
        Command::Bh(args) => {
            let report = in_pool(args.render.threads, || bh_report(args))?;
            emit(&args.render.out, &report)?;
            Ok(0)
        }
        Command::Report(args) => {
            let (report, all_pass) = in_pool(args.threads, || Ok(acceptance_report()))?;
            emit(&args.out, &report)?;
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<R> + Send) -> Result<R> {
    match threads {
        None => f(),
        Some(n) => with_thread_count(n, f)?,
    }
}

fn emit(out: &Option<PathBuf>, report: &str) -> Result<()> {
    match out {
        None => {
            print!("{report}");
            Ok(())
        }
        Some(path) => fs::write(path, report)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
    }
}

/// Rejects sieve requests beyond the supported ceiling before any
/// memory is committed to them.
fn checked_sieve_limit(required: u64) -> Result<u64> {
    if required > MAX_SIEVE_LIMIT {
        return Err(Error::Range(format!(
            "request needs primes up to {required}, beyond the sieve ceiling {MAX_SIEVE_LIMIT}"
        )));
    }
    Ok(required.max(2))
}

fn resolve_checkpoints(explicit: &Option<Vec<u64>>, xmax: u64) -> Vec<u64> {
    if let Some(cps) = explicit {
        return cps.clone();
    }
    let mut cps = Vec::new();
    let mut p = 10u64;
    while p <= xmax {
        cps.push(p);
        match p.checked_mul(10) {
            Some(next) => p = next,
            None => break,
        }
    }
    if cps.last() != Some(&xmax) {
        cps.push(xmax);
    }
    cps
}

fn mertens_ratio_report(args: &MertensRatioArgs) -> Result<String> {
    let max_x = args
        .checkpoints
        .iter()
        .copied()
        .max()
        .expect("clap enforces at least one checkpoint");
    // the ratio only consults primes up to sqrt(x)
    let table = PrimeTable::build(checked_sieve_limit(max_x.isqrt())?)?;
    let rows = dependency_trend_report(&table, &args.checkpoints)?;
    Ok(match args.render.format {
        Format::Text => trend_text(&rows),
        Format::Csv => trend_csv(&rows),
        Format::Json => rows_json(&rows)?,
    })
}

fn tuple_report(args: &TupleArgs) -> Result<String> {
    let tuple = OffsetTuple::parse(&args.offsets)?;
    let checkpoints = resolve_checkpoints(&args.checkpoints, args.xmax);
    let top = checkpoints
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(args.xmax);
    let need = top.checked_add(tuple.max_offset()).unwrap_or(u64::MAX);
    let table = PrimeTable::build(checked_sieve_limit(need.max(args.plimit))?)?;
    let series = singular_series(&tuple, &table, args.plimit)?;
    let target = ComparisonTarget::Tuple(tuple.clone());
    let rows = comparison_rows(
        &target,
        &table,
        &checkpoints,
        series.constant.value,
        tuple.k() as u32,
        series.constant.truncation_limit,
    )?;
    Ok(match args.render.format {
        Format::Text => tuple_text(&series, &rows),
        Format::Csv => comparison_csv(&rows),
        Format::Json => rows_json(&rows)?,
    })
}

fn bh_report(args: &BhArgs) -> Result<String> {
    let family = PolynomialFamily::parse(&args.polys)?;
    let checkpoints = resolve_checkpoints(&args.checkpoints, args.xmax);
    let top = checkpoints
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(args.xmax);

    // Fail fast when a checkpoint value already exceeds the 64-bit
    // primality ceiling, and learn how far a table would have to reach
    // to cover the values themselves.
    let mut value_cap: u64 = 0;
    for g in family.polys() {
        let v = poly_eval(g, top)?;
        if v > u64::MAX as i128 {
            return Err(Error::Overflow(format!(
                "{g} reaches {v} at x = {top}, beyond the 64-bit primality ceiling"
            )));
        }
        value_cap = value_cap.max(v.max(0) as u64);
    }
    // Values past this bound go through the direct primality test
    // instead of an oversized table.
    const TABLE_VALUE_CAP: u64 = 1 << 31;
    let cover = if value_cap <= TABLE_VALUE_CAP {
        value_cap
    } else {
        0
    };

    let table = PrimeTable::build(checked_sieve_limit(cover.max(args.plimit))?)?;
    let bh = bateman_horn_constant(&family, &table, args.plimit)?;
    let h = family.degree_product()?;
    let per_argument = bh.constant.value / h as f64;
    let target = ComparisonTarget::Family(family.clone());
    let rows = comparison_rows(
        &target,
        &table,
        &checkpoints,
        per_argument,
        family.k() as u32,
        bh.constant.truncation_limit,
    )?;
    Ok(match args.render.format {
        Format::Text => family_text(&family, &bh, h, per_argument, &rows),
        Format::Csv => comparison_csv(&rows),
        Format::Json => rows_json(&rows)?,
    })
}

fn acceptance_report() -> (String, bool) {
    let outcomes = suite::run_criteria();
    let mut text = String::new();
    let mut all_pass = true;
    for o in &outcomes {
        all_pass &= o.pass;
        let verdict = if o.pass { "pass" } else { "FAIL" };
        let _ = writeln!(
            text,
            "criterion {:2} [{verdict}] {}: {}",
            o.index, o.title, o.detail
        );
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let _ = writeln!(
        text,
        "overall: {} ({passed}/{} criteria)",
        if all_pass { "pass" } else { "FAIL" },
        outcomes.len()
    );
    (text, all_pass)
}

fn trend_text(rows: &[TrendRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "dependency ratio trend, limit 0.5 e^gamma = {}",
        half_e_gamma()
    );
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:>16} {:>22} {:>22}",
        "x", "dependency_ratio", "abs_error"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>16} {:>22} {:>22}",
            r.x,
            r.dependency_ratio.to_string(),
            format!("{:e}", r.abs_error)
        );
    }
    s
}

fn comparison_table(rows: &[DensityComparison]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>16} {:>12} {:>22} {:>22}",
        "x", "empirical", "predicted", "ratio"
    );
    for r in rows {
        let ratio = match r.ratio {
            Some(v) => v.to_string(),
            None => "-".into(),
        };
        let _ = writeln!(
            s,
            "{:>16} {:>12} {:>22} {:>22}",
            r.x,
            r.empirical,
            r.predicted.to_string(),
            ratio
        );
    }
    s
}

fn tuple_text(series: &SingularSeries, rows: &[DensityComparison]) -> String {
    let c = &series.constant;
    let mut s = String::new();
    let _ = writeln!(s, "tuple {} (k = {})", series.tuple, series.tuple.k());
    let _ = writeln!(s, "admissible: {}", series.admissible);
    let _ = writeln!(
        s,
        "singular series over primes <= {}: {}",
        c.truncation_limit, c.value
    );
    let _ = writeln!(s, "last doubling delta: {:e}", c.last_doubling_delta);
    s.push('\n');
    s.push_str(&comparison_table(rows));
    s
}

fn family_text(
    family: &PolynomialFamily,
    bh: &BatemanHornConstant,
    h: u64,
    per_argument: f64,
    rows: &[DensityComparison],
) -> String {
    let c = &bh.constant;
    let mut s = String::new();
    let _ = writeln!(s, "family {} (k = {}, H = {})", family, family.k(), h);
    for g in family.polys() {
        let _ = writeln!(s, "  {g}: {}", screen_label(g.screen()));
    }
    let _ = writeln!(
        s,
        "constant E over primes <= {}: {}",
        c.truncation_limit, c.value
    );
    let _ = writeln!(s, "per-argument constant E/H: {per_argument}");
    let _ = writeln!(s, "last doubling delta: {:e}", c.last_doubling_delta);
    match bh.fixed_divisor {
        Some(p) => {
            let _ = writeln!(
                s,
                "fixed divisor: {p} (divides every value, the constant is exactly 0)"
            );
        }
        None => {
            let _ = writeln!(s, "fixed divisor: none");
        }
    }
    s.push('\n');
    s.push_str(&comparison_table(rows));
    s
}

fn screen_label(screen: IrreducibilityScreen) -> String {
    match screen {
        IrreducibilityScreen::Irreducible => "irreducible (rational root screen)".into(),
        IrreducibilityScreen::Reducible { root_num, root_den } => {
            if root_den == 1 {
                format!("reducible, rational root {root_num}")
            } else {
                format!("reducible, rational root {root_num}/{root_den}")
            }
        }
        IrreducibilityScreen::Undetermined => {
            "screen inconclusive past degree 3, asserted irreducible".into()
        }
    }
}
