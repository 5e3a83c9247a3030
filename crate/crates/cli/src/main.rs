//! `boolcomm` command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use boolcomm::complexity::{
    codebook_size, delta_table, diagnostics, format_significant, interval_bounds_exact,
    interval_table, rate, threshold_table, write_csv, CsvRow,
};
use boolcomm::foolingset::{construct_family, lower_bound_bits, verify_fooling};
use boolcomm::protocol::{ideal_total_bits, Protocol};
use boolcomm::{
    ColumnFamily, Error, MeasurementMatrix, SearchMode, Shape, SymmetricFunction, DEFAULT_BUDGET,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "boolcomm", version, about = "Block computation of symmetric Boolean functions over a broadcast network")]
struct Cli {
    /// Cap on enumerated states (matrices or matrix pairs).
    #[arg(long, global = true, env = "BOOLCOMM_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ModeArgs {
    /// Enumerate every measurement matrix.
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    /// Number of random matrices in sampled mode.
    #[arg(long)]
    trials: Option<u64>,
    /// Seed for sampled mode.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower, achievable and upper rates in bits per instance.
    Complexity { function: String },
    /// Run the protocol on one measurement matrix.
    Simulate {
        function: String,
        /// Matrix rows of 0/1, comma separated, node 1 first.
        #[arg(long, conflicts_with = "matrix")]
        rows: Option<String>,
        /// File with one 0/1 row per node.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Expected block length.
        #[arg(long = "N")]
        block_len: Option<usize>,
    },
    /// Check zero error and report worst-case bits.
    Verify {
        function: String,
        #[arg(long = "N")]
        block_len: usize,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Brute-force the fooling-set family.
    Fooling {
        function: String,
        #[arg(long = "N")]
        block_len: usize,
        /// Override the column sums of the family, e.g. `0,3`.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<i64>>,
    },
    /// Rate table over all functions of one kind.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Threshold,
    Delta,
    Interval,
}

/// A command failure together with its exit code.
struct Failure {
    kind: &'static str,
    code: u8,
    message: String,
    detail: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::Parse { .. } => ("parse", 2),
            Error::Domain(_) => ("domain", 2),
            Error::Dimension(_) => ("dimension", 2),
            Error::RankOutOfRange { .. } => ("domain", 2),
            Error::BudgetExceeded { .. } => ("budget", 3),
            Error::Decode(_) => ("decode", 4),
            Error::Invariant(_) => ("invariant", 4),
        };
        let detail = match &e {
            Error::Parse { position, .. } => json!({ "position": position }),
            Error::BudgetExceeded { required, budget, .. } => {
                json!({ "required": required.to_string(), "budget": budget })
            }
            _ => Value::Null,
        };
        Failure {
            kind,
            code,
            message: e.to_string(),
            detail,
        }
    }
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: "usage",
            code: 2,
            message: message.into(),
            detail: Value::Null,
        }
    }

    fn check(message: impl Into<String>, detail: Value) -> Self {
        Failure {
            kind: "check_failed",
            code: 4,
            message: message.into(),
            detail,
        }
    }
}

type CmdResult<T> = Result<T, Failure>;

/// Output plus an optional failure raised after the output is complete.
struct Report {
    body: String,
    failure: Option<Failure>,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, failure: None }
    }
}

fn num(x: f64) -> Value {
    let s = format_significant(x, DIGITS);
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => json!(v),
        _ => Value::String(s),
    }
}

fn sig(x: f64) -> String {
    format_significant(x, DIGITS)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn parse_function(spec: &str) -> CmdResult<SymmetricFunction> {
    Ok(spec.parse::<SymmetricFunction>()?)
}

fn shape_name(shape: &Shape) -> &'static str {
    match shape {
        Shape::Constant(_) => "constant",
        Shape::Threshold { .. } => "threshold",
        Shape::CoThreshold { .. } => "co_threshold",
        Shape::Delta { .. } => "delta",
        Shape::Interval { .. } => "interval",
        Shape::Union(_) => "union",
    }
}

fn cmd_complexity(spec: &str, format: Format) -> CmdResult<Report> {
    let f = parse_function(spec)?;
    let r = rate::<f64>(&f)?;
    let size = codebook_size(&f);
    let shape = f.shape();
    let interval = match shape {
        Shape::Interval { a, b } => {
            let d = diagnostics::<f64>(f.n(), a as i64, b as i64)?;
            let exact = interval_bounds_exact(f.n(), a as i64, b as i64)?;
            Some((d, exact.branch))
        }
        _ => None,
    };
    let body = match format {
        Format::Json => {
            let mut v = json!({
                "function": f.to_string(),
                "shape": shape_name(&shape),
                "lower_bits": num(r.lower_bound),
                "achievable_bits": num(r.achievable),
                "upper_bits": num(r.upper_bound),
                "exact": r.exact,
                "codebook_size": size.to_string(),
            });
            if let Some((d, branch)) = &interval {
                v["gap"] = num(d.gap);
                v["residual_ratio"] = num(d.residual_ratio);
                v["branch"] = serde_json::to_value(branch).expect("json");
            }
            pretty(&v)
        }
        Format::Csv => return Err(Failure::usage("complexity supports text or json output")),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "function: {f}").ok();
            writeln!(s, "shape: {}", shape_name(&shape)).ok();
            writeln!(s, "lower_bits: {}", sig(r.lower_bound)).ok();
            writeln!(s, "achievable_bits: {}", sig(r.achievable)).ok();
            writeln!(s, "upper_bits: {}", sig(r.upper_bound)).ok();
            writeln!(s, "exact: {}", r.exact).ok();
            writeln!(s, "codebook_size: {size}").ok();
            if let Some((d, branch)) = &interval {
                writeln!(s, "gap: {}", sig(d.gap)).ok();
                writeln!(s, "residual_ratio: {}", sig(d.residual_ratio)).ok();
                writeln!(s, "branch: {}", serde_json::to_value(branch).expect("json").as_str().unwrap_or("")).ok();
            }
            s
        }
    };
    Ok(Report::ok(body))
}

fn cmd_simulate(
    spec: &str,
    rows: Option<&str>,
    matrix: Option<&PathBuf>,
    block_len: Option<usize>,
    format: Format,
) -> CmdResult<Report> {
    let f = parse_function(spec)?;
    let text = match (rows, matrix) {
        (Some(r), None) => r.to_string(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?,
        _ => return Err(Failure::usage("give exactly one of --rows or --matrix")),
    };
    let m: MeasurementMatrix = text.parse()?;
    if let Some(expected) = block_len {
        if expected != m.block_len() {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, expected N = {expected}",
                m.block_len()
            ))
            .into());
        }
    }
    let protocol = Protocol::new(&f, m.block_len())?;
    let outcome = protocol.run(&m)?;
    let record = outcome.record(&f);
    // the record must decode on its own
    protocol.verify_record(&record)?;
    let body = match format {
        Format::Json => pretty(&serde_json::to_value(&record).expect("json")),
        Format::Csv => return Err(Failure::usage("simulate supports text or json output")),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "function: {f}").ok();
            writeln!(s, "n={} N={}", record.n, record.block_len).ok();
            for e in &record.events {
                writeln!(
                    s,
                    "node {} depth {} ones {}: {} bits {}",
                    e.node, e.depth, e.group_ones, e.bit_len, e.bits_hex
                )
                .ok();
            }
            writeln!(s, "total_bits: {}", record.total_bits).ok();
            writeln!(s, "output: {}", record.outputs.first().map(String::as_str).unwrap_or("")).ok();
            writeln!(s, "all nodes agree: true").ok();
            s
        }
    };
    Ok(Report::ok(body))
}

fn search_mode(mode: &ModeArgs) -> CmdResult<SearchMode> {
    match (mode.exhaustive, mode.trials, mode.seed) {
        (true, _, _) => Ok(SearchMode::Exhaustive),
        (false, Some(trials), Some(seed)) => Ok(SearchMode::Sampled { trials, seed }),
        (false, Some(_), None) => Err(Failure::usage("sampled mode needs --seed")),
        (false, None, _) => Err(Failure::usage("give --exhaustive or --trials with --seed")),
    }
}

fn cmd_verify(spec: &str, block_len: usize, mode: &ModeArgs, budget: u64, format: Format) -> CmdResult<Report> {
    let f = parse_function(spec)?;
    let mode = search_mode(mode)?;
    let protocol = Protocol::new(&f, block_len)?;
    let report = protocol.sweep(mode, budget)?;
    let ideal: f64 = ideal_total_bits(&f, block_len);
    let ok = report.inputs - report.failures;
    let mode_name = match mode {
        SearchMode::Exhaustive => "exhaustive",
        SearchMode::Sampled { .. } => "sampled",
    };
    let argmax = report.argmax.as_ref().map(|m| m.row_strings());
    let first_failure = report
        .first_failure
        .as_ref()
        .map(|(m, e)| json!({ "matrix": m.row_strings(), "error": e.to_string() }));
    let body = match format {
        Format::Json => pretty(&json!({
            "function": f.to_string(),
            "N": block_len,
            "mode": mode_name,
            "inputs": report.inputs,
            "failures": report.failures,
            "worst_case_bits": report.max_bits,
            "worst_case_rate": num(report.max_bits as f64 / block_len as f64),
            "ideal_bits": num(ideal),
            "max_events": report.max_events,
            "argmax": argmax,
            "first_failure": first_failure,
        })),
        Format::Csv => return Err(Failure::usage("verify supports text or json output")),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "zero-error: {ok}/{} inputs OK; worst_case_bits={}",
                report.inputs, report.max_bits
            )
            .ok();
            writeln!(s, "mode: {mode_name}").ok();
            writeln!(s, "worst_case_rate: {}", sig(report.max_bits as f64 / block_len as f64)).ok();
            writeln!(s, "ideal_bits: {}", sig(ideal)).ok();
            writeln!(s, "max_events: {}", report.max_events).ok();
            if let Some(rows) = &argmax {
                writeln!(s, "argmax: {}", rows.join(",")).ok();
            }
            if let Some((m, e)) = &report.first_failure {
                writeln!(s, "first_failure: {} ({e})", m.row_strings().join(",")).ok();
            }
            s
        }
    };
    let failure = (report.failures > 0).then(|| {
        Failure::check(
            format!("{} of {} inputs failed", report.failures, report.inputs),
            first_failure.clone().unwrap_or(Value::Null),
        )
    });
    Ok(Report { body, failure })
}

fn cmd_fooling(spec: &str, block_len: usize, weights: Option<&[i64]>, budget: u64, format: Format) -> CmdResult<Report> {
    let f = parse_function(spec)?;
    let family = match weights {
        Some(ws) => ColumnFamily::new(f.n(), ws.iter().copied()),
        None => construct_family(&f)?,
    };
    let verdict = verify_fooling(&f, &family, block_len, budget)?;
    let bound: f64 = lower_bound_bits(&family);
    let body = match format {
        Format::Json => pretty(&serde_json::to_value(&verdict).expect("json")),
        Format::Csv => return Err(Failure::usage("fooling supports text or json output")),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "function: {f}").ok();
            writeln!(s, "column_sums: {:?}", family.weights()).ok();
            writeln!(s, "columns: {}", family.size_per_column()).ok();
            writeln!(s, "lower_bound_bits: {}", sig(bound)).ok();
            writeln!(s, "pairs_checked: {}", verdict.pairs_checked).ok();
            writeln!(s, "single_row_sufficient: {}", verdict.single_row_sufficient).ok();
            match &verdict.counterexample {
                None => writeln!(s, "valid").ok(),
                Some((m1, m2)) => writeln!(
                    s,
                    "invalid: {} and {} are not separated",
                    m1.row_strings().join(","),
                    m2.row_strings().join(",")
                )
                .ok(),
            };
            s
        }
    };
    let failure = (!verdict.valid).then(|| {
        Failure::check(
            "family does not fool the function",
            serde_json::to_value(&verdict).expect("json"),
        )
    });
    Ok(Report { body, failure })
}

fn cmd_table(kind: TableKind, n_max: usize, format: Format) -> CmdResult<Report> {
    let rows: Vec<CsvRow> = match kind {
        TableKind::Threshold => threshold_table(n_max)?,
        TableKind::Delta => delta_table(n_max)?,
        TableKind::Interval => interval_table(n_max)?,
    };
    let body = match format {
        Format::Csv | Format::Text => write_csv(&rows),
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "kind": r.kind,
                        "n": r.n,
                        "theta_or_a": r.theta_or_a,
                        "b": r.b,
                        "lower_bits": num(r.rate.lower_bound),
                        "achievable_bits": num(r.rate.achievable),
                        "upper_bits": num(r.rate.upper_bound),
                        "exact": r.rate.exact,
                    })
                })
                .collect(),
        )),
    };
    Ok(Report::ok(body))
}

fn dispatch(cli: &Cli) -> CmdResult<Report> {
    let format = cli.format.unwrap_or(Format::Text);
    match &cli.command {
        Command::Complexity { function } => cmd_complexity(function, format),
        Command::Simulate {
            function,
            rows,
            matrix,
            block_len,
        } => cmd_simulate(function, rows.as_deref(), matrix.as_ref(), *block_len, format),
        Command::Verify {
            function,
            block_len,
            mode,
        } => cmd_verify(function, *block_len, mode, cli.budget, format),
        Command::Fooling {
            function,
            block_len,
            weights,
        } => cmd_fooling(function, *block_len, weights.as_deref(), cli.budget, format),
        Command::Table { kind, n_max } => cmd_table(*kind, *n_max, cli.format.unwrap_or(Format::Csv)),
    }
}

fn fail(failure: &Failure) -> ExitCode {
    let record = json!({
        "status": "error",
        "kind": failure.kind,
        "exit_code": failure.code,
        "message": failure.message,
        "detail": failure.detail,
    });
    eprintln!("{record}");
    ExitCode::from(failure.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(f) => return fail(&f),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &report.body) {
                return fail(&Failure::usage(format!("cannot write {}: {e}", path.display())));
            }
        }
        None => print!("{}", report.body),
    }
    match &report.failure {
        Some(f) => fail(f),
        None => ExitCode::SUCCESS,
    }
}
