mod job;
mod run;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use job::{Command, JobSpec, Limits};
use run::{Failure, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "polya",
    version,
    about = "Cycle-index formulas for symmetric powers and their quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    limits: LimitArgs,
    /// Add wall-clock timing to the result (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    /// Print compact JSON on one line.
    #[arg(long, global = true)]
    compact: bool,
}

#[derive(Args)]
struct LimitArgs {
    /// Truncation order N for series.
    #[arg(
        short = 'N',
        long,
        env = "POLYA_TRUNC",
        default_value_t = 10,
        global = true
    )]
    trunc: usize,
    /// Largest group that may be enumerated.
    #[arg(long, env = "POLYA_GROUP_CAP", default_value_t = polya_core::groups::DEFAULT_GROUP_CAP, global = true)]
    group_cap: usize,
    /// Largest tensor-power dimension the oracle may build.
    #[arg(long, env = "POLYA_ORACLE_CAP", default_value_t = polya_core::kunneth::DEFAULT_ORACLE_CAP, global = true)]
    oracle_cap: usize,
    /// Largest number of tuples an exhaustive loop may visit.
    #[arg(
        long,
        env = "POLYA_ENUM_BUDGET",
        default_value_t = 10_000_000,
        global = true
    )]
    enum_budget: u64,
}

impl LimitArgs {
    fn resolve(&self) -> Limits {
        Limits {
            trunc: self.trunc,
            group_cap: self.group_cap,
            oracle_cap: self.oracle_cap,
            enum_budget: self.enum_budget,
        }
    }
}

/// JSON parameters: inline text, `@path` for a file, or `-` for stdin.
#[derive(Args)]
struct Payload {
    params: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cycle index of a permutation group, e.g. '{"kind":"symmetric","n":3}'.
    CycleIndex(Payload),
    /// Generating series of symmetric or alternating powers from Betti, Hodge or map data.
    QuotientSeries(Payload),
    /// Points of X^n/G over F_q from the counts of X.
    PointCount(Payload),
    /// Zeta function coefficients from point counts.
    Zeta(Payload),
    /// Alternating-power zeta coefficients from point counts.
    AltZeta(Payload),
    /// Colorings up to symmetry.
    Polya(Payload),
    /// Hodge polynomial and Hodge numbers of X^n/G.
    Hodge(Payload),
    /// Discriminant value census over F_q^n.
    DiscriminantCensus(Payload),
    /// Seeded formula-versus-oracle equivalence suite.
    OracleCheck(Payload),
    /// Re-run a job spec, or the job echoed in a result document.
    Run(Payload),
}

fn read_payload(p: &Payload) -> Result<Option<String>, Failure> {
    match p.params.as_deref() {
        None => Ok(None),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
            Ok(Some(s))
        }
        Some(arg) => match arg.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path)
                .map(Some)
                .map_err(|e| Failure::usage(format!("reading {path}: {e}"))),
            None => Ok(Some(arg.to_string())),
        },
    }
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("");
        Failure::usage(format!(
            "invalid JSON at line {}, column {}: {e}\n  | {line}",
            e.line(),
            e.column()
        ))
    })
}

fn build_job(cli: &Cli) -> Result<JobSpec, Failure> {
    let (name, payload) = match &cli.command {
        Cmd::CycleIndex(p) => ("cycle-index", p),
        Cmd::QuotientSeries(p) => ("quotient-series", p),
        Cmd::PointCount(p) => ("point-count", p),
        Cmd::Zeta(p) => ("zeta", p),
        Cmd::AltZeta(p) => ("alt-zeta", p),
        Cmd::Polya(p) => ("polya", p),
        Cmd::Hodge(p) => ("hodge", p),
        Cmd::DiscriminantCensus(p) => ("discriminant-census", p),
        Cmd::OracleCheck(p) => ("oracle-check", p),
        Cmd::Run(p) => {
            let text = read_payload(p)?
                .ok_or_else(|| Failure::usage("`run` needs a job spec or result document"))?;
            let mut v = parse_json(&text)?;
            if let Some(job) = v.get_mut("job") {
                v = job.take();
            }
            return JobSpec::from_value(v).map_err(Failure::usage);
        }
    };
    let params = match read_payload(payload)? {
        Some(text) => parse_json(&text)?,
        None => Value::Object(Default::default()),
    };
    let command = Command::from_params(name, params)
        .map_err(|e| Failure::usage(format!("invalid {name} parameters: {e}")))?;
    Ok(JobSpec {
        command,
        limits: cli.limits.resolve(),
    })
}

fn document(job: &JobSpec, output: Value, elapsed: Option<f64>) -> Value {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), job::SCHEMA.into());
    doc.insert("job".into(), job.to_value());
    doc.insert("output".into(), output);
    if let Some(ms) = elapsed {
        doc.insert("timing_ms".into(), ms.into());
    }
    Value::Object(doc)
}

fn print(doc: &Value, compact: bool) {
    let text = if compact {
        serde_json::to_string(doc)
    } else {
        serde_json::to_string_pretty(doc)
    };
    println!("{}", text.expect("documents serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match build_job(&cli) {
        Ok(job) => job,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let start = Instant::now();
    let result = run::execute(&job);
    let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match result {
        Ok(output) => {
            print(&document(&job, output, elapsed), cli.compact);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(output) = f.output {
                print(&document(&job, output, elapsed), cli.compact);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
