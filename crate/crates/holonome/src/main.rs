//! Batch CLI: `run` executes one job (from a JSON file and/or flags),
//! `suite` runs a named collection, `describe` prints what a task checks.
//! Exit codes: 0 all checks passed, 1 a mathematical check failed,
//! 2 invalid input.

use clap::{Args, Parser, Subcommand};
use holonome::jobs::{describe, run_job, suite, suite_names, write_report_atomic, JobSpec, TaskKind};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holonome", version, about = "Flat connections, braid monodromy and quantum-group checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one job described by a JSON file and/or flag overrides.
    Run(RunArgs),
    /// Run a named job suite (paper-exact, paper-numeric, all).
    Suite(SuiteArgs),
    /// Print what a task checks and which fields it needs.
    Describe { task: String },
}

#[derive(Args)]
struct RunArgs {
    /// Job file (JSON). Flags below override its fields.
    #[arg(long)]
    job: Option<PathBuf>,
    #[arg(long)]
    task: Option<String>,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    rep: Option<String>,
    /// kz | casimir | ckz
    #[arg(long)]
    connection: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Coupling as re,im
    #[arg(long, value_parser = parse_complex)]
    h: Option<[f64; 2]>,
    /// Quantum parameter as re,im
    #[arg(long, value_parser = parse_complex)]
    q: Option<[f64; 2]>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<usize>>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    word_len: Option<usize>,
    /// Designed failure path: perturb the first residue.
    #[arg(long)]
    perturb: bool,
    /// Deterministic fixed-step integration (bit-identical reruns).
    #[arg(long)]
    fixed_step: bool,
    /// Dump matrices past the usual size cap.
    #[arg(long)]
    dump_matrices: bool,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker cap (suites run jobs in parallel; single runs ignore it).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct SuiteArgs {
    name: String,
    #[arg(long, default_value_t = 4)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_complex(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => re.trim().parse().map(|r| [r, 0.0]).map_err(|e| format!("{e}")),
        [re, im] => {
            let re: f64 = re.trim().parse().map_err(|e| format!("{e}"))?;
            let im: f64 = im.trim().parse().map_err(|e| format!("{e}"))?;
            Ok([re, im])
        }
        _ => Err("expected re or re,im".into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, holonome::Error> {
    match cli.command {
        Command::Run(args) => {
            let job = assemble_job(&args)?;
            let out_path = args
                .out
                .clone()
                .or_else(|| job.out.as_ref().map(PathBuf::from));
            let outcome = run_job(&job)?;
            emit(&outcome.report, out_path.as_deref())?;
            Ok(ExitCode::from(outcome.exit_code() as u8))
        }
        Command::Suite(args) => {
            if !suite_names().contains(&args.name.as_str()) {
                return Err(holonome::Error::InvalidInput(format!(
                    "unknown suite `{}`; available: {}",
                    args.name,
                    suite_names().join(", ")
                )));
            }
            let outcome = suite(&args.name, args.workers)?;
            emit(&outcome.report, args.out.as_deref())?;
            Ok(ExitCode::from(outcome.exit_code() as u8))
        }
        Command::Describe { task } => {
            let task = TaskKind::parse(&task)?;
            print!("{}", describe(task));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn assemble_job(args: &RunArgs) -> Result<JobSpec, holonome::Error> {
    let mut job = match &args.job {
        Some(path) => {
            let bytes = std::fs::read(path)?;
            serde_json::from_slice::<JobSpec>(&bytes).map_err(|e| {
                holonome::Error::InvalidInput(format!(
                    "malformed job file {} at line {}, column {}: {e}",
                    path.display(),
                    e.line(),
                    e.column()
                ))
            })?
        }
        None => {
            let task = args
                .task
                .as_deref()
                .ok_or_else(|| holonome::Error::InvalidInput("need --job or --task".into()))?;
            JobSpec::new(TaskKind::parse(task)?)
        }
    };
    if let Some(task) = &args.task {
        job.task = TaskKind::parse(task)?;
    }
    macro_rules! override_opt {
        ($($field:ident),*) => {
            $(if args.$field.is_some() {
                job.$field = args.$field.clone();
            })*
        };
    }
    override_opt!(algebra, rep, connection, n, m, h, q, tol, threshold, lambda, mu, k, word_len);
    job.perturb |= args.perturb;
    job.fixed_step |= args.fixed_step;
    job.dump_matrices |= args.dump_matrices;
    Ok(job)
}

fn emit(report: &serde_json::Value, out: Option<&std::path::Path>) -> Result<(), holonome::Error> {
    match out {
        Some(path) => write_report_atomic(path, report),
        None => {
            println!("{}", serde_json::to_string_pretty(report)?);
            Ok(())
        }
    }
}
