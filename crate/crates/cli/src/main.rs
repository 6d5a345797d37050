//! `ddbnb solve | gen | bench`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ddbnb::io::{gen_erdos_renyi, parse_manifest};
use ddbnb::problems::ProblemKind;
use ddbnb::report::{bench, pruning_configs, Instance, Report};
use ddbnb::{SolverConfig, Status};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ddbnb", version, about = "Branch-and-bound with decision diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Solve every instance of a manifest under the four pruning configurations.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl From<Switch> for bool {
    fn from(s: Switch) -> bool {
        matches!(s, Switch::On)
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Maximum layer width (default: number of free variables).
    #[arg(long)]
    width: Option<usize>,
    /// Time limit in seconds.
    #[arg(long, default_value_t = 1800.0)]
    timeout: f64,
    /// Number of worker threads.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl SearchArgs {
    fn config(&self) -> Result<SolverConfig> {
        if !(self.timeout.is_finite() && self.timeout >= 0.0) {
            bail!("--timeout must be a non-negative number of seconds");
        }
        if self.width == Some(0) {
            bail!("--width must be positive");
        }
        if self.threads == 0 {
            bail!("--threads must be positive");
        }
        Ok(SolverConfig {
            width: self.width,
            timeout: Some(Duration::from_secs_f64(self.timeout)),
            workers: self.threads,
            ..Default::default()
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    problem: ProblemKind,
    file: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Rough upper bound pruning.
    #[arg(long, value_enum, default_value = "on")]
    rub: Switch,
    /// Local bound pruning.
    #[arg(long, value_enum, default_value = "on")]
    locb: Switch,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the relaxed diagram compiled at the root to FILE (DOT format).
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    problem: ProblemKind,
    /// Number of vertices (cities for tsptw).
    #[arg(long)]
    n: usize,
    /// Edge probability (window slack for tsptw).
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    manifest: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Write the CSV to FILE instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Leave the seconds column empty so reruns are byte-identical.
    #[arg(long)]
    omit_time: bool,
}

fn load(problem: ProblemKind, file: &Path) -> Result<Instance> {
    let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    Instance::parse(problem, &text).with_context(|| format!("cannot parse {}", file.display()))
}

fn json_number(value: f64) -> serde_json::Value {
    if value.is_finite() {
        json!(value as i64)
    } else {
        serde_json::Value::Null
    }
}

fn report_json(report: &Report) -> serde_json::Value {
    json!({
        "problem": report.problem.name(),
        "status": report.status_name(),
        "objective": json_number(report.objective),
        "bound": json_number(report.bound),
        "gap": report.gap,
        "explored": report.explored,
        "seconds": report.seconds,
        "solution": report.solution,
    })
}

fn run_solve(args: SolveArgs) -> Result<ExitCode> {
    let instance = load(args.problem, &args.file)?;
    let config = SolverConfig { rub: args.rub.into(), locb: args.locb.into(), ..args.search.config()? };
    if let Some(path) = &args.dot {
        let width = config.width.unwrap_or(instance.nb_variables()).max(1);
        fs::write(path, instance.root_relaxed_dot(width))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let report = instance.report(&config);
    if args.json {
        println!("{}", report_json(&report));
    } else {
        println!("{}", report.summary_line());
    }
    Ok(match report.status {
        Status::Optimal => ExitCode::SUCCESS,
        Status::Timeout => ExitCode::from(2),
    })
}

fn run_gen(args: GenArgs) -> Result<ExitCode> {
    let text = gen_erdos_renyi(args.problem, args.n, args.p, args.seed).map_err(anyhow::Error::msg)?;
    fs::write(&args.output, text).with_context(|| format!("cannot write {}", args.output.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn run_bench(args: BenchArgs) -> Result<ExitCode> {
    let text =
        fs::read_to_string(&args.manifest).with_context(|| format!("cannot read {}", args.manifest.display()))?;
    let base = args.manifest.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(&text, base).with_context(|| format!("cannot parse {}", args.manifest.display()))?;
    let configs = pruning_configs(args.search.config()?);
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let skipped = bench(&entries, &configs, &mut out, args.omit_time)?;
    out.flush()?;
    for s in &skipped {
        eprintln!("skipped {}: {}", s.path.display(), s.reason);
    }
    Ok(if skipped.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Gen(args) => run_gen(args),
        Command::Bench(args) => run_bench(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
