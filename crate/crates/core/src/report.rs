//! Problem dispatch and result reporting shared by the command line and the
//! browser demo.
//!
//! Internally every model is maximized. Reports translate results back to
//! the natural sense of each problem (TSPTW makespans are minimized) and
//! compute the end gap from the natural lower and upper bounds.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Duration;

use crate::io::{parse_graph, parse_tsptw, parse_wcnf, ManifestEntry, ParseError};
use crate::mdd::{compile, CompileParams, SubProblem};
use crate::model::{Problem, Relaxation, MINUS_INFINITY, PLUS_INFINITY};
use crate::problems::{Max2Sat, MaxCut, Misp, ProblemKind, Tsptw};
use crate::solver::{end_gap, objective_to_f64, solve, Outcome, SolverConfig, Status};

pub const CSV_HEADER: &str = "instance,problem,config,status,objective,bound,gap,explored,seconds";

/// A parsed instance of one of the built-in problems.
#[derive(Debug, Clone)]
pub enum Instance {
    Misp(Misp),
    Mcp(MaxCut),
    Max2Sat(Max2Sat),
    Tsptw(Tsptw),
}

impl Instance {
    pub fn parse(kind: ProblemKind, text: &str) -> Result<Self, ParseError> {
        Ok(match kind {
            ProblemKind::Misp => Instance::Misp(Misp::new(&parse_graph(text)?)),
            ProblemKind::Mcp => Instance::Mcp(MaxCut::new(&parse_graph(text)?)),
            ProblemKind::Max2Sat => Instance::Max2Sat(Max2Sat::new(&parse_wcnf(text)?)),
            ProblemKind::Tsptw => Instance::Tsptw(Tsptw::new(parse_tsptw(text)?)),
        })
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Misp(_) => ProblemKind::Misp,
            Instance::Mcp(_) => ProblemKind::Mcp,
            Instance::Max2Sat(_) => ProblemKind::Max2Sat,
            Instance::Tsptw(_) => ProblemKind::Tsptw,
        }
    }

    /// Runs the solver on the internal (maximization) model.
    pub fn solve(&self, config: &SolverConfig) -> Outcome {
        match self {
            Instance::Misp(p) => solve(p, p, config),
            Instance::Mcp(p) => solve(p, p, config),
            Instance::Max2Sat(p) => solve(p, p, config),
            Instance::Tsptw(p) => solve(p, p, config),
        }
    }

    /// DOT rendering of the relaxed diagram compiled at the root with the
    /// given maximum width.
    pub fn root_relaxed_dot(&self, width: usize) -> String {
        fn dot<P: Problem + Relaxation<State = <P as Problem>::State>>(p: &P, width: usize) -> String {
            compile(p, p, &SubProblem::root(p), &CompileParams::relaxed(width)).to_dot()
        }
        match self {
            Instance::Misp(p) => dot(p, width),
            Instance::Mcp(p) => dot(p, width),
            Instance::Max2Sat(p) => dot(p, width),
            Instance::Tsptw(p) => dot(p, width),
        }
    }

    pub fn nb_variables(&self) -> usize {
        match self {
            Instance::Misp(p) => p.nb_variables(),
            Instance::Mcp(p) => p.nb_variables(),
            Instance::Max2Sat(p) => p.nb_variables(),
            Instance::Tsptw(p) => p.nb_variables(),
        }
    }

    pub fn report(&self, config: &SolverConfig) -> Report {
        Report::new(self.kind(), &self.solve(config))
    }
}

/// Solver outcome expressed in the natural sense of the problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub problem: ProblemKind,
    pub status: Status,
    /// Value of the best solution found; infinite (of the bad sign) when
    /// none was found.
    pub objective: f64,
    /// Best proven bound on the optimum.
    pub bound: f64,
    pub gap: f64,
    pub explored: usize,
    pub seconds: f64,
    /// Value of every variable in the best solution.
    pub solution: Option<Vec<i64>>,
}

impl Report {
    pub fn new(problem: ProblemKind, outcome: &Outcome) -> Self {
        let natural = |v: i64| {
            if problem.minimizes() {
                match v {
                    MINUS_INFINITY => f64::INFINITY,
                    PLUS_INFINITY => f64::NEG_INFINITY,
                    v => -(v as f64),
                }
            } else {
                objective_to_f64(v)
            }
        };
        let objective = natural(outcome.best_value);
        let bound = natural(outcome.best_bound);
        let (lb, ub) = natural_bounds(problem, objective, bound);
        Report {
            problem,
            status: outcome.status,
            objective,
            bound,
            gap: end_gap(lb, ub),
            explored: outcome.explored,
            seconds: outcome.duration.as_secs_f64(),
            solution: outcome.best_solution.as_ref().map(|s| s.iter().map(|d| d.value).collect()),
        }
    }

    pub fn status_name(&self) -> &'static str {
        status_name(self.status)
    }

    /// `status=.. objective=.. bound=.. gap=.. explored=.. seconds=..`
    pub fn summary_line(&self) -> String {
        format!(
            "status={} objective={} bound={} gap={:?} explored={} seconds={:.3}",
            self.status_name(),
            self.objective,
            self.bound,
            self.gap,
            self.explored,
            self.seconds
        )
    }

    pub fn csv_row(&self, instance: &str, config: &str, omit_time: bool) -> String {
        let mut row = format!(
            "{},{},{},{},{},{},{:?},{},",
            csv_field(instance),
            self.problem,
            config,
            self.status_name(),
            self.objective,
            self.bound,
            self.gap,
            self.explored
        );
        if !omit_time {
            let _ = write!(row, "{:.6}", self.seconds);
        }
        row
    }
}

pub fn status_name(status: Status) -> &'static str {
    match status {
        Status::Optimal => "optimal",
        Status::Timeout => "timeout",
    }
}

/// Lower and upper bounds on the optimum given the objective of the best
/// solution and the best proven bound, in the natural sense of `problem`.
pub fn natural_bounds(problem: ProblemKind, objective: f64, bound: f64) -> (f64, f64) {
    if problem.minimizes() {
        (bound, objective)
    } else {
        (objective, bound)
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// The four pruning configurations compared in benchmarks, derived from
/// `base` (width, timeout and workers are kept).
pub fn pruning_configs(base: SolverConfig) -> Vec<(&'static str, SolverConfig)> {
    [("none", false, false), ("rub", true, false), ("locb", false, true), ("rub+locb", true, true)]
        .into_iter()
        .map(|(name, rub, locb)| (name, SolverConfig { rub, locb, ..base }))
        .collect()
}

/// An instance that could not be benchmarked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub path: PathBuf,
    pub reason: String,
}

/// Solves every manifest entry under every configuration and writes one CSV
/// row per pair, header first. Unreadable or malformed instances are skipped
/// and returned; the run carries on with the next one.
pub fn bench<W: Write>(
    entries: &[ManifestEntry],
    configs: &[(&str, SolverConfig)],
    out: &mut W,
    omit_time: bool,
) -> io::Result<Vec<Skipped>> {
    writeln!(out, "{CSV_HEADER}")?;
    let mut skipped = Vec::new();
    for entry in entries {
        let instance = match std::fs::read_to_string(&entry.path) {
            Ok(text) => match Instance::parse(entry.problem, &text) {
                Ok(instance) => instance,
                Err(e) => {
                    skipped.push(Skipped { path: entry.path.clone(), reason: e.to_string() });
                    continue;
                }
            },
            Err(e) => {
                skipped.push(Skipped { path: entry.path.clone(), reason: e.to_string() });
                continue;
            }
        };
        let name = entry.path.display().to_string();
        for (config_name, config) in configs {
            let report = instance.report(config);
            writeln!(out, "{}", report.csv_row(&name, config_name, omit_time))?;
        }
    }
    Ok(skipped)
}

/// Timeout used when none is given: half an hour.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(1800);
