//! Branch-and-bound over decision diagrams.
//!
//! Each open sub-problem popped from the fringe is explored by compiling a
//! restricted diagram (which may improve the incumbent) and, when that one is
//! not exact, a relaxed diagram whose exact cutset yields the new
//! sub-problems. Local bounds filter the cutset before it is enqueued and
//! again when its nodes are popped; rough upper bounds are threaded into
//! both compilations.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::{Condvar, Mutex};
use std::time::Duration;
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;
#[cfg(target_arch = "wasm32")]
use web_time::Instant;

use crate::mdd::{compile, CompileParams, DecisionDiagram, SubProblem};
use crate::model::{Decision, Problem, Relaxation, MINUS_INFINITY, PLUS_INFINITY};
use crate::pruning::compute_local_bounds;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Maximum layer width. `None` uses the number of variables that are
    /// still free in the sub-problem being explored.
    pub width: Option<usize>,
    pub rub: bool,
    pub locb: bool,
    pub timeout: Option<Duration>,
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { width: None, rub: true, locb: true, timeout: None, workers: 1 }
    }
}

impl SolverConfig {
    pub fn with_pruning(rub: bool, locb: bool) -> Self {
        SolverConfig { rub, locb, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Timeout,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    /// Value of the incumbent; `MINUS_INFINITY` when none was found.
    pub best_value: i64,
    pub best_solution: Option<Vec<Decision>>,
    /// Best upper bound on the optimum when the search stopped.
    pub best_bound: i64,
    pub end_gap: f64,
    /// Number of sub-problems that have been explored.
    pub explored: usize,
    pub duration: Duration,
}

/// Residual optimality gap, in percent: `100 (|ub| - |lb|) / |ub|`.
///
/// A closed gap (`lb == ub`) is 0, even for `0` or infinite bounds. An
/// infinite bound on either side, or `ub == 0` with a different `lb`, gives
/// a 100% gap.
pub fn end_gap(lb: f64, ub: f64) -> f64 {
    if lb == ub {
        return 0.0;
    }
    if !lb.is_finite() || !ub.is_finite() || ub == 0.0 {
        return 100.0;
    }
    100.0 * (ub.abs() - lb.abs()) / ub.abs()
}

/// Converts an internal objective value into `f64`, mapping the sentinels
/// to infinities.
pub fn objective_to_f64(value: i64) -> f64 {
    match value {
        MINUS_INFINITY => f64::NEG_INFINITY,
        PLUS_INFINITY => f64::INFINITY,
        v => v as f64,
    }
}

/// Hook receiving every relaxed diagram compiled during a search, together
/// with the incumbent value it was compiled against. Local bounds are
/// already computed when they are enabled.
pub trait Observer<S>: Sync {
    fn relaxed(&self, _sub: &SubProblem<S>, _dd: &DecisionDiagram<S>, _incumbent: i64) {}
}

pub struct NoObserver;

impl<S> Observer<S> for NoObserver {}

struct Entry<S> {
    sub: SubProblem<S>,
    seq: u64,
}

impl<S> PartialEq for Entry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S> Eq for Entry<S> {}

impl<S> PartialOrd for Entry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S> Ord for Entry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub.ub.cmp(&other.sub.ub).then(self.sub.value_top.cmp(&other.sub.value_top)).then(other.seq.cmp(&self.seq))
    }
}

/// Global priority queue of open sub-problems: largest upper bound first,
/// then largest `value_top`, then first in first out.
pub struct Fringe<S> {
    heap: BinaryHeap<Entry<S>>,
    seq: u64,
}

impl<S> Default for Fringe<S> {
    fn default() -> Self {
        Fringe { heap: BinaryHeap::new(), seq: 0 }
    }
}

impl<S> Fringe<S> {
    pub fn push(&mut self, sub: SubProblem<S>) {
        self.heap.push(Entry { sub, seq: self.seq });
        self.seq += 1;
    }

    pub fn pop(&mut self) -> Option<SubProblem<S>> {
        self.heap.pop().map(|e| e.sub)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Largest upper bound among the open sub-problems.
    pub fn max_ub(&self) -> Option<i64> {
        self.heap.peek().map(|e| e.sub.ub)
    }
}

/// A popped sub-problem whose local bound does not beat the incumbent is
/// not worth exploring.
pub fn skip_at_pop(ub: i64, incumbent: i64, locb: bool) -> bool {
    locb && ub <= incumbent
}

/// A cutset node only enters the fringe when its local bound beats the
/// incumbent.
pub fn admit_to_fringe(ub: i64, incumbent: i64, locb: bool) -> bool {
    !locb || ub > incumbent
}

struct Shared<S> {
    fringe: Fringe<S>,
    best_value: i64,
    best_solution: Option<Vec<Decision>>,
    /// Upper bound of the sub-problem each worker is exploring.
    in_flight: Vec<Option<i64>>,
    explored: usize,
    timed_out: bool,
}

impl<S> Shared<S> {
    fn improve(&mut self, value: i64, solution: Vec<Decision>) {
        if value > self.best_value {
            self.best_value = value;
            self.best_solution = Some(solution);
        }
    }

    fn busy(&self) -> bool {
        self.in_flight.iter().any(Option::is_some)
    }
}

pub fn solve<P, R>(problem: &P, relaxation: &R, config: &SolverConfig) -> Outcome
where
    P: Problem,
    R: Relaxation<State = P::State>,
{
    solve_observed(problem, relaxation, config, &NoObserver)
}

pub fn solve_observed<P, R, O>(problem: &P, relaxation: &R, config: &SolverConfig, observer: &O) -> Outcome
where
    P: Problem,
    R: Relaxation<State = P::State>,
    O: Observer<P::State>,
{
    let start = Instant::now();
    let workers = config.workers.max(1);
    let mut fringe = Fringe::default();
    fringe.push(SubProblem::root(problem));
    let shared = Mutex::new(Shared {
        fringe,
        best_value: MINUS_INFINITY,
        best_solution: None,
        in_flight: vec![None; workers],
        explored: 0,
        timed_out: false,
    });
    let wakeup = Condvar::new();

    if workers == 1 {
        work(0, problem, relaxation, config, observer, &shared, &wakeup, start);
    } else {
        std::thread::scope(|scope| {
            for id in 0..workers {
                let (shared, wakeup) = (&shared, &wakeup);
                scope.spawn(move || work(id, problem, relaxation, config, observer, shared, wakeup, start));
            }
        });
    }

    let shared = shared.into_inner().unwrap_or_else(|e| e.into_inner());
    let (status, best_bound) = if shared.timed_out {
        let open = shared.fringe.max_ub().unwrap_or(MINUS_INFINITY);
        (Status::Timeout, open.max(shared.best_value))
    } else {
        (Status::Optimal, shared.best_value)
    };
    Outcome {
        status,
        best_value: shared.best_value,
        best_solution: shared.best_solution,
        best_bound,
        end_gap: end_gap(objective_to_f64(shared.best_value), objective_to_f64(best_bound)),
        explored: shared.explored,
        duration: start.elapsed(),
    }
}

#[allow(clippy::too_many_arguments)]
fn work<P, R, O>(
    id: usize,
    problem: &P,
    relaxation: &R,
    config: &SolverConfig,
    observer: &O,
    shared: &Mutex<Shared<P::State>>,
    wakeup: &Condvar,
    start: Instant,
) where
    P: Problem,
    R: Relaxation<State = P::State>,
    O: Observer<P::State>,
{
    let n = problem.nb_variables();
    loop {
        let (sub, incumbent) = {
            let mut guard = shared.lock().unwrap_or_else(|e| e.into_inner());
            loop {
                if guard.timed_out {
                    return;
                }
                if let Some(sub) = guard.fringe.pop() {
                    if config.timeout.is_some_and(|t| start.elapsed() >= t) {
                        guard.fringe.push(sub);
                        guard.timed_out = true;
                        wakeup.notify_all();
                        return;
                    }
                    if skip_at_pop(sub.ub, guard.best_value, config.locb) {
                        continue;
                    }
                    guard.explored += 1;
                    guard.in_flight[id] = Some(sub.ub);
                    let incumbent = guard.best_value;
                    break (sub, incumbent);
                }
                if !guard.busy() {
                    wakeup.notify_all();
                    return;
                }
                guard = wakeup.wait(guard).unwrap_or_else(|e| e.into_inner());
            }
        };

        let width = config.width.unwrap_or(n - sub.depth()).max(1);
        let children = explore(problem, relaxation, config, observer, shared, &sub, width, incumbent);

        let mut guard = shared.lock().unwrap_or_else(|e| e.into_inner());
        let incumbent = guard.best_value;
        for child in children {
            if admit_to_fringe(child.ub, incumbent, config.locb) {
                guard.fringe.push(child);
            }
        }
        guard.in_flight[id] = None;
        wakeup.notify_all();
    }
}

/// Explores one sub-problem and returns the cutset that must be enqueued.
#[allow(clippy::too_many_arguments)]
fn explore<P, R, O>(
    problem: &P,
    relaxation: &R,
    config: &SolverConfig,
    observer: &O,
    shared: &Mutex<Shared<P::State>>,
    sub: &SubProblem<P::State>,
    width: usize,
    mut incumbent: i64,
) -> Vec<SubProblem<P::State>>
where
    P: Problem,
    R: Relaxation<State = P::State>,
    O: Observer<P::State>,
{
    let params = |mut params: CompileParams, incumbent: i64| {
        if config.rub {
            params = params.with_rub(incumbent);
        }
        params
    };

    let restricted = compile(problem, relaxation, sub, &params(CompileParams::restricted(width), incumbent));
    if let Some((value, solution)) = restricted.best_solution() {
        if value > incumbent {
            let mut guard = shared.lock().unwrap_or_else(|e| e.into_inner());
            guard.improve(value, solution);
            incumbent = guard.best_value;
        }
    }
    if restricted.is_exact() {
        return Vec::new();
    }
    drop(restricted);

    let mut relaxed = compile(problem, relaxation, sub, &params(CompileParams::relaxed(width.max(2)), incumbent));
    if relaxed.is_exact() {
        if let Some((value, solution)) = relaxed.best_solution() {
            shared.lock().unwrap_or_else(|e| e.into_inner()).improve(value, solution);
        }
        return Vec::new();
    }
    let bound = relaxed.best_value().unwrap_or(MINUS_INFINITY);
    if config.locb {
        compute_local_bounds(&mut relaxed);
    }
    observer.relaxed(sub, &relaxed, incumbent);
    if bound <= incumbent {
        return Vec::new();
    }
    relaxed
        .exact_cutset()
        .into_iter()
        .map(|mut child| {
            child.ub = child.ub.min(sub.ub);
            child
        })
        .filter(|child| admit_to_fringe(child.ub, incumbent, config.locb))
        .collect()
}
