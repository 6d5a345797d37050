//! Browser bindings. Every entry point generates a seeded instance, runs
//! one operation on it and returns a JSON document for the page to draw.
//!
//! * [`diagram`]: one exact, restricted or relaxed diagram, layer by layer;
//! * [`bound_sweep`]: restricted and relaxed bounds against the optimum for
//!   growing widths;
//! * [`compare_configs`]: the four pruning configurations side by side.
//!
//! The plain functions are usable (and tested) natively; the `js_*`
//! wrappers only convert errors for JavaScript.

use std::time::Duration;

use ddbnb::io::gen_erdos_renyi;
use ddbnb::mdd::{compile, CompilationKind, CompileParams, DecisionDiagram, SubProblem};
use ddbnb::problems::tsptw::TsptwState;
use ddbnb::problems::ProblemKind;
use ddbnb::pruning::compute_local_bounds;
use ddbnb::report::{pruning_configs, Instance, Report};
use ddbnb::{Problem, Relaxation, SolverConfig, MINUS_INFINITY};
use fixedbitset::FixedBitSet;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest instance the diagram view accepts.
pub const MAX_DIAGRAM_VARIABLES: usize = 12;
/// Largest instance the solver views accept.
pub const MAX_SOLVE_SIZE: usize = 60;
/// Time limit of every solver run started from the page.
pub const DEMO_TIMEOUT: Duration = Duration::from_secs(10);

/// `{1,4,5}`: 1-based indices of the set bits.
fn ones(bits: &FixedBitSet) -> String {
    let items: Vec<String> = bits.ones().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Short human readable rendering of a state.
pub trait Label {
    fn label(&self) -> String;
}

impl Label for FixedBitSet {
    fn label(&self) -> String {
        ones(self)
    }
}

impl Label for Vec<i64> {
    fn label(&self) -> String {
        let items: Vec<String> = self.iter().map(i64::to_string).collect();
        format!("({})", items.join(","))
    }
}

impl Label for TsptwState {
    fn label(&self) -> String {
        format!("at {} t=[{},{}] must {}", ones(&self.position), self.earliest, self.latest, ones(&self.must_visit))
    }
}

fn instance(problem: &str, n: usize, p: f64, seed: u32) -> Result<(Instance, String), String> {
    let kind: ProblemKind = problem.parse().map_err(|e| format!("{e}"))?;
    let text = gen_erdos_renyi(kind, n, p, u64::from(seed))?;
    let instance = Instance::parse(kind, &text).map_err(|e| e.to_string())?;
    Ok((instance, text))
}

fn natural(kind: ProblemKind, value: i64) -> Value {
    match value {
        MINUS_INFINITY => Value::Null,
        v if kind.minimizes() => json!(-v),
        v => json!(v),
    }
}

fn diagram_json<P>(kind: ProblemKind, p: &P, params: &CompileParams) -> Value
where
    P: Problem + Relaxation<State = <P as Problem>::State>,
    <P as Problem>::State: Label,
{
    let mut dd: DecisionDiagram<_> = compile(p, p, &SubProblem::root(p), &params.with_all_arcs());
    if dd.kind() == CompilationKind::Relaxed {
        compute_local_bounds(&mut dd);
    }
    let best = dd.best_path_nodes();
    let lel = dd.last_exact_layer();
    let layers: Vec<Value> = (0..dd.nb_layers())
        .map(|i| {
            dd.layer_ids(i)
                .map(|id| {
                    let u = dd.node(id);
                    let local = (dd.has_local_bounds() && i == lel).then(|| natural(kind, u.local_bound));
                    json!({
                        "id": id,
                        "label": u.state.label(),
                        "value": natural(kind, u.value_top),
                        "exact": u.exact,
                        "best": best.contains(&id),
                        "cutset": dd.kind() == CompilationKind::Relaxed && i == lel,
                        "local_bound": local,
                    })
                })
                .collect()
        })
        .collect();
    let arcs: Vec<Value> = dd
        .nodes()
        .iter()
        .enumerate()
        .flat_map(|(id, u)| {
            let on_best = best.contains(&id);
            u.inbound.iter().map(move |e| {
                json!({
                    "from": e.parent,
                    "to": id,
                    "variable": e.decision.variable,
                    "value": e.decision.value,
                    "weight": if kind.minimizes() { -e.weight } else { e.weight },
                    "best": on_best && u.best_arc == Some(*e),
                })
            })
        })
        .collect();
    json!({
        "exact": dd.is_exact(),
        "last_exact_layer": lel,
        "best_value": natural(kind, dd.best_value().unwrap_or(MINUS_INFINITY)),
        "layers": layers,
        "arcs": arcs,
    })
}

/// Compiles one diagram (`kind` is `exact`, `restricted` or `relaxed`) at
/// the root of a generated instance.
pub fn diagram(problem: &str, n: usize, p: f64, seed: u32, kind: &str, width: usize) -> Result<Value, String> {
    let (instance, text) = instance(problem, n, p, seed)?;
    if instance.nb_variables() > MAX_DIAGRAM_VARIABLES {
        return Err(format!("diagrams are limited to {MAX_DIAGRAM_VARIABLES} variables"));
    }
    let width = width.max(1);
    let params = match kind {
        "exact" => CompileParams::exact(),
        "restricted" => CompileParams::restricted(width),
        "relaxed" => CompileParams::relaxed(width),
        other => return Err(format!("unknown diagram kind `{other}`")),
    };
    let k = instance.kind();
    let mut body = match &instance {
        Instance::Misp(p) => diagram_json(k, p, &params),
        Instance::Mcp(p) => diagram_json(k, p, &params),
        Instance::Max2Sat(p) => diagram_json(k, p, &params),
        Instance::Tsptw(p) => diagram_json(k, p, &params),
    };
    body["instance"] = json!(text);
    body["kind"] = json!(kind);
    body["minimize"] = json!(k.minimizes());
    Ok(body)
}

fn root_bounds<P>(p: &P, width: usize) -> (i64, i64)
where
    P: Problem + Relaxation<State = <P as Problem>::State>,
{
    let root = SubProblem::root(p);
    let value = |params| compile(p, p, &root, &params).best_value().unwrap_or(MINUS_INFINITY);
    (value(CompileParams::restricted(width)), value(CompileParams::relaxed(width)))
}

/// Restricted and relaxed root bounds for every width in `1..=max_width`,
/// together with the optimum.
pub fn bound_sweep(problem: &str, n: usize, p: f64, seed: u32, max_width: usize) -> Result<Value, String> {
    if n > MAX_SOLVE_SIZE {
        return Err(format!("instances are limited to {MAX_SOLVE_SIZE} vertices"));
    }
    let (instance, _) = instance(problem, n, p, seed)?;
    let k = instance.kind();
    let report = instance.report(&SolverConfig { timeout: Some(DEMO_TIMEOUT), ..Default::default() });
    let rows: Vec<Value> = (1..=max_width.clamp(1, 64))
        .map(|w| {
            let (low, high) = match &instance {
                Instance::Misp(p) => root_bounds(p, w),
                Instance::Mcp(p) => root_bounds(p, w),
                Instance::Max2Sat(p) => root_bounds(p, w),
                Instance::Tsptw(p) => root_bounds(p, w),
            };
            json!({ "width": w, "restricted": natural(k, low), "relaxed": natural(k, high) })
        })
        .collect();
    Ok(json!({
        "minimize": k.minimizes(),
        "optimum": finite(report.objective),
        "proved": report.status == ddbnb::Status::Optimal,
        "rows": rows,
    }))
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x as i64)
    } else {
        Value::Null
    }
}

fn report_json(name: &str, r: &Report) -> Value {
    json!({
        "config": name,
        "status": r.status_name(),
        "objective": finite(r.objective),
        "bound": finite(r.bound),
        "gap": r.gap,
        "explored": r.explored,
        "seconds": r.seconds,
    })
}

/// Solves one generated instance under the four pruning configurations.
pub fn compare_configs(problem: &str, n: usize, p: f64, seed: u32, width: usize) -> Result<Value, String> {
    if n > MAX_SOLVE_SIZE {
        return Err(format!("instances are limited to {MAX_SOLVE_SIZE} vertices"));
    }
    let (instance, _) = instance(problem, n, p, seed)?;
    let base = SolverConfig { width: (width > 0).then_some(width), timeout: Some(DEMO_TIMEOUT), ..Default::default() };
    let rows: Vec<Value> =
        pruning_configs(base).into_iter().map(|(name, config)| report_json(name, &instance.report(&config))).collect();
    Ok(json!({ "rows": rows }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = diagram)]
pub fn js_diagram(problem: &str, n: usize, p: f64, seed: u32, kind: &str, width: usize) -> Result<String, JsError> {
    to_js(diagram(problem, n, p, seed, kind, width))
}

#[wasm_bindgen(js_name = boundSweep)]
pub fn js_bound_sweep(problem: &str, n: usize, p: f64, seed: u32, max_width: usize) -> Result<String, JsError> {
    to_js(bound_sweep(problem, n, p, seed, max_width))
}

#[wasm_bindgen(js_name = compareConfigs)]
pub fn js_compare_configs(problem: &str, n: usize, p: f64, seed: u32, width: usize) -> Result<String, JsError> {
    to_js(compare_configs(problem, n, p, seed, width))
}
