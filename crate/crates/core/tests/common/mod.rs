//! Seeded instance suites and brute-force oracles that do not go through
//! the dynamic programming models.

#![allow(dead_code)]

use ddbnb::io::{gen_erdos_renyi, gen_tsptw, parse_graph, parse_wcnf, Graph, Wcnf};
use ddbnb::problems::tsptw::TsptwInstance;
use ddbnb::problems::ProblemKind;

const PROBABILITIES: [f64; 4] = [0.2, 0.35, 0.5, 0.7];

pub struct Case<T> {
    pub name: String,
    pub text: String,
    pub instance: T,
}

fn graph_case(kind: ProblemKind, n: usize, p: f64, seed: u64) -> Case<Graph> {
    let text = gen_erdos_renyi(kind, n, p, seed).unwrap();
    let instance = parse_graph(&text).unwrap();
    Case { name: format!("{kind}-n{n}-p{p}-s{seed}"), text, instance }
}

/// 50 weighted independent set instances on 6 to 12 vertices.
pub fn misp_suite() -> Vec<Case<Graph>> {
    (0..50).map(|s| graph_case(ProblemKind::Misp, 6 + s as usize % 7, PROBABILITIES[s as usize % 4], s)).collect()
}

/// 50 maximum cut instances on 5 to 12 vertices.
pub fn mcp_suite() -> Vec<Case<Graph>> {
    (0..50).map(|s| graph_case(ProblemKind::Mcp, 5 + s as usize % 8, PROBABILITIES[s as usize % 4], 100 + s)).collect()
}

/// 50 MAX-2SAT instances over 4 to 10 variables.
pub fn max2sat_suite() -> Vec<Case<Wcnf>> {
    (0..50)
        .map(|s| {
            let n = 2 * (4 + s as usize % 7);
            let p = PROBABILITIES[s as usize % 4] / 2.0;
            let text = gen_erdos_renyi(ProblemKind::Max2Sat, n, p, 200 + s).unwrap();
            let instance = parse_wcnf(&text).unwrap();
            Case { name: format!("max2sat-n{n}-p{p}-s{}", 200 + s), text, instance }
        })
        .collect()
}

/// 30 TSPTW instances with 4 to 8 cities.
pub fn tsptw_suite() -> Vec<Case<TsptwInstance>> {
    (0..30)
        .map(|s| {
            let n = 4 + s as usize % 5;
            let slack = [0.05, 0.15, 0.3][s as usize % 3];
            let instance = gen_tsptw(n, slack, 300 + s).unwrap();
            let text = ddbnb::io::write_tsptw(&instance);
            Case { name: format!("tsptw-n{n}-w{slack}-s{}", 300 + s), text, instance }
        })
        .collect()
}

/// Weight of the heaviest independent set (possibly empty).
pub fn misp_oracle(graph: &Graph) -> i64 {
    let n = graph.nb_vertices();
    (0u32..1 << n)
        .filter(|set| graph.edges().iter().all(|e| set & (1 << e.u) == 0 || set & (1 << e.v) == 0))
        .map(|set| (0..n).filter(|i| set & (1 << i) != 0).map(|i| graph.vertex_weight(i)).sum())
        .max()
        .unwrap()
}

pub fn misp_solution_value(graph: &Graph, chosen: &[i64]) -> Option<i64> {
    let independent = graph.edges().iter().all(|e| chosen[e.u] == 0 || chosen[e.v] == 0);
    independent.then(|| (0..chosen.len()).filter(|&i| chosen[i] == 1).map(|i| graph.vertex_weight(i)).sum())
}

pub fn cut_weight(graph: &Graph, sides: &[i64]) -> i64 {
    graph.edges().iter().filter(|e| sides[e.u] != sides[e.v]).map(|e| e.weight).sum()
}

/// Weight of the heaviest cut over every bipartition.
pub fn mcp_oracle(graph: &Graph) -> i64 {
    let n = graph.nb_vertices();
    (0u32..1 << n)
        .map(|set| {
            let sides: Vec<i64> = (0..n).map(|i| ((set >> i) & 1) as i64).collect();
            cut_weight(graph, &sides)
        })
        .max()
        .unwrap()
}

pub fn satisfied(formula: &Wcnf, values: &[i64]) -> i64 {
    let holds = |l: i32| (values[l.unsigned_abs() as usize - 1] == 1) == (l > 0);
    formula.clauses().iter().filter(|c| holds(c.first) || c.second.is_some_and(holds)).map(|c| c.weight).sum()
}

/// Heaviest satisfiable clause subset over every truth assignment.
pub fn max2sat_oracle(formula: &Wcnf) -> i64 {
    let n = formula.nb_variables();
    (0u32..1 << n)
        .map(|set| {
            let values: Vec<i64> = (0..n).map(|i| ((set >> i) & 1) as i64).collect();
            satisfied(formula, &values)
        })
        .max()
        .unwrap()
}

/// Completion time of a tour starting at the depot at time 0, visiting
/// `order` and returning to the depot, waiting for windows to open. `None`
/// when some window closes before the vehicle arrives.
pub fn makespan(instance: &TsptwInstance, order: &[usize]) -> Option<i64> {
    let (mut time, mut at) = (0, 0);
    for &city in order.iter().chain(std::iter::once(&0)) {
        let (open, close) = instance.windows[city];
        time = (time + instance.distances[at][city]).max(open);
        if time > close {
            return None;
        }
        at = city;
    }
    Some(time)
}

/// Shortest feasible makespan over every visiting order.
pub fn tsptw_oracle(instance: &TsptwInstance) -> Option<i64> {
    fn permute(instance: &TsptwInstance, order: &mut Vec<usize>, k: usize, best: &mut Option<i64>) {
        if k == order.len() {
            if let Some(m) = makespan(instance, order) {
                *best = Some(best.map_or(m, |b: i64| b.min(m)));
            }
            return;
        }
        for i in k..order.len() {
            order.swap(k, i);
            permute(instance, order, k + 1, best);
            order.swap(k, i);
        }
    }
    let mut order: Vec<usize> = (1..instance.distances.len()).collect();
    let mut best = None;
    permute(instance, &mut order, 0, &mut best);
    best
}
