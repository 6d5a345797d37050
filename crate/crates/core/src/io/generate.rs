//! Seeded instance generators. All randomness comes from a ChaCha8 stream
//! seeded with the user seed, consumed in a fixed order, so the same
//! parameters always produce the same bytes on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Wcnf};
use crate::problems::tsptw::TsptwInstance;
use crate::problems::ProblemKind;

pub const MISP_WEIGHTS: [i64; 10] = [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5];
pub const MCP_WEIGHTS: [i64; 2] = [-1, 1];
pub const MAX2SAT_WEIGHTS: [i64; 9] = [1, 2, 3, 5, 6, 7, 8, 9, 10];

/// Side length of the square TSPTW cities are scattered on.
const TSPTW_GRID: i64 = 100;

/// Literal carried by graph vertex `v` in MAX-2SAT instances: vertex `2i` is
/// `x_{i+1}` and vertex `2i + 1` is its negation.
pub fn literal_of_vertex(v: usize) -> i32 {
    let var = (v / 2 + 1) as i32;
    if v.is_multiple_of(2) {
        var
    } else {
        -var
    }
}

/// Draws `G(n, p)` and turns it into an instance of `problem`, returned in
/// the matching file format.
///
/// * MISP: one weight per vertex, then the edges;
/// * MCP: each edge gets a weight right after being drawn;
/// * MAX-2SAT: vertices are literals (see [`literal_of_vertex`]), so `n`
///   vertices give `ceil(n / 2)` variables, and each edge becomes the 2-clause
///   over its two endpoints with a random weight;
/// * TSPTW is not a graph problem: `p` is the window slack handed to
///   [`gen_tsptw`].
pub fn gen_erdos_renyi(problem: ProblemKind, n: usize, p: f64, seed: u64) -> Result<String, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("edge probability {p} is not in [0, 1]"));
    }
    if problem == ProblemKind::Tsptw {
        return Ok(super::write_tsptw(&gen_tsptw(n, p, seed)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertex_weights: Vec<i64> = match problem {
        ProblemKind::Misp => (0..n).map(|_| pick(&mut rng, &MISP_WEIGHTS)).collect(),
        _ => Vec::new(),
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                let w = match problem {
                    ProblemKind::Mcp => pick(&mut rng, &MCP_WEIGHTS),
                    ProblemKind::Max2Sat => pick(&mut rng, &MAX2SAT_WEIGHTS),
                    _ => 1,
                };
                edges.push((u, v, w));
            }
        }
    }

    if problem == ProblemKind::Max2Sat {
        let mut formula = Wcnf::new(n.div_ceil(2));
        for (u, v, w) in edges {
            formula.add_clause(w, literal_of_vertex(u), Some(literal_of_vertex(v)))?;
        }
        return Ok(formula.to_text());
    }
    let mut graph = Graph::new(n);
    for (u, v, w) in edges {
        graph.add_edge(u, v, w)?;
    }
    if problem == ProblemKind::Misp {
        graph.set_vertex_weights(vertex_weights);
    }
    Ok(graph.to_text())
}

/// TSPTW instance with `n` cities (depot included) that is feasible by
/// construction: cities sit on integer points of a 100 x 100 square,
/// distances are rounded Euclidean, and every window contains the arrival
/// time of a hidden random tour. `slack` widens the windows around those
/// arrival times by up to `slack * 100` time units on each side.
pub fn gen_tsptw(n: usize, slack: f64, seed: u64) -> Result<TsptwInstance, String> {
    if n == 0 {
        return Err("a TSPTW instance needs at least the depot".into());
    }
    if !slack.is_finite() || slack < 0.0 {
        return Err(format!("window slack {slack} must be a non-negative number"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(i64, i64)> =
        (0..n).map(|_| (rng.random_range(0..=TSPTW_GRID), rng.random_range(0..=TSPTW_GRID))).collect();
    let distances: Vec<Vec<i64>> = points
        .iter()
        .map(|a| {
            points.iter().map(|b| (((a.0 - b.0).pow(2) + (a.1 - b.1).pow(2)) as f64).sqrt().round() as i64).collect()
        })
        .collect();

    let mut tour: Vec<usize> = (1..n).collect();
    tour.shuffle(&mut rng);
    let spread = (slack * TSPTW_GRID as f64).round() as i64;
    let mut windows = vec![(0, 0); n];
    let (mut time, mut at) = (0, 0);
    for &city in &tour {
        time += distances[at][city];
        at = city;
        let before = rng.random_range(0..=spread);
        let after = rng.random_range(0..=spread);
        windows[city] = ((time - before).max(0), time + after);
    }
    time += distances[at][0];
    windows[0] = (0, time + rng.random_range(0..=spread));
    Ok(TsptwInstance { distances, windows })
}

fn pick(rng: &mut ChaCha8Rng, values: &[i64]) -> i64 {
    values[rng.random_range(0..values.len())]
}
