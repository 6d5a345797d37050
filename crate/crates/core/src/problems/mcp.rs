//! Maximum cut.
//!
//! Vertices are assigned in order to one of two sides, `S` (value 0) or `T`
//! (value 1). Component `l` of a state is the marginal benefit of putting
//! the undecided vertex `l` on side `T` given the vertices decided so far.
//! The root value collects every negative edge weight and each transition
//! cost adds the part of the cut value that the decision guarantees.

use crate::io::Graph;
use crate::model::{Decision, Problem, Relaxation};
use crate::problems::benefit;

pub const SIDE_S: i64 = 0;
pub const SIDE_T: i64 = 1;

#[derive(Debug, Clone)]
pub struct MaxCut {
    weights: Vec<Vec<i64>>,
    root_value: i64,
    /// `positive_suffix[k]`: total positive weight among vertices `>= k`.
    positive_suffix: Vec<i64>,
    /// `negative_prefix[k]`: total negative weight among vertices `< k`.
    negative_prefix: Vec<i64>,
}

impl MaxCut {
    pub fn new(graph: &Graph) -> Self {
        Self::from_matrix(graph.weight_matrix())
    }

    #[allow(clippy::needless_range_loop)]
    pub fn from_matrix(weights: Vec<Vec<i64>>) -> Self {
        let n = weights.len();
        let pairs = |range: std::ops::Range<usize>, f: fn(i64) -> i64| {
            let mut total = 0;
            for i in range.clone() {
                for j in i + 1..range.end {
                    total += f(weights[i][j]);
                }
            }
            total
        };
        let pos = |w: i64| w.max(0);
        let neg = |w: i64| w.min(0);
        let positive_suffix = (0..=n).map(|k| pairs(k..n, pos)).collect();
        let negative_prefix = (0..=n).map(|k| pairs(0..k, neg)).collect();
        let root_value = pairs(0..n, neg);
        MaxCut { weights, root_value, positive_suffix, negative_prefix }
    }

    pub fn weight(&self, u: usize, v: usize) -> i64 {
        self.weights[u][v]
    }

    /// Value of the cut separating the vertices mapped to `SIDE_S` from the
    /// others.
    pub fn cut_value(&self, sides: &[i64]) -> i64 {
        let n = self.weights.len();
        let mut total = 0;
        for i in 0..n {
            for j in i + 1..n {
                if sides[i] != sides[j] {
                    total += self.weights[i][j];
                }
            }
        }
        total
    }
}

impl Problem for MaxCut {
    type State = Vec<i64>;

    fn nb_variables(&self) -> usize {
        self.weights.len()
    }

    fn initial_state(&self) -> Vec<i64> {
        vec![0; self.weights.len()]
    }

    fn initial_value(&self) -> i64 {
        self.root_value
    }

    fn domain(&self, _: &Vec<i64>, _: usize) -> Vec<i64> {
        vec![SIDE_S, SIDE_T]
    }

    fn full_domain(&self, _: usize) -> Vec<i64> {
        vec![SIDE_S, SIDE_T]
    }

    fn transition(&self, state: &Vec<i64>, d: Decision) -> Option<Vec<i64>> {
        let k = d.variable;
        let sign = if d.value == SIDE_S { 1 } else { -1 };
        let mut next = state.clone();
        next[k] = 0;
        for (l, s) in next.iter_mut().enumerate().skip(k + 1) {
            *s += sign * self.weights[k][l];
        }
        Some(next)
    }

    fn transition_cost(&self, state: &Vec<i64>, d: Decision) -> i64 {
        let k = d.variable;
        let own = if d.value == SIDE_S { (-state[k]).max(0) } else { state[k].max(0) };
        let guaranteed: i64 = (k + 1..state.len())
            .filter(|&l| {
                let product = state[l] * self.weights[k][l];
                if d.value == SIDE_S {
                    product <= 0
                } else {
                    product >= 0
                }
            })
            .map(|l| state[l].abs().min(self.weights[k][l].abs()))
            .sum();
        own + guaranteed
    }

    fn fast_bound(&self, state: &Vec<i64>, depth: usize, value_top: i64) -> i64 {
        value_top + benefit::magnitude_from(state, depth) + self.positive_suffix[depth] + self.negative_prefix[depth]
            - self.root_value
    }
}

impl Relaxation for MaxCut {
    type State = Vec<i64>;

    fn merge(&self, states: &[&Vec<i64>]) -> Vec<i64> {
        benefit::merge(states)
    }

    fn relax_arc(&self, weight: i64, original: &Vec<i64>, merged: &Vec<i64>) -> i64 {
        benefit::relax_arc(weight, original, merged)
    }
}
