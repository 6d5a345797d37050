//! Weighted maximum independent set.
//!
//! A state is the set of vertices that may still join the independent set.
//! Deciding vertex `k` removes it from the candidates and, when it is
//! selected, removes its neighbours too. Merging takes the union of the
//! candidate sets and leaves arc weights untouched.

use fixedbitset::FixedBitSet;

use crate::io::Graph;
use crate::model::{Decision, Problem, Relaxation};

#[derive(Debug, Clone)]
pub struct Misp {
    weights: Vec<i64>,
    neighbours: Vec<FixedBitSet>,
}

impl Misp {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.nb_vertices();
        let mut neighbours = vec![FixedBitSet::with_capacity(n); n];
        for e in graph.edges() {
            neighbours[e.u].insert(e.v);
            neighbours[e.v].insert(e.u);
        }
        let weights = (0..n).map(|i| graph.vertex_weight(i)).collect();
        Misp { weights, neighbours }
    }

    pub fn weight(&self, vertex: usize) -> i64 {
        self.weights[vertex]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbours[u].contains(v)
    }
}

impl Problem for Misp {
    type State = FixedBitSet;

    fn nb_variables(&self) -> usize {
        self.weights.len()
    }

    fn initial_state(&self) -> FixedBitSet {
        let mut all = FixedBitSet::with_capacity(self.weights.len());
        all.insert_range(..);
        all
    }

    fn initial_value(&self) -> i64 {
        0
    }

    fn domain(&self, state: &FixedBitSet, variable: usize) -> Vec<i64> {
        if state.contains(variable) {
            vec![0, 1]
        } else {
            vec![0]
        }
    }

    fn full_domain(&self, _: usize) -> Vec<i64> {
        vec![0, 1]
    }

    fn transition(&self, state: &FixedBitSet, d: Decision) -> Option<FixedBitSet> {
        let k = d.variable;
        if d.value == 1 && !state.contains(k) {
            return None;
        }
        let mut next = state.clone();
        next.set(k, false);
        if d.value == 1 {
            next.difference_with(&self.neighbours[k]);
        }
        Some(next)
    }

    fn transition_cost(&self, _: &FixedBitSet, d: Decision) -> i64 {
        if d.value == 1 {
            self.weights[d.variable]
        } else {
            0
        }
    }

    /// Every remaining candidate with a positive weight could be added.
    fn fast_bound(&self, state: &FixedBitSet, _: usize, value_top: i64) -> i64 {
        value_top + state.ones().map(|i| self.weights[i].max(0)).sum::<i64>()
    }
}

impl Relaxation for Misp {
    type State = FixedBitSet;

    fn merge(&self, states: &[&FixedBitSet]) -> FixedBitSet {
        let mut merged = FixedBitSet::with_capacity(self.weights.len());
        for s in states {
            merged.union_with(s);
        }
        merged
    }

    fn relax_arc(&self, weight: i64, _: &FixedBitSet, _: &FixedBitSet) -> i64 {
        weight
    }
}
