//! Hand-written models shared by unit tests.

use crate::model::{Decision, Problem, Relaxation};

/// Explicit transition table over named states. Every merge yields `"M"`
/// and relaxed arcs keep their weight.
pub struct Toy {
    nb_variables: usize,
    arcs: Vec<(&'static str, i64, &'static str, i64)>,
}

impl Toy {
    /// Three variables. Compiled relaxed with width 2, nodes c, d and f are
    /// merged on layer 2, the exact cutset is {a, b} and the local bounds
    /// are 16 for a and 102 for b.
    pub fn two_branches() -> Self {
        Toy {
            nb_variables: 3,
            arcs: vec![
                ("r", 0, "a", 10),
                ("r", 1, "b", 50),
                ("a", 0, "c", 3),
                ("a", 1, "d", 1),
                ("b", 0, "e", 40),
                ("b", 1, "f", 2),
                ("c", 0, "t", 3),
                ("d", 0, "t", 3),
                ("f", 0, "t", 3),
                ("M", 0, "t", 3),
                ("e", 0, "t", 12),
            ],
        }
    }

    fn arc(&self, state: &str, value: i64) -> Option<&(&'static str, i64, &'static str, i64)> {
        self.arcs.iter().find(|(s, v, _, _)| *s == state && *v == value)
    }
}

impl Problem for Toy {
    type State = &'static str;

    fn nb_variables(&self) -> usize {
        self.nb_variables
    }
    fn initial_state(&self) -> &'static str {
        "r"
    }
    fn initial_value(&self) -> i64 {
        0
    }
    fn domain(&self, state: &&'static str, _: usize) -> Vec<i64> {
        self.arcs.iter().filter(|(s, ..)| s == state).map(|(_, v, ..)| *v).collect()
    }
    fn full_domain(&self, _: usize) -> Vec<i64> {
        vec![0, 1]
    }
    fn transition(&self, state: &&'static str, d: Decision) -> Option<&'static str> {
        self.arc(state, d.value).map(|a| a.2)
    }
    fn transition_cost(&self, state: &&'static str, d: Decision) -> i64 {
        self.arc(state, d.value).map_or(0, |a| a.3)
    }
}

impl Relaxation for Toy {
    type State = &'static str;

    fn merge(&self, _: &[&&'static str]) -> &'static str {
        "M"
    }
    fn relax_arc(&self, weight: i64, _: &&'static str, _: &&'static str) -> i64 {
        weight
    }
}
