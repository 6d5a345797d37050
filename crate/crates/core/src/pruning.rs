//! Local bounds and rough upper bounds.
//!
//! Local bounds refine the single bound carried by a relaxed diagram into one
//! bound per node of its exact cutset: the longest root-terminal path going
//! through that node. They are obtained by a backward traversal that starts
//! from the terminal layer and stops at the last exact layer. A cutset taken
//! above the last exact layer (first exact layer, say) would require the
//! traversal to go all the way up to the root; only last-exact-layer cutsets
//! are produced here.
//!
//! The rough upper bound is the problem-specific `Problem::fast_bound` used
//! to discard nodes while compiling.

use crate::mdd::{CompilationKind, DecisionDiagram};
use crate::model::{Problem, MINUS_INFINITY};

/// Annotates every node of the last exact layer of a relaxed diagram with
/// its local bound. Nodes from which the terminal layer cannot be reached
/// get `MINUS_INFINITY`. Returns the number of nodes visited by the
/// backward traversal.
pub fn compute_local_bounds<S>(dd: &mut DecisionDiagram<S>) -> usize {
    debug_assert_eq!(dd.kind, CompilationKind::Relaxed);
    for node in dd.nodes.iter_mut() {
        node.value_bot = MINUS_INFINITY;
        node.marked = false;
        node.local_bound = MINUS_INFINITY;
    }
    dd.local_bounds_computed = true;

    let complete = dd.layers.len() == dd.nb_variables - dd.root_path.len() + 1;
    if !complete {
        return 0;
    }
    let last = dd.layers.len() - 1;
    for id in dd.layers[last].clone() {
        dd.nodes[id].marked = true;
        dd.nodes[id].value_bot = 0;
    }

    let mut visits = 0;
    for layer in (dd.lel + 1..=last).rev() {
        for id in dd.layers[layer].clone() {
            visits += 1;
            if !dd.nodes[id].marked {
                continue;
            }
            let below = dd.nodes[id].value_bot;
            for k in 0..dd.nodes[id].inbound.len() {
                let edge = dd.nodes[id].inbound[k];
                let parent = &mut dd.nodes[edge.parent];
                parent.marked = true;
                parent.value_bot = parent.value_bot.max(below + edge.weight);
            }
        }
    }

    for id in dd.layers[dd.lel].clone() {
        visits += 1;
        let node = &mut dd.nodes[id];
        if node.marked {
            node.local_bound = node.value_top + node.value_bot;
        }
    }
    dd.stats.backward_visits = visits;
    visits
}

/// A node may only enter a diagram when its rough upper bound strictly
/// exceeds the incumbent.
pub fn rub_admits<P: Problem>(problem: &P, state: &P::State, depth: usize, value_top: i64, incumbent: i64) -> bool {
    problem.fast_bound(state, depth, value_top) > incumbent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdd::{compile, CompileParams, SubProblem};
    use crate::testutil::Toy;

    fn relaxed_toy() -> DecisionDiagram<&'static str> {
        let toy = Toy::two_branches();
        compile(&toy, &toy, &SubProblem::root(&toy), &CompileParams::relaxed(2))
    }

    #[test]
    fn local_bounds_of_the_cutset() {
        let mut dd = relaxed_toy();
        assert_eq!(dd.last_exact_layer(), 1);
        assert_eq!(dd.best_value(), Some(102));
        let visits = compute_local_bounds(&mut dd);
        let bounds: Vec<(&str, i64)> = dd.layer(1).iter().map(|u| (u.state, u.local_bound)).collect();
        assert_eq!(bounds, vec![("a", 16), ("b", 102)]);
        assert!(visits <= dd.stats().nodes_created);
    }

    #[test]
    fn the_longest_path_goes_through_some_cutset_node() {
        let mut dd = relaxed_toy();
        compute_local_bounds(&mut dd);
        let best = dd.layer(1).iter().map(|u| u.local_bound).max();
        assert_eq!(best, dd.best_value());
    }

    #[test]
    fn dead_end_cutset_nodes_get_minus_infinity() {
        let mut dd = relaxed_toy();
        // cut every arc leaving node a
        let a = dd.layer_ids(1).find(|&id| dd.nodes[id].state == "a").unwrap();
        for node in dd.nodes.iter_mut() {
            node.inbound.retain(|e| e.parent != a);
        }
        compute_local_bounds(&mut dd);
        assert_eq!(dd.nodes[a].local_bound, MINUS_INFINITY);
        assert!(!dd.nodes[a].marked);
    }

    struct Bounded(i64);

    impl Problem for Bounded {
        type State = ();
        fn nb_variables(&self) -> usize {
            0
        }
        fn initial_state(&self) {}
        fn initial_value(&self) -> i64 {
            0
        }
        fn domain(&self, _: &(), _: usize) -> Vec<i64> {
            vec![]
        }
        fn full_domain(&self, _: usize) -> Vec<i64> {
            vec![]
        }
        fn transition(&self, _: &(), _: crate::model::Decision) -> Option<()> {
            None
        }
        fn transition_cost(&self, _: &(), _: crate::model::Decision) -> i64 {
            0
        }
        fn fast_bound(&self, _: &(), _: usize, _: i64) -> i64 {
            self.0
        }
    }

    #[test]
    fn rough_upper_bound_rule_is_strict() {
        assert!(!rub_admits(&Bounded(42), &(), 0, 0, 100));
        assert!(!rub_admits(&Bounded(42), &(), 0, 0, 42));
        assert!(rub_admits(&Bounded(43), &(), 0, 0, 42));
        assert!(rub_admits(&Bounded(-1_000), &(), 0, 0, MINUS_INFINITY));
    }
}
