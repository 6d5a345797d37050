//! Top-down compilation of exact, restricted and relaxed decision diagrams.
//!
//! All nodes of a diagram live in one arena; layer `i` occupies a contiguous
//! range of that arena and holds the nodes reached after deciding variable
//! `depth + i - 1`, where `depth` is the number of variables already fixed by
//! the sub-problem the diagram is compiled for.
//!
//! Width bounding follows the minLP heuristic: the nodes with the shortest
//! longest path from the root are the ones that get deleted (restricted) or
//! merged (relaxed). Ties are broken by insertion order so that compilations
//! are reproducible.

use std::cmp::Reverse;
use std::fmt::{Debug, Write as _};
use std::ops::Range;

use indexmap::map::Entry;
use indexmap::IndexMap;
use rustc_hash::FxBuildHasher;

use crate::model::{Decision, Problem, Relaxation, MINUS_INFINITY, PLUS_INFINITY};
use crate::pruning::rub_admits;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompilationKind {
    Exact,
    Restricted,
    Relaxed,
}

/// An open sub-problem: an exact state, the best known path leading to it
/// and an upper bound on what can be achieved through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubProblem<S> {
    pub state: S,
    pub value_top: i64,
    pub path: Vec<Decision>,
    pub ub: i64,
}

impl<S> SubProblem<S> {
    /// The sub-problem rooted at the initial state of `problem`.
    pub fn root<P: Problem<State = S>>(problem: &P) -> Self {
        SubProblem {
            state: problem.initial_state(),
            value_top: problem.initial_value(),
            path: Vec::new(),
            ub: PLUS_INFINITY,
        }
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub parent: NodeId,
    pub decision: Decision,
    pub weight: i64,
}

#[derive(Debug, Clone)]
pub struct Node<S> {
    pub state: S,
    /// Length of the longest path from the root to this node.
    pub value_top: i64,
    /// Last arc of that longest path.
    pub best_arc: Option<Edge>,
    /// Every inbound arc. Only kept for relaxed diagrams unless
    /// [`CompileParams::keep_arcs`] is set.
    pub inbound: Vec<Edge>,
    pub exact: bool,
    /// Length of the longest path from this node to the terminal layer.
    pub value_bot: i64,
    /// Reachable from the terminal layer in the backward traversal.
    pub marked: bool,
    /// Longest root-terminal path through this node.
    pub local_bound: i64,
}

impl<S> Node<S> {
    fn with_state<T>(self, state: T) -> Node<T> {
        Node {
            state,
            value_top: self.value_top,
            best_arc: self.best_arc,
            inbound: self.inbound,
            exact: self.exact,
            value_bot: self.value_bot,
            marked: self.marked,
            local_bound: self.local_bound,
        }
    }

    fn new(state: S, value_top: i64, best_arc: Option<Edge>, exact: bool) -> Self {
        Node {
            state,
            value_top,
            best_arc,
            inbound: Vec::new(),
            exact,
            value_bot: MINUS_INFINITY,
            marked: false,
            local_bound: MINUS_INFINITY,
        }
    }

    fn absorb(&mut self, edge: Edge, value: i64, keep_inbound: bool) {
        if value > self.value_top {
            self.value_top = value;
            self.best_arc = Some(edge);
        }
        if keep_inbound {
            self.inbound.push(edge);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompileParams {
    pub kind: CompilationKind,
    /// Maximum layer width (ignored by exact compilations).
    pub width: usize,
    /// Value of the incumbent solution, used by the rough upper bound filter.
    pub incumbent: i64,
    pub rub: bool,
    /// Keep every arc, not only the best inbound one, in exact and
    /// restricted diagrams too (relaxed diagrams always keep them).
    pub keep_arcs: bool,
}

impl CompileParams {
    pub fn exact() -> Self {
        CompileParams {
            kind: CompilationKind::Exact,
            width: usize::MAX,
            incumbent: MINUS_INFINITY,
            rub: false,
            keep_arcs: false,
        }
    }

    pub fn restricted(width: usize) -> Self {
        CompileParams {
            kind: CompilationKind::Restricted,
            width,
            incumbent: MINUS_INFINITY,
            rub: false,
            keep_arcs: false,
        }
    }

    pub fn relaxed(width: usize) -> Self {
        CompileParams { kind: CompilationKind::Relaxed, width, incumbent: MINUS_INFINITY, rub: false, keep_arcs: false }
    }

    pub fn with_all_arcs(mut self) -> Self {
        self.keep_arcs = true;
        self
    }

    pub fn with_rub(mut self, incumbent: i64) -> Self {
        self.rub = true;
        self.incumbent = incumbent;
        self
    }
}

/// Counters gathered while compiling and post-processing a diagram.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompileStats {
    pub nodes_created: usize,
    pub rub_discarded: usize,
    pub backward_visits: usize,
}

#[derive(Debug, Clone)]
pub struct DecisionDiagram<S> {
    pub(crate) kind: CompilationKind,
    pub(crate) nb_variables: usize,
    pub(crate) root_path: Vec<Decision>,
    pub(crate) nodes: Vec<Node<S>>,
    pub(crate) layers: Vec<Range<usize>>,
    pub(crate) is_exact: bool,
    pub(crate) lel: usize,
    pub(crate) best_terminal: Option<NodeId>,
    pub(crate) local_bounds_computed: bool,
    pub(crate) stats: CompileStats,
}

type LayerMap<S> = IndexMap<S, Node<()>, FxBuildHasher>;

/// Compiles a diagram for `sub` by unrolling the transitions layer per layer.
///
/// With `params.rub`, a candidate child whose rough upper bound does not
/// exceed `params.incumbent` is never inserted. Layers wider than
/// `params.width` are restricted or relaxed depending on `params.kind`; the
/// first layer below the root of a relaxed diagram is never merged so that
/// its exact cutset lies strictly below `sub`.
pub fn compile<P, R>(
    problem: &P,
    relaxation: &R,
    sub: &SubProblem<P::State>,
    params: &CompileParams,
) -> DecisionDiagram<P::State>
where
    P: Problem,
    R: Relaxation<State = P::State>,
{
    let n = problem.nb_variables();
    let depth = sub.depth();
    let keep_inbound = params.kind == CompilationKind::Relaxed || params.keep_arcs;
    let width = params.width.max(1);

    #[allow(clippy::single_range_in_vec_init)]
    let mut dd = DecisionDiagram {
        kind: params.kind,
        nb_variables: n,
        root_path: sub.path.clone(),
        nodes: vec![Node::new(sub.state.clone(), sub.value_top, None, true)],
        layers: vec![0..1],
        is_exact: true,
        lel: 0,
        best_terminal: None,
        local_bounds_computed: false,
        stats: CompileStats { nodes_created: 1, ..Default::default() },
    };

    for var in depth..n {
        let current = dd.layers.last().cloned().unwrap_or(0..0);
        if current.is_empty() {
            break;
        }
        let mut next: LayerMap<P::State> = IndexMap::with_hasher(FxBuildHasher);
        for id in current {
            let parent = &dd.nodes[id];
            for value in problem.domain(&parent.state, var) {
                let decision = Decision::new(var, value);
                let Some(child) = problem.transition(&parent.state, decision) else {
                    continue;
                };
                let weight = problem.transition_cost(&parent.state, decision);
                let candidate = parent.value_top + weight;
                if params.rub && !rub_admits(problem, &child, var + 1, candidate, params.incumbent) {
                    dd.stats.rub_discarded += 1;
                    continue;
                }
                let edge = Edge { parent: id, decision, weight };
                match next.entry(child) {
                    Entry::Occupied(mut e) => {
                        let node = e.get_mut();
                        node.exact &= parent.exact;
                        node.absorb(edge, candidate, keep_inbound);
                    }
                    Entry::Vacant(e) => {
                        let mut node = Node::new((), candidate, Some(edge), parent.exact);
                        if keep_inbound {
                            node.inbound.push(edge);
                        }
                        e.insert(node);
                    }
                }
            }
        }

        let mut layer: Vec<Node<P::State>> = next.into_iter().map(|(state, n)| n.with_state(state)).collect();
        dd.stats.nodes_created += layer.len();

        if layer.len() > width {
            match params.kind {
                CompilationKind::Exact => {}
                CompilationKind::Restricted => {
                    restrict_layer(&mut layer, width);
                    dd.is_exact = false;
                }
                CompilationKind::Relaxed if var > depth => {
                    relax_layer(&mut layer, width, relaxation, &dd.nodes);
                    dd.is_exact = false;
                }
                CompilationKind::Relaxed => {}
            }
        }

        let start = dd.nodes.len();
        dd.nodes.extend(layer);
        dd.layers.push(start..dd.nodes.len());
    }

    if dd.layers.len() == n - depth + 1 {
        let terminal = dd.layers.last().cloned().unwrap_or(0..0);
        dd.best_terminal = terminal.fold(None, |best: Option<NodeId>, id| match best {
            Some(b) if dd.nodes[b].value_top >= dd.nodes[id].value_top => Some(b),
            _ => Some(id),
        });
    }
    let first_inexact = dd.layers.iter().position(|range| dd.nodes[range.clone()].iter().any(|u| !u.exact));
    dd.lel = match first_inexact {
        Some(i) => i - 1,
        None => dd.layers.len() - 1,
    };
    dd
}

/// Indices of `layer` ordered from the most to the least promising node.
fn min_lp_order<S>(layer: &[Node<S>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..layer.len()).collect();
    order.sort_by_key(|&i| (Reverse(layer[i].value_top), i));
    order
}

/// Keeps the `width` nodes with the largest `value_top`, in their original
/// order. Returns whether some node was deleted.
pub fn restrict_layer<S>(layer: &mut Vec<Node<S>>, width: usize) -> bool {
    if layer.len() <= width {
        return false;
    }
    let mut keep = vec![false; layer.len()];
    for &i in min_lp_order(layer).iter().take(width) {
        keep[i] = true;
    }
    let mut flags = keep.into_iter();
    layer.retain(|_| flags.next().unwrap_or(false));
    true
}

/// Keeps the `width - 1` most promising nodes and merges all the others into
/// a single inexact node. Arcs entering a merged node are relaxed with Γ and
/// redirected; `arena` holds their source nodes. When the merged state is
/// already present in the layer, it is folded into that node, which then
/// becomes inexact. Returns whether a merge happened.
pub fn relax_layer<S, R>(layer: &mut Vec<Node<S>>, width: usize, relaxation: &R, arena: &[Node<S>]) -> bool
where
    S: Eq,
    R: Relaxation<State = S>,
{
    let width = width.max(2);
    if layer.len() <= width {
        return false;
    }
    let order = min_lp_order(layer);
    let selected: Vec<usize> = order[width - 1..].to_vec();
    let mut is_selected = vec![false; layer.len()];
    for &i in &selected {
        is_selected[i] = true;
    }

    let merged_state = {
        let states: Vec<&S> = selected.iter().map(|&i| &layer[i].state).collect();
        relaxation.merge(&states)
    };
    let mut redirected = Vec::new();
    for &i in &selected {
        let original = &layer[i];
        for edge in &original.inbound {
            let weight = relaxation.relax_arc(edge.weight, &original.state, &merged_state);
            redirected.push(Edge { weight, ..*edge });
        }
    }

    let mut flags = is_selected.into_iter();
    layer.retain(|_| !flags.next().unwrap_or(true));

    let slot = match layer.iter().position(|u| u.state == merged_state) {
        Some(i) => i,
        None => {
            layer.push(Node::new(merged_state, MINUS_INFINITY, None, false));
            layer.len() - 1
        }
    };
    let target = &mut layer[slot];
    target.exact = false;
    for edge in redirected {
        let value = arena[edge.parent].value_top + edge.weight;
        target.absorb(edge, value, true);
    }
    true
}

impl<S: Clone + Debug> DecisionDiagram<S> {
    pub fn kind(&self) -> CompilationKind {
        self.kind
    }

    /// No restriction or relaxation took place during the compilation.
    pub fn is_exact(&self) -> bool {
        self.is_exact
    }

    /// Index (relative to the root of the diagram) of the last exact layer.
    pub fn last_exact_layer(&self) -> usize {
        self.lel
    }

    pub fn stats(&self) -> CompileStats {
        self.stats
    }

    pub fn nb_layers(&self) -> usize {
        self.layers.len()
    }

    /// Number of variables fixed before the root of this diagram.
    pub fn root_depth(&self) -> usize {
        self.root_path.len()
    }

    pub fn layer(&self, index: usize) -> &[Node<S>] {
        &self.nodes[self.layers[index].clone()]
    }

    pub fn layer_ids(&self, index: usize) -> Range<usize> {
        self.layers[index].clone()
    }

    pub fn node(&self, id: NodeId) -> &Node<S> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node<S>] {
        &self.nodes
    }

    pub fn has_local_bounds(&self) -> bool {
        self.local_bounds_computed
    }

    /// Length of the longest root-terminal path, if any terminal node exists.
    pub fn best_value(&self) -> Option<i64> {
        self.best_terminal.map(|id| self.nodes[id].value_top)
    }

    /// Decisions along the best known path from the problem root to `id`.
    pub fn path_to(&self, id: NodeId) -> Vec<Decision> {
        let mut rev = Vec::new();
        let mut cursor = self.nodes[id].best_arc;
        while let Some(edge) = cursor {
            rev.push(edge.decision);
            cursor = self.nodes[edge.parent].best_arc;
        }
        let mut path = self.root_path.clone();
        path.extend(rev.into_iter().rev());
        path
    }

    /// Value and decisions (from the problem root) of the longest path.
    pub fn best_solution(&self) -> Option<(i64, Vec<Decision>)> {
        self.best_terminal.map(|id| (self.nodes[id].value_top, self.path_to(id)))
    }

    /// One sub-problem per node of the last exact layer. Their upper bound is
    /// the local bound when it has been computed, the diagram bound otherwise.
    pub fn exact_cutset(&self) -> Vec<SubProblem<S>> {
        let bound = self.best_value().unwrap_or(MINUS_INFINITY);
        self.layer_ids(self.lel)
            .map(|id| {
                let node = &self.nodes[id];
                SubProblem {
                    state: node.state.clone(),
                    value_top: node.value_top,
                    path: self.path_to(id),
                    ub: if self.local_bounds_computed { node.local_bound } else { bound },
                }
            })
            .collect()
    }

    /// Nodes of the longest path, from its terminal node up to the root.
    pub fn best_path_nodes(&self) -> Vec<NodeId> {
        let mut path = Vec::new();
        let mut cursor = self.best_terminal;
        while let Some(id) = cursor {
            path.push(id);
            cursor = self.nodes[id].best_arc.map(|e| e.parent);
        }
        path
    }

    /// Graphviz rendering. Inexact nodes get a double border and the arcs of
    /// the longest path are drawn in bold.
    pub fn to_dot(&self) -> String {
        let mut on_best = vec![false; self.nodes.len()];
        for id in self.best_path_nodes() {
            on_best[id] = true;
        }

        let mut out = String::from("digraph mdd {\n  rankdir=TB;\n  node [shape=ellipse];\n");
        for (layer, range) in self.layers.iter().enumerate() {
            let _ = writeln!(out, "  subgraph layer_{layer} {{ rank=same;");
            for id in range.clone() {
                let u = &self.nodes[id];
                let label = format!("{:?}\\nv={}", u.state, u.value_top).replace('"', "'");
                let peripheries = if u.exact { 1 } else { 2 };
                let _ = writeln!(out, "    n{id} [label=\"{label}\", peripheries={peripheries}];");
            }
            out.push_str("  }\n");
        }
        for (id, u) in self.nodes.iter().enumerate() {
            let edges: Vec<Edge> =
                if u.inbound.is_empty() { u.best_arc.into_iter().collect() } else { u.inbound.clone() };
            for e in edges {
                let bold = on_best[id] && u.best_arc == Some(e);
                let style = if bold { ", style=bold" } else { "" };
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [label=\"x{}={} ({})\"{}];",
                    e.parent, id, e.decision.variable, e.decision.value, e.weight, style
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(value_top: i64) -> Node<u32> {
        Node::new(value_top as u32, value_top, None, true)
    }

    fn values(layer: &[Node<u32>]) -> Vec<i64> {
        layer.iter().map(|u| u.value_top).collect()
    }

    #[test]
    fn restriction_keeps_the_longest_paths() {
        let mut layer = vec![node(10), node(7), node(3)];
        assert!(restrict_layer(&mut layer, 2));
        assert_eq!(values(&layer), vec![10, 7]);

        let mut layer = vec![node(3), node(10), node(7)];
        restrict_layer(&mut layer, 2);
        assert_eq!(values(&layer), vec![10, 7]);
    }

    #[test]
    fn restriction_breaks_ties_by_insertion_order() {
        let mut layer: Vec<Node<u32>> = (0..4).map(|i| Node::new(i, 5, None, true)).collect();
        restrict_layer(&mut layer, 2);
        let states: Vec<u32> = layer.iter().map(|u| u.state).collect();
        assert_eq!(states, vec![0, 1]);
    }

    #[test]
    fn narrow_layers_are_left_untouched() {
        let mut layer = vec![node(1), node(2)];
        assert!(!restrict_layer(&mut layer, 2));
        assert_eq!(values(&layer), vec![1, 2]);
    }

    /// Merging yields the max state; Γ adds the gap between the original
    /// and the merged state.
    struct MaxMerge;

    impl Relaxation for MaxMerge {
        type State = u32;
        fn merge(&self, states: &[&u32]) -> u32 {
            states.iter().map(|s| **s).max().unwrap_or(0)
        }
        fn relax_arc(&self, weight: i64, original: &u32, merged: &u32) -> i64 {
            weight + (*merged as i64 - *original as i64)
        }
    }

    fn with_arc(state: u32, parent: NodeId, weight: i64, arena: &[Node<u32>]) -> Node<u32> {
        let edge = Edge { parent, decision: Decision::new(0, state as i64), weight };
        let mut u = Node::new(state, arena[parent].value_top + weight, Some(edge), true);
        u.inbound.push(edge);
        u
    }

    #[test]
    fn relaxation_merges_the_least_promising_nodes() {
        let arena = vec![node(0)];
        let mut layer = vec![
            with_arc(1, 0, 10, &arena),
            with_arc(2, 0, 7, &arena),
            with_arc(3, 0, 3, &arena),
            with_arc(4, 0, 1, &arena),
        ];
        assert!(relax_layer(&mut layer, 3, &MaxMerge, &arena));
        assert_eq!(layer.len(), 3);
        // merged state 4 collides with nobody left in the layer
        let merged = &layer[2];
        assert_eq!(merged.state, 4);
        assert!(!merged.exact);
        assert_eq!(merged.inbound.len(), 2);
        // arc into 3 relaxed by +1, arc into 4 unchanged
        assert_eq!(merged.value_top, 4);
        assert!(layer[0].exact && layer[1].exact);
    }

    #[test]
    fn merged_state_colliding_with_a_kept_node_is_folded() {
        let arena = vec![node(0)];
        let mut layer = vec![with_arc(9, 0, 10, &arena), with_arc(2, 0, 7, &arena), with_arc(9 - 1, 0, 3, &arena)];
        // merge {2, 8} -> 8, which is not kept: appended
        relax_layer(&mut layer, 2, &MaxMerge, &arena);
        assert_eq!(layer.len(), 2);

        struct ToNine;
        impl Relaxation for ToNine {
            type State = u32;
            fn merge(&self, _: &[&u32]) -> u32 {
                9
            }
            fn relax_arc(&self, weight: i64, _: &u32, _: &u32) -> i64 {
                weight
            }
        }
        let mut layer = vec![with_arc(9, 0, 10, &arena), with_arc(2, 0, 7, &arena), with_arc(5, 0, 3, &arena)];
        relax_layer(&mut layer, 2, &ToNine, &arena);
        assert_eq!(layer.len(), 1);
        assert_eq!(layer[0].state, 9);
        assert!(!layer[0].exact);
        assert_eq!(layer[0].value_top, 10);
        assert_eq!(layer[0].inbound.len(), 3);
    }

    #[test]
    fn merged_value_is_the_best_relaxed_arc() {
        let arena = vec![node(0)];
        let mut layer = vec![with_arc(1, 0, 10, &arena), with_arc(2, 0, 7, &arena), with_arc(3, 0, 3, &arena)];
        relax_layer(&mut layer, 2, &MaxMerge, &arena);
        // {2, 3} merged into state 3, the 7-arc being relaxed by +1
        assert_eq!(layer.len(), 2);
        assert_eq!(layer[1].state, 3);
        assert_eq!(layer[1].value_top, 8);
        assert_eq!(layer[1].best_arc.map(|e| e.weight), Some(8));

        let mut layer = vec![with_arc(1, 0, 10, &arena), with_arc(2, 0, 7, &arena), with_arc(3, 0, 3, &arena)];
        assert!(!relax_layer(&mut layer, 3, &MaxMerge, &arena));
        assert!(layer.iter().all(|u| u.exact));
    }
}
