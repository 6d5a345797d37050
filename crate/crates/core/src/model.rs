//! The dynamic-programming model contract shared by every problem plugin.
//!
//! A problem is described as a labeled transition system: an initial state
//! and value, one transition function and one transition cost per variable,
//! and a (possibly state dependent) domain for each variable. The solver
//! always *maximizes* `initial_value + sum(transition_cost)`; minimization
//! problems are registered with negated costs.

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

/// Objective value used whenever no feasible value exists.
pub const MINUS_INFINITY: i64 = i64::MIN;
/// Objective value used whenever a quantity is not bounded from above.
pub const PLUS_INFINITY: i64 = i64::MAX;

/// Maximum number of leaves `brute_force_optimum` agrees to enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Assigns `value` to variable `variable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decision {
    pub variable: usize,
    pub value: i64,
}

impl Decision {
    pub fn new(variable: usize, value: i64) -> Self {
        Decision { variable, value }
    }
}

/// One decision per variable, in variable order.
pub type Assignment = Vec<Decision>;

/// A dynamic program over `nb_variables()` variables decided in the natural
/// order `0..n`.
pub trait Problem: Send + Sync {
    type State: Clone + Eq + Hash + Debug + Send + Sync;

    fn nb_variables(&self) -> usize;
    fn initial_state(&self) -> Self::State;
    fn initial_value(&self) -> i64;

    /// Values worth trying for `variable` from `state`. Values that are known
    /// to be infeasible may be left out.
    fn domain(&self, state: &Self::State, variable: usize) -> Vec<i64>;

    /// The static domain of `variable`, independent of any state. Used to
    /// enumerate the full Cartesian product in tests and oracles.
    fn full_domain(&self, variable: usize) -> Vec<i64>;

    /// `None` stands for the infeasible state.
    fn transition(&self, state: &Self::State, decision: Decision) -> Option<Self::State>;

    fn transition_cost(&self, state: &Self::State, decision: Decision) -> i64;

    /// Upper bound on the total objective of any feasible completion going
    /// through `state` (sitting at layer `depth`) reached with a prefix worth
    /// `value_top`. Must be admissible and cheap: it is evaluated for every
    /// candidate node of every approximate diagram.
    fn fast_bound(&self, _state: &Self::State, _depth: usize, _value_top: i64) -> i64 {
        PLUS_INFINITY
    }
}

/// The merge (⊕) and arc relaxation (Γ) operators used to compile relaxed
/// decision diagrams.
pub trait Relaxation: Send + Sync {
    type State;

    /// Over-approximates all `states`, which come from the same layer.
    fn merge(&self, states: &[&Self::State]) -> Self::State;

    /// New weight of an arc of weight `weight` that used to enter `original`
    /// and is redirected towards `merged`.
    fn relax_arc(&self, weight: i64, original: &Self::State, merged: &Self::State) -> i64;
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("assignment has {got} decisions, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("decision #{position} is about variable {variable}")]
    OutOfOrder { position: usize, variable: usize },
    #[error("assignment violates a constraint at variable {0}")]
    Infeasible(usize),
    #[error("domain product {0} exceeds the enumeration limit")]
    TooLarge(u128),
    #[error("problem has no feasible solution")]
    NoSolution,
}

/// Replays `assignment` through the transitions and returns
/// `initial_value + sum(transition_cost)`.
pub fn evaluate_assignment<P: Problem>(problem: &P, assignment: &[Decision]) -> Result<i64, ModelError> {
    let n = problem.nb_variables();
    if assignment.len() != n {
        return Err(ModelError::WrongLength { expected: n, got: assignment.len() });
    }
    let mut state = problem.initial_state();
    let mut value = problem.initial_value();
    for (position, decision) in assignment.iter().enumerate() {
        if decision.variable != position {
            return Err(ModelError::OutOfOrder { position, variable: decision.variable });
        }
        let next = problem.transition(&state, *decision).ok_or(ModelError::Infeasible(position))?;
        value += problem.transition_cost(&state, *decision);
        state = next;
    }
    Ok(value)
}

/// Exhaustive maximum of [`evaluate_assignment`] over the Cartesian product
/// of the full domains. Infeasible prefixes are cut as soon as they occur
/// since no transition recovers from infeasibility.
pub fn brute_force_optimum<P: Problem>(problem: &P) -> Result<(i64, Assignment), ModelError> {
    brute_force_completion(problem, &[])
}

/// Best feasible completion of `prefix` (exhaustive). The returned value is
/// the total objective, prefix included.
pub fn brute_force_completion<P: Problem>(problem: &P, prefix: &[Decision]) -> Result<(i64, Assignment), ModelError> {
    let n = problem.nb_variables();
    let size = (prefix.len()..n)
        .map(|var| problem.full_domain(var).len() as u128)
        .try_fold(1u128, |acc, d| acc.checked_mul(d))
        .unwrap_or(u128::MAX);
    if size > BRUTE_FORCE_LIMIT {
        return Err(ModelError::TooLarge(size));
    }

    let mut state = problem.initial_state();
    let mut value = problem.initial_value();
    for (position, decision) in prefix.iter().enumerate() {
        if decision.variable != position {
            return Err(ModelError::OutOfOrder { position, variable: decision.variable });
        }
        value += problem.transition_cost(&state, *decision);
        state = problem.transition(&state, *decision).ok_or(ModelError::Infeasible(position))?;
    }

    let mut current = prefix.to_vec();
    let mut best: Option<(i64, Assignment)> = None;
    enumerate(problem, &state, value, &mut current, &mut best);
    best.ok_or(ModelError::NoSolution)
}

fn enumerate<P: Problem>(
    problem: &P,
    state: &P::State,
    value: i64,
    current: &mut Assignment,
    best: &mut Option<(i64, Assignment)>,
) {
    let var = current.len();
    if var == problem.nb_variables() {
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            *best = Some((value, current.clone()));
        }
        return;
    }
    for val in problem.full_domain(var) {
        let decision = Decision::new(var, val);
        if let Some(next) = problem.transition(state, decision) {
            let cost = problem.transition_cost(state, decision);
            current.push(decision);
            enumerate(problem, &next, value + cost, current, best);
            current.pop();
        }
    }
}

/// Builds an assignment from plain values, variable `i` taking `values[i]`.
pub fn assignment_of(values: &[i64]) -> Assignment {
    values.iter().enumerate().map(|(i, &v)| Decision::new(i, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// x_i ∈ {0, 1}, reward `costs[i][x_i]`, and x_0 = x_1 = 1 is forbidden.
    struct Tiny {
        costs: Vec<[i64; 2]>,
    }

    impl Problem for Tiny {
        type State = u8;
        fn nb_variables(&self) -> usize {
            self.costs.len()
        }
        fn initial_state(&self) -> u8 {
            0
        }
        fn initial_value(&self) -> i64 {
            1
        }
        fn domain(&self, _: &u8, _: usize) -> Vec<i64> {
            vec![0, 1]
        }
        fn full_domain(&self, _: usize) -> Vec<i64> {
            vec![0, 1]
        }
        fn transition(&self, state: &u8, d: Decision) -> Option<u8> {
            if d.variable == 1 && *state == 1 && d.value == 1 {
                None
            } else {
                Some(d.value as u8)
            }
        }
        fn transition_cost(&self, _: &u8, d: Decision) -> i64 {
            self.costs[d.variable][d.value as usize]
        }
    }

    #[test]
    fn evaluation_replays_costs() {
        let p = Tiny { costs: vec![[0, 3], [2, 5]] };
        assert_eq!(evaluate_assignment(&p, &assignment_of(&[0, 1])), Ok(6));
        assert_eq!(evaluate_assignment(&p, &assignment_of(&[1, 1])), Err(ModelError::Infeasible(1)));
        assert_eq!(evaluate_assignment(&p, &assignment_of(&[1])), Err(ModelError::WrongLength { expected: 2, got: 1 }));
    }

    #[test]
    fn brute_force_finds_the_best_feasible_assignment() {
        let p = Tiny { costs: vec![[0, 3], [2, 5]] };
        let (v, x) = brute_force_optimum(&p).unwrap();
        assert_eq!(v, 6);
        assert_eq!(x, assignment_of(&[0, 1]));
    }

    #[test]
    fn brute_force_on_empty_model_returns_root_value() {
        let p = Tiny { costs: vec![] };
        assert_eq!(brute_force_optimum(&p), Ok((1, vec![])));
    }

    #[test]
    fn brute_force_refuses_oversized_products() {
        let p = Tiny { costs: vec![[0, 0]; 30] };
        assert!(matches!(brute_force_optimum(&p), Err(ModelError::TooLarge(_))));
    }
}
