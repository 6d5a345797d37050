//! Travelling salesman with time windows, minimizing the makespan.
//!
//! The salesman leaves depot 0 at time 0, visits every other city exactly
//! once within its time window (waiting when arriving early) and returns to
//! the depot. Variable `k < n - 1` is the `(k + 1)`-th city visited and the
//! last variable is the return to the depot.
//!
//! States keep a set of possible positions and an arrival time interval so
//! that merged states stay meaningful: in an exact state the position is a
//! singleton, `earliest == latest` and `may_visit` is empty.
//!
//! The solver maximizes, so costs and bounds are negated.

use fixedbitset::FixedBitSet;

use crate::model::{Decision, Problem, Relaxation, MINUS_INFINITY};

pub const DEPOT: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsptwInstance {
    pub distances: Vec<Vec<i64>>,
    /// Closed `[earliest, latest]` interval of each city.
    pub windows: Vec<(i64, i64)>,
}

impl TsptwInstance {
    pub fn nb_cities(&self) -> usize {
        self.distances.len()
    }

    pub fn distance(&self, from: usize, to: usize) -> i64 {
        self.distances[from][to]
    }

    /// Makespan of the tour visiting `order` (cities other than the depot)
    /// and returning to the depot, `None` when a window is missed.
    pub fn tour_makespan(&self, order: &[usize]) -> Option<i64> {
        let mut time = 0;
        let mut here = DEPOT;
        for &city in order.iter().chain(std::iter::once(&DEPOT)) {
            let (open, close) = self.windows[city];
            time = (time + self.distance(here, city)).max(open);
            if time > close {
                return None;
            }
            here = city;
        }
        Some(time)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TsptwState {
    pub position: FixedBitSet,
    pub earliest: i64,
    pub latest: i64,
    pub must_visit: FixedBitSet,
    pub may_visit: FixedBitSet,
}

#[derive(Debug, Clone)]
pub struct Tsptw {
    instance: TsptwInstance,
    /// Shortest edge entering each city.
    shortest_edge: Vec<i64>,
}

impl Tsptw {
    pub fn new(instance: TsptwInstance) -> Self {
        let n = instance.nb_cities();
        let shortest_edge =
            (0..n).map(|p| (0..n).filter(|&q| q != p).map(|q| instance.distance(q, p)).min().unwrap_or(0)).collect();
        Tsptw { instance, shortest_edge }
    }

    pub fn instance(&self) -> &TsptwInstance {
        &self.instance
    }

    pub fn shortest_edge(&self, city: usize) -> i64 {
        self.shortest_edge[city]
    }

    fn n(&self) -> usize {
        self.instance.nb_cities()
    }

    fn travel(&self, state: &TsptwState, city: usize) -> i64 {
        state.position.ones().map(|p| self.instance.distance(p, city)).min().unwrap_or(i64::MAX / 4)
    }

    fn is_return(&self, variable: usize) -> bool {
        variable + 1 == self.n()
    }

    /// Lower bound on the makespan of any tour going through `state` at
    /// layer `depth`, or `None` when no feasible completion can exist.
    pub fn rough_lower_bound(&self, state: &TsptwState, depth: usize) -> Option<i64> {
        let n = self.n();
        if depth >= n {
            return Some(state.earliest);
        }
        let (_, depot_close) = self.instance.windows[DEPOT];
        let reachable = |p: usize| state.earliest + self.shortest_edge[p] <= self.instance.windows[p].1;

        // not enough reachable optional cities to complete the tour
        let needed = (n - 1 - depth).saturating_sub(state.must_visit.count_ones(..));
        if state.may_visit.ones().filter(|&p| reachable(p)).count() < needed {
            return None;
        }
        // a mandatory city cannot be reached in time
        if state.must_visit.ones().any(|p| !reachable(p)) {
            return None;
        }
        let mandatory: i64 = state.must_visit.ones().map(|p| self.shortest_edge[p]).sum();
        // no time left to come back to the depot
        if state.earliest + mandatory > depot_close {
            return None;
        }
        let bound = if self.is_return(depth) {
            state.earliest + self.travel(state, DEPOT)
        } else {
            let back = state
                .must_visit
                .ones()
                .chain(state.may_visit.ones())
                .map(|p| self.instance.distance(p, DEPOT))
                .min()?;
            state.earliest + mandatory + back
        };
        (bound <= depot_close).then_some(bound)
    }
}

impl Problem for Tsptw {
    type State = TsptwState;

    fn nb_variables(&self) -> usize {
        self.n()
    }

    fn initial_state(&self) -> TsptwState {
        let n = self.n();
        let mut position = FixedBitSet::with_capacity(n);
        position.insert(DEPOT);
        let mut must_visit = FixedBitSet::with_capacity(n);
        must_visit.insert_range(1..);
        TsptwState { position, earliest: 0, latest: 0, must_visit, may_visit: FixedBitSet::with_capacity(n) }
    }

    fn initial_value(&self) -> i64 {
        0
    }

    fn domain(&self, state: &TsptwState, variable: usize) -> Vec<i64> {
        if self.is_return(variable) {
            return vec![DEPOT as i64];
        }
        state.must_visit.union(&state.may_visit).map(|c| c as i64).collect()
    }

    fn full_domain(&self, variable: usize) -> Vec<i64> {
        if self.is_return(variable) {
            vec![DEPOT as i64]
        } else {
            (1..self.n() as i64).collect()
        }
    }

    fn transition(&self, state: &TsptwState, d: Decision) -> Option<TsptwState> {
        let city = usize::try_from(d.value).ok().filter(|&c| c < self.n())?;
        if self.is_return(d.variable) {
            if city != DEPOT || !state.must_visit.is_clear() {
                return None;
            }
        } else if city == DEPOT || !(state.must_visit.contains(city) || state.may_visit.contains(city)) {
            return None;
        }
        let (open, close) = self.instance.windows[city];
        let soonest = state.earliest + self.travel(state, city);
        if soonest > close {
            return None;
        }
        let latest_arrival =
            state.position.ones().map(|p| state.latest + self.instance.distance(p, city)).max().unwrap_or(soonest);
        let earliest = open.max(soonest);
        let latest = close.min(latest_arrival).max(earliest);

        let mut position = FixedBitSet::with_capacity(self.n());
        position.insert(city);
        let mut must_visit = state.must_visit.clone();
        must_visit.set(city, false);
        let mut may_visit = state.may_visit.clone();
        may_visit.set(city, false);
        Some(TsptwState { position, earliest, latest, must_visit, may_visit })
    }

    /// Travel time plus waiting time, negated.
    fn transition_cost(&self, state: &TsptwState, d: Decision) -> i64 {
        let city = d.value as usize;
        let travel = self.travel(state, city);
        let wait = (self.instance.windows[city].0 - state.earliest - travel).max(0);
        -(travel + wait)
    }

    fn fast_bound(&self, state: &TsptwState, depth: usize, _: i64) -> i64 {
        self.rough_lower_bound(state, depth).map_or(MINUS_INFINITY, |lb| -lb)
    }
}

impl Relaxation for Tsptw {
    type State = TsptwState;

    fn merge(&self, states: &[&TsptwState]) -> TsptwState {
        let n = self.n();
        let mut position = FixedBitSet::with_capacity(n);
        let mut seen = FixedBitSet::with_capacity(n);
        let mut must_visit = states.first().map_or_else(|| FixedBitSet::with_capacity(n), |s| s.must_visit.clone());
        let mut earliest = i64::MAX;
        let mut latest = i64::MIN;
        for s in states {
            position.union_with(&s.position);
            seen.union_with(&s.must_visit);
            seen.union_with(&s.may_visit);
            must_visit.intersect_with(&s.must_visit);
            earliest = earliest.min(s.earliest);
            latest = latest.max(s.latest);
        }
        seen.difference_with(&must_visit);
        TsptwState { position, earliest, latest, must_visit, may_visit: seen }
    }

    fn relax_arc(&self, weight: i64, _: &TsptwState, _: &TsptwState) -> i64 {
        weight
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cities(n: usize, members: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        members.iter().for_each(|&c| s.insert(c));
        s
    }

    fn state(n: usize, pos: &[usize], earliest: i64, latest: i64, must: &[usize], may: &[usize]) -> TsptwState {
        TsptwState {
            position: cities(n, pos),
            earliest,
            latest,
            must_visit: cities(n, must),
            may_visit: cities(n, may),
        }
    }

    /// Three cities: distances 2 from the depot, 1 between cities 1 and 2.
    fn three() -> Tsptw {
        Tsptw::new(TsptwInstance {
            distances: vec![vec![0, 2, 4], vec![2, 0, 1], vec![4, 1, 0]],
            windows: vec![(0, 100), (3, 10), (0, 20)],
        })
    }

    #[test]
    fn first_move_waits_for_the_window() {
        let p = three();
        let root = p.initial_state();
        let next = p.transition(&root, Decision::new(0, 1)).unwrap();
        assert_eq!(next, state(3, &[1], 3, 3, &[2], &[]));
        assert_eq!(p.transition_cost(&root, Decision::new(0, 1)), -3);
        // arriving after the opening: no waiting
        assert_eq!(p.transition_cost(&root, Decision::new(0, 2)), -4);
    }

    #[test]
    fn infeasible_moves() {
        let p = three();
        let s = state(3, &[1], 3, 3, &[2], &[]);
        // already visited
        assert_eq!(p.transition(&s, Decision::new(1, 1)), None);
        // window of city 1 closes at 10
        let late = state(3, &[2], 12, 12, &[1], &[]);
        assert_eq!(p.transition(&late, Decision::new(1, 1)), None);
        // the depot only closes the tour
        assert_eq!(p.transition(&s, Decision::new(1, 0)), None);
    }

    #[test]
    fn merged_positions_travel_from_the_closest_one() {
        let p = three();
        let s = state(3, &[1, 2], 3, 4, &[], &[1, 2]);
        assert_eq!(p.transition_cost(&s, Decision::new(2, 0)), -2);
    }

    #[test]
    fn merge_definition() {
        let p = three();
        let a = state(3, &[1], 3, 3, &[2], &[]);
        let b = state(3, &[2], 4, 4, &[1], &[]);
        assert_eq!(p.merge(&[&a, &b]), state(3, &[1, 2], 3, 4, &[], &[1, 2]));
        assert_eq!(p.merge(&[&a]), a);
        let c = state(3, &[1], 5, 6, &[2], &[]);
        assert_eq!(p.merge(&[&a, &c]).must_visit, cities(3, &[2]));
    }

    #[test]
    fn rough_lower_bound_cases() {
        let p = Tsptw::new(TsptwInstance {
            distances: vec![vec![0, 5, 5], vec![5, 0, 3], vec![4, 3, 0]],
            windows: vec![(0, 100), (0, 6), (0, 50)],
        });
        // mandatory city 1 unreachable: 4 + 3 > 6
        assert_eq!(p.rough_lower_bound(&state(3, &[2], 4, 4, &[1], &[]), 1), None);
        // nothing left to visit: earliest + way back
        assert_eq!(p.rough_lower_bound(&state(3, &[2], 6, 6, &[], &[]), 2), Some(10));
        assert_eq!(p.fast_bound(&state(3, &[2], 6, 6, &[], &[]), 2, 0), -10);
        // back to the depot too late
        assert_eq!(p.rough_lower_bound(&state(3, &[2], 97, 97, &[], &[]), 2), None);
        // cities left: earliest + shortest edges + cheapest return
        assert_eq!(p.rough_lower_bound(&state(3, &[1], 2, 2, &[2], &[]), 1), Some(2 + 3 + 4));
        // merged state where no optional city is reachable any more
        assert_eq!(p.rough_lower_bound(&state(3, &[1, 2], 7, 7, &[], &[1]), 1), None);
    }

    #[test]
    fn tour_makespan_waits_and_checks_windows() {
        let p = three();
        assert_eq!(p.instance().tour_makespan(&[1, 2]), Some(8));
        assert_eq!(p.instance().tour_makespan(&[2, 1]), Some(7));
    }
}
