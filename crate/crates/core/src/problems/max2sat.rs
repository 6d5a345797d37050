//! Weighted MAX-2SAT.
//!
//! The model mirrors the maximum cut one: variables are set to false (value
//! 0) or true (value 1) in order, and component `l` of a state is the net
//! benefit of eventually setting the undecided variable `l` to true, as
//! dictated by the clauses shared with the decided variables. Tautological
//! clauses are always satisfied and make up the root value.

use crate::io::Wcnf;
use crate::model::{Decision, Problem, Relaxation};
use crate::problems::benefit;

pub const FALSE: i64 = 0;
pub const TRUE: i64 = 1;

#[derive(Debug, Clone)]
pub struct Max2Sat {
    n: usize,
    /// `pairs[i * n + j][a][b]`: weight of the clause made of the literal of
    /// `i` with polarity `a` and the literal of `j` with polarity `b`
    /// (polarity 1 is the positive literal).
    pairs: Vec<[[i64; 2]; 2]>,
    /// `units[i][a]`: weight of the unit clause on the literal of polarity `a`.
    units: Vec<[i64; 2]>,
    tautologies: Vec<i64>,
    root_value: i64,
    /// `undecided_best[k]`: best possible value of the clauses that only
    /// involve variables `>= k`.
    undecided_best: Vec<i64>,
    /// `tautology_prefix[k]`: weight of the tautologies on variables `< k`.
    tautology_prefix: Vec<i64>,
}

impl Max2Sat {
    pub fn new(formula: &Wcnf) -> Self {
        let n = formula.nb_variables();
        let mut pairs = vec![[[0; 2]; 2]; n * n];
        let mut units = vec![[0; 2]; n];
        let mut tautologies = vec![0; n];
        for clause in formula.clauses() {
            let (a, b) = clause.literals();
            let (i, pi) = (a.unsigned_abs() as usize - 1, (a > 0) as usize);
            let (j, pj) = (b.unsigned_abs() as usize - 1, (b > 0) as usize);
            if i == j {
                if pi == pj {
                    units[i][pi] += clause.weight;
                } else {
                    tautologies[i] += clause.weight;
                }
            } else {
                pairs[i * n + j][pi][pj] += clause.weight;
                pairs[j * n + i][pj][pi] += clause.weight;
            }
        }
        let root_value = tautologies.iter().sum();
        let tautology_prefix = (0..=n).map(|k| tautologies[..k].iter().sum()).collect();

        let mut undecided_best = vec![0; n + 1];
        for k in (0..n).rev() {
            let mut best = tautologies[k] + units[k][0].max(units[k][1]);
            for j in k + 1..n {
                let w = &pairs[k * n + j];
                let tt = w[1][1] + w[1][0] + w[0][1];
                let tf = w[1][1] + w[1][0] + w[0][0];
                let ft = w[0][1] + w[0][0] + w[1][1];
                let ff = w[0][1] + w[0][0] + w[1][0];
                best += tt.max(tf).max(ft).max(ff);
            }
            undecided_best[k] = undecided_best[k + 1] + best;
        }

        Max2Sat { n, pairs, units, tautologies, root_value, undecided_best, tautology_prefix }
    }

    fn pair(&self, i: usize, j: usize) -> &[[i64; 2]; 2] {
        &self.pairs[i * self.n + j]
    }

    /// Total weight of the clauses satisfied by `values` (0 = false).
    #[allow(clippy::needless_range_loop)]
    pub fn satisfied_weight(&self, values: &[i64]) -> i64 {
        let mut total: i64 = self.tautologies.iter().sum();
        for i in 0..self.n {
            let vi = values[i] as usize;
            total += self.units[i][vi];
            for j in i + 1..self.n {
                let vj = values[j] as usize;
                let w = self.pair(i, j);
                for (a, row) in w.iter().enumerate() {
                    for (b, weight) in row.iter().enumerate() {
                        if a == vi || b == vj {
                            total += weight;
                        }
                    }
                }
            }
        }
        total
    }
}

impl Problem for Max2Sat {
    type State = Vec<i64>;

    fn nb_variables(&self) -> usize {
        self.n
    }

    fn initial_state(&self) -> Vec<i64> {
        vec![0; self.n]
    }

    fn initial_value(&self) -> i64 {
        self.root_value
    }

    fn domain(&self, _: &Vec<i64>, _: usize) -> Vec<i64> {
        vec![FALSE, TRUE]
    }

    fn full_domain(&self, _: usize) -> Vec<i64> {
        vec![FALSE, TRUE]
    }

    fn transition(&self, state: &Vec<i64>, d: Decision) -> Option<Vec<i64>> {
        let k = d.variable;
        // clauses still open are those holding the literal of k made false
        let open = (1 - d.value) as usize;
        let mut next = state.clone();
        next[k] = 0;
        for (l, s) in next.iter_mut().enumerate().skip(k + 1) {
            let w = self.pair(k, l);
            *s += w[open][1] - w[open][0];
        }
        Some(next)
    }

    fn transition_cost(&self, state: &Vec<i64>, d: Decision) -> i64 {
        let k = d.variable;
        let chosen = d.value as usize;
        let open = 1 - chosen;
        let own = if d.value == TRUE { state[k].max(0) } else { (-state[k]).max(0) };
        let mut cost = own + self.units[k][chosen];
        for (l, &s) in state.iter().enumerate().skip(k + 1) {
            let w = self.pair(k, l);
            let satisfied = w[chosen][0] + w[chosen][1];
            let if_true = s.max(0) + w[open][1];
            let if_false = (-s).max(0) + w[open][0];
            cost += satisfied + if_true.min(if_false);
        }
        cost
    }

    fn fast_bound(&self, state: &Vec<i64>, depth: usize, value_top: i64) -> i64 {
        value_top + benefit::magnitude_from(state, depth) + self.undecided_best[depth] + self.tautology_prefix[depth]
            - self.root_value
    }
}

impl Relaxation for Max2Sat {
    type State = Vec<i64>;

    fn merge(&self, states: &[&Vec<i64>]) -> Vec<i64> {
        benefit::merge(states)
    }

    fn relax_arc(&self, weight: i64, original: &Vec<i64>, merged: &Vec<i64>) -> i64 {
        benefit::relax_arc(weight, original, merged)
    }
}
