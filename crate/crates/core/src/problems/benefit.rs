//! Merge and arc relaxation for states made of per-variable marginal
//! benefits (maximum cut and MAX-2SAT).

/// Componentwise merge: the smallest magnitude when all inputs agree in
/// sign, zero when they disagree.
pub(crate) fn merge(states: &[&Vec<i64>]) -> Vec<i64> {
    let len = states.first().map_or(0, |s| s.len());
    (0..len)
        .map(|l| {
            let mut all_pos = true;
            let mut all_neg = true;
            let mut min_abs = i64::MAX;
            for s in states {
                let v = s[l];
                all_pos &= v >= 0;
                all_neg &= v <= 0;
                min_abs = min_abs.min(v.abs());
            }
            if all_pos {
                min_abs
            } else if all_neg {
                -min_abs
            } else {
                0
            }
        })
        .collect()
}

/// Adds to `weight` the magnitude lost by `original` when merged.
pub(crate) fn relax_arc(weight: i64, original: &[i64], merged: &[i64]) -> i64 {
    weight + original.iter().zip(merged).map(|(u, m)| u.abs() - m.abs()).sum::<i64>()
}

pub(crate) fn magnitude_from(state: &[i64], depth: usize) -> i64 {
    state.iter().skip(depth).map(|v| v.abs()).sum()
}
