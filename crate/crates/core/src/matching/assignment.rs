//! Exact dense linear assignment by shortest augmenting paths.

use super::{Matching, Method};
use crate::points::{check_pair, DistanceMatrix, PointSet};
use crate::{CostSpec, Error, Result};

/// Minimum-cost perfect assignment of an `n x n` row-major cost matrix.
/// Returns `row_to_col`.
///
/// Rows are inserted one at a time; each insertion runs a Dijkstra-like
/// search over reduced costs `c(i, j) - u(i) - v(j)` and augments along the
/// shortest path, keeping the dual potentials feasible. `O(n^3)` overall.
/// Entries must be finite; they may be negative.
pub fn solve_assignment(n: usize, cost: &[f64]) -> Result<Vec<usize>> {
    if cost.len() != n * n {
        return Err(Error::invalid(format!(
            "cost matrix has {} entries, expected {n} x {n}",
            cost.len()
        )));
    }
    if let Some(pos) = cost.iter().position(|c| !c.is_finite()) {
        return Err(Error::invalid(format!(
            "cost entry ({}, {}) is not finite",
            pos / n,
            pos % n
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // 1-based columns; column 0 is the virtual source.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut min_slack = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];

    for row in 1..=n {
        col_owner[0] = row;
        let mut j0 = 0usize;
        min_slack.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let ui = u[i0];
            let costs = &cost[(i0 - 1) * n..i0 * n];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = costs[j - 1] - ui - v[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            debug_assert!(j1 != 0, "no augmenting column found");
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[col_owner[j] - 1] = j - 1;
    }
    Ok(row_to_col)
}

/// Exact optimal matching under `cost`.
///
/// When some cost is negative (log costs) every entry is shifted by the
/// minimum entry before solving. A uniform shift adds the same constant to
/// every permutation's total, so the argmin is unchanged. Edge costs in the
/// result are the unshifted values.
pub fn optimal_match(x: &PointSet, y: &PointSet, cost: CostSpec) -> Result<Matching> {
    check_pair(x, y)?;
    if x.is_empty() {
        return Err(Error::invalid("optimal matching needs n >= 1"));
    }
    let dist = DistanceMatrix::new(x, y)?;
    let mut entries = dist
        .entries()
        .iter()
        .map(|&d| cost.eval(d))
        .collect::<Result<Vec<f64>>>()?;
    let min = entries.iter().copied().fold(f64::INFINITY, f64::min);
    if min < 0.0 {
        entries.iter_mut().for_each(|c| *c -= min);
    }
    let assignment = solve_assignment(dist.n(), &entries)?;
    let pairs: Vec<(usize, usize)> = assignment.into_iter().enumerate().collect();
    Matching::from_pairs(Method::Optimal, cost, &pairs, x, y)
}
