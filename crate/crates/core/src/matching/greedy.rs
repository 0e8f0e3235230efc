use super::{Matching, Method};
use crate::points::{check_pair, DistanceMatrix, PointSet};
use crate::{CostSpec, Error, Result};

/// Greedy selection order on a distance matrix: repeatedly take the closest
/// surviving pair, breaking distance ties by the smallest `(i, j)`.
///
/// All `n^2` pairs are sorted once and swept, skipping pairs with a removed
/// endpoint, so the cost is `O(n^2 log n)` time and `O(n^2)` memory.
pub fn greedy_order(dist: &DistanceMatrix) -> Vec<(usize, usize)> {
    let n = dist.n();
    let mut pairs: Vec<(f64, u32, u32)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for (j, &d) in dist.row(i).iter().enumerate() {
            pairs.push((d, i as u32, j as u32));
        }
    }
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut x_used = vec![false; n];
    let mut y_used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for (_, i, j) in pairs {
        let (i, j) = (i as usize, j as usize);
        if x_used[i] || y_used[j] {
            continue;
        }
        x_used[i] = true;
        y_used[j] = true;
        order.push((i, j));
        if order.len() == n {
            break;
        }
    }
    order
}

/// Greedy nearest-pair matching.
///
/// The permutation depends only on distances, so it is the same for every
/// strictly increasing cost. Edge costs are the distances (`pow:1`); use
/// [`Matching::priced`] to attach another cost.
pub fn greedy_match(x: &PointSet, y: &PointSet) -> Result<Matching> {
    check_pair(x, y)?;
    if x.is_empty() {
        return Err(Error::invalid("greedy matching needs n >= 1"));
    }
    let dist = DistanceMatrix::new(x, y)?;
    let order = greedy_order(&dist);
    let mut m = Matching::from_pairs(Method::Greedy, CostSpec::Power(1.0), &order, x, y)?;
    m.step_minima = Some(m.edges.iter().map(|e| e.dist).collect());
    Ok(m)
}
