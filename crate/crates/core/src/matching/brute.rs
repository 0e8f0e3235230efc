use super::{Matching, Method};
use crate::points::{check_pair, DistanceMatrix, PointSet};
use crate::{CostSpec, Error, Result};

pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Advances `perm` to the next permutation in lexicographic order. Returns
/// false (leaving `perm` sorted ascending) after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Enumerates all `n!` permutations in lexicographic order and returns the
/// first one minimizing `score`, with its score.
pub fn brute_force_by<K, F>(n: usize, mut score: F) -> (Vec<usize>, K)
where
    K: PartialOrd,
    F: FnMut(&[usize]) -> K,
{
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_perm = perm.clone();
    let mut best = score(&perm);
    while next_permutation(&mut perm) {
        let s = score(&perm);
        if s < best {
            best = s;
            best_perm.copy_from_slice(&perm);
        }
    }
    (best_perm, best)
}

/// Like [`brute_force_by`], for objectives that are only comparable
/// pairwise: `better(candidate, incumbent)` says whether the candidate is
/// strictly better.
pub fn brute_force_cmp<F>(n: usize, mut better: F) -> Vec<usize>
where
    F: FnMut(&[usize], &[usize]) -> bool,
{
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = perm.clone();
    while next_permutation(&mut perm) {
        if better(&perm, &best) {
            best.copy_from_slice(&perm);
        }
    }
    best
}

/// Exhaustive optimal matching for `n <= 9`; ties go to the
/// lexicographically smallest permutation.
pub fn brute_force_match(x: &PointSet, y: &PointSet, cost: CostSpec) -> Result<Matching> {
    check_pair(x, y)?;
    let n = x.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::InstanceTooLarge {
            op: "brute force matching",
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let dist = DistanceMatrix::new(x, y)?;
    let costs = dist
        .entries()
        .iter()
        .map(|&d| cost.eval(d))
        .collect::<Result<Vec<f64>>>()?;
    let (perm, _) = brute_force_by(n, |p| {
        p.iter()
            .enumerate()
            .map(|(i, &j)| costs[i * n + j])
            .sum::<f64>()
    });
    let pairs: Vec<(usize, usize)> = perm.into_iter().enumerate().collect();
    Matching::from_pairs(Method::BruteForce, cost, &pairs, x, y)
}
