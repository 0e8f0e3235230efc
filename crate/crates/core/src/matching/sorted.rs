use super::{optimal_match, Matching, Method};
use crate::points::{check_pair, PointSet};
use crate::{CostSpec, Result};

/// Indices of `values` in increasing order (ties by index).
pub(crate) fn argsort(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx
}

/// Rank of every element of `values` (0 = smallest, ties by index).
pub(crate) fn ranks(values: &[f64]) -> Vec<usize> {
    let mut r = vec![0; values.len()];
    for (rank, i) in argsort(values).into_iter().enumerate() {
        r[i] = rank;
    }
    r
}

/// Order-statistics matching on the line: the k-th smallest `x` goes to the
/// k-th smallest `y`. Optimal for every convex cost, in particular `W1`.
pub fn sorted_match(x: &PointSet, y: &PointSet) -> Result<Matching> {
    check_pair(x, y)?;
    let xs = x.line_values("sorted matching")?;
    let ys = y.line_values("sorted matching")?;
    let mut pairs: Vec<(usize, usize)> = argsort(xs).into_iter().zip(argsort(ys)).collect();
    pairs.sort_unstable();
    Matching::from_pairs(Method::Sorted, CostSpec::Power(1.0), &pairs, x, y)
}

/// Wasserstein-1 distance between two equal-size point sets: the minimum
/// total distance over all perfect matchings.
pub fn w1(x: &PointSet, y: &PointSet) -> Result<f64> {
    check_pair(x, y)?;
    if x.is_empty() {
        return Ok(0.0);
    }
    if x.dim() == 1 {
        Ok(sorted_match(x, y)?.total_distance())
    } else {
        Ok(optimal_match(x, y, CostSpec::Power(1.0))?.total_cost())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{brute_force_match, dyck_match};
    use crate::Error;

    fn line(v: &[f64]) -> PointSet {
        PointSet::line(v).unwrap()
    }

    #[test]
    fn order_statistics_pairing() {
        let m = sorted_match(&line(&[0.9, 0.1]), &line(&[0.2, 0.8])).unwrap();
        assert_eq!(m.perm, vec![1, 0]);
        let m = sorted_match(&line(&[0.0, 0.5]), &line(&[0.0, 0.5])).unwrap();
        assert_eq!(m.perm, vec![0, 1]);
        assert_eq!(m.total_cost(), 0.0);
    }

    #[test]
    fn figure_configuration_matches_dyck_distance() {
        let x = line(&[6.0, 6.7, 7.0, 8.0]);
        let y = line(&[6.3, 7.5, 9.0, 10.0]);
        let sorted = sorted_match(&x, &y).unwrap().total_distance();
        let dyck = dyck_match(&x, &y).unwrap().total_distance();
        // 0.3 + 0.8 + 2.0 + 2.0 and 0.3 + 0.5 + 1.0 + 3.3
        assert!((sorted - 5.1).abs() < 1e-12);
        assert!((dyck - 5.1).abs() < 1e-12);
    }

    #[test]
    fn w1_examples() {
        assert_eq!(w1(&line(&[0.0]), &line(&[1.0])).unwrap(), 1.0);
        let alt = w1(
            &line(&[0.0, 0.25, 0.5, 0.75]),
            &line(&[0.125, 0.375, 0.625, 0.875]),
        )
        .unwrap();
        assert!((alt - 0.5).abs() < 1e-15);
        assert!((w1(&line(&[0.0, 0.6]), &line(&[0.5, 1.1])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w1_in_two_dimensions_uses_assignment() {
        let x = PointSet::new(2, &[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let y = PointSet::new(2, &[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!((w1(&x, &y).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sorted_minimizes_distance_against_brute_force() {
        let mut rng = crate::instance::SplitMix64::new(5);
        for n in 1..=7 {
            for _ in 0..10 {
                let x = line(&(0..n).map(|_| rng.next_f64()).collect::<Vec<_>>());
                let y = line(&(0..n).map(|_| rng.next_f64()).collect::<Vec<_>>());
                let s = sorted_match(&x, &y).unwrap().total_distance();
                let b = brute_force_match(&x, &y, CostSpec::Power(1.0))
                    .unwrap()
                    .total_cost();
                assert!((s - b).abs() <= 1e-12, "n={n}: {s} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_higher_dimension() {
        let p = PointSet::new(2, &[vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            sorted_match(&p, &p),
            Err(Error::UnsupportedDimension { .. })
        ));
    }
}
