//! Diagnostics on finished matchings.

use rayon::prelude::*;

use crate::instance::{derive_seed, generate, Instance, InstanceSpec};
use crate::matching::{greedy_match, optimal_match, sorted, Matching};
use crate::numeric::mean_and_stderr;
use crate::points::{Euclidean, Metric, PointSet};
use crate::{CostSpec, Error, Result};

/// Total cost of `m` under `cost`.
pub fn matching_cost(m: &Matching, cost: CostSpec) -> Result<f64> {
    if m.cost == cost {
        return Ok(m.total_cost());
    }
    Ok(m.priced(cost)?.total_cost())
}

/// Circle through `x_i` and `y_j` with the pair as a diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Circle {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// One circle per edge, in edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSet {
    pub circles: Vec<Circle>,
}

fn plane_dim(op: &'static str, dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            op,
            dim,
            required: "d = 1 or d = 2",
        })
    }
}

pub fn mccann_circles(m: &Matching, x: &PointSet, y: &PointSet) -> Result<CircleSet> {
    plane_dim("McCann circles", x.dim())?;
    let circles = m
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (x.point(e.i), y.point(e.j));
            Circle {
                center: a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect(),
                radius: 0.5 * Euclidean.distance(a, b),
            }
        })
        .collect();
    Ok(CircleSet { circles })
}

/// Result of [`noncrossing_check`]: every pair of edges (by position in
/// `Matching::edges`) that crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    pub violations: Vec<(usize, usize)>,
}

impl CrossingReport {
    pub fn is_noncrossing(&self) -> bool {
        self.violations.is_empty()
    }
}

const TANGENCY_TOL: f64 = 1e-12;

/// Two circles properly intersect: neither separated nor nested. Touching
/// circles (within `1e-12`) do not count.
pub fn circles_intersect(a: &Circle, b: &Circle) -> bool {
    let dc = Euclidean.distance(&a.center, &b.center);
    (a.radius - b.radius).abs() + TANGENCY_TOL < dc && dc < a.radius + b.radius - TANGENCY_TOL
}

/// Checks the non-crossing property.
///
/// On the line, two edges cross when their intervals overlap without one
/// containing the other. In the plane, when their McCann circles properly
/// intersect.
pub fn noncrossing_check(m: &Matching, x: &PointSet, y: &PointSet) -> Result<CrossingReport> {
    plane_dim("non-crossing check", x.dim())?;
    let mut violations = Vec::new();
    if x.dim() == 1 {
        let intervals: Vec<(f64, f64)> = m
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (x.point(e.i)[0], y.point(e.j)[0]);
                (a.min(b), a.max(b))
            })
            .collect();
        for (k, &(a, b)) in intervals.iter().enumerate() {
            for (l, &(c, d)) in intervals.iter().enumerate().skip(k + 1) {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    violations.push((k, l));
                }
            }
        }
    } else {
        let circles = mccann_circles(m, x, y)?.circles;
        for (k, a) in circles.iter().enumerate() {
            for (l, b) in circles.iter().enumerate().skip(k + 1) {
                if circles_intersect(a, b) {
                    violations.push((k, l));
                }
            }
        }
    }
    Ok(CrossingReport { violations })
}

/// Per-step agreement between the greedy and the optimal matching:
/// `agreement[k]` is the probability that the pair chosen at greedy step `k`
/// is also an edge of the optimal matching.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementCurve {
    pub agreement: Vec<f64>,
    /// Binomial standard error of each entry.
    pub stderr: Vec<f64>,
    pub trials: usize,
}

impl AgreementCurve {
    pub fn overall_mean(&self) -> f64 {
        self.agreement.iter().sum::<f64>() / self.agreement.len() as f64
    }
}

/// Step-by-step indicator that greedy's pair is also an optimal edge.
pub fn step_agreement(x: &PointSet, y: &PointSet, cost: CostSpec) -> Result<Vec<bool>> {
    let greedy = greedy_match(x, y)?;
    let optimal = optimal_match(x, y, cost)?;
    Ok(greedy
        .edges
        .iter()
        .map(|e| optimal.contains(e.i, e.j))
        .collect())
}

/// Agreement curve over `trials` instances produced by `make(trial_seed)`.
pub fn agreement_curve_with<F>(
    trials: usize,
    seed: u64,
    cost: CostSpec,
    make: F,
) -> Result<AgreementCurve>
where
    F: Fn(u64) -> Result<Instance> + Sync,
{
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if matches!(cost, CostSpec::OddLogPower(_)) {
        return Err(Error::invalid(
            "agreement curves support power and log costs only",
        ));
    }
    let per_trial: Vec<Vec<bool>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let inst = make(derive_seed(seed, t))?;
            step_agreement(&inst.x, &inst.y, cost)
        })
        .collect::<Result<_>>()?;
    let n = per_trial[0].len();
    if per_trial.iter().any(|v| v.len() != n) {
        return Err(Error::invalid(
            "instances in an agreement curve must share n",
        ));
    }
    let (agreement, stderr) = (0..n)
        .map(|k| {
            let hits: Vec<f64> = per_trial
                .iter()
                .map(|v| if v[k] { 1.0 } else { 0.0 })
                .collect();
            let p = hits.iter().sum::<f64>() / trials as f64;
            if trials > 1 {
                (p, mean_and_stderr(&hits).1)
            } else {
                (p, 0.0)
            }
        })
        .unzip();
    Ok(AgreementCurve {
        agreement,
        stderr,
        trials,
    })
}

/// Agreement curve over iid uniform instances on `[0, 1]^d`.
pub fn agreement_curve(
    n: usize,
    d: usize,
    cost: CostSpec,
    trials: usize,
    seed: u64,
) -> Result<AgreementCurve> {
    agreement_curve_with(trials, seed, cost, |s| {
        generate(&InstanceSpec::uniform(n, d, s))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementStats {
    pub median: f64,
    /// Edges longer than `1 / sqrt(n)`.
    pub long_edges: usize,
    /// Edges longer than `ln(n) / sqrt(n)`.
    pub very_long_edges: usize,
}

/// Edge-length summary used to look at the split between the many short
/// edges and the few long ones.
pub fn displacement_stats(m: &Matching, n: usize) -> DisplacementStats {
    let mut d: Vec<f64> = m.edges.iter().map(|e| e.dist).collect();
    d.sort_by(f64::total_cmp);
    let median = match d.len() {
        0 => 0.0,
        len if len % 2 == 1 => d[len / 2],
        len => 0.5 * (d[len / 2 - 1] + d[len / 2]),
    };
    let root = (n.max(1) as f64).sqrt();
    let long = 1.0 / root;
    let very_long = (n.max(1) as f64).ln() / root;
    DisplacementStats {
        median,
        long_edges: d.iter().filter(|&&v| v > long).count(),
        very_long_edges: d.iter().filter(|&&v| v > very_long).count(),
    }
}

/// Number of edges joining the `r`-th smallest `x` to a `y` whose rank
/// differs from `r` by more than `window`. Zero means the matching stays
/// within `window` of the order-statistics pairing.
pub fn order_deviation(m: &Matching, x: &PointSet, y: &PointSet, window: usize) -> Result<usize> {
    let xr = sorted::ranks(x.line_values("order deviation")?);
    let yr = sorted::ranks(y.line_values("order deviation")?);
    Ok(m.edges
        .iter()
        .filter(|e| xr[e.i].abs_diff(yr[e.j]) > window)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{dyck_match, sorted_match};

    fn line(v: &[f64]) -> PointSet {
        PointSet::line(v).unwrap()
    }

    fn explicit(x: &[f64], y: &[f64]) -> Matching {
        // pair x_k with y_k
        let (x, y) = (line(x), line(y));
        let pairs: Vec<_> = (0..x.len()).map(|k| (k, k)).collect();
        Matching::from_pairs(crate::Method::Sorted, CostSpec::Power(1.0), &pairs, &x, &y).unwrap()
    }

    #[test]
    fn cost_examples() {
        let x = line(&[0.3, 0.7]);
        let id = sorted_match(&x, &x).unwrap();
        assert_eq!(matching_cost(&id, CostSpec::Power(0.2)).unwrap(), 0.0);

        let fx = line(&[6.0, 6.7, 7.0, 8.0]);
        let fy = line(&[6.3, 7.5, 9.0, 10.0]);
        let dyck = dyck_match(&fx, &fy).unwrap();
        assert!((matching_cost(&dyck, CostSpec::Power(1.0)).unwrap() - 5.1).abs() < 1e-12);

        let g = greedy_match(&line(&[0.0, 0.2, 0.9]), &line(&[0.11, 0.5, 1.0])).unwrap();
        let c = matching_cost(&g, CostSpec::Power(0.5)).unwrap();
        assert!((c - (0.09f64.sqrt() + 0.1f64.sqrt() + 0.5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn greedy_cost_is_sum_of_step_minima_powers() {
        let inst = generate(&InstanceSpec::uniform(200, 1, 8)).unwrap();
        let g = greedy_match(&inst.x, &inst.y).unwrap();
        let minima = g.step_minima.clone().unwrap();
        for p in [0.1, 0.5, 0.9] {
            let powered: Vec<f64> = minima.iter().map(|c| c.powf(p)).collect();
            assert_eq!(
                matching_cost(&g, CostSpec::Power(p)).unwrap(),
                crate::numeric::pairwise_sum(&powered)
            );
        }
    }

    #[test]
    fn crossing_intervals() {
        let m = explicit(&[0.0, 0.5], &[1.0, 1.5]);
        let r = noncrossing_check(&m, &line(&[0.0, 0.5]), &line(&[1.0, 1.5])).unwrap();
        assert_eq!(r.violations, vec![(0, 1)]);

        let m = explicit(&[0.0, 0.2], &[1.0, 0.4]);
        let r = noncrossing_check(&m, &line(&[0.0, 0.2]), &line(&[1.0, 0.4])).unwrap();
        assert!(r.is_noncrossing());
    }

    #[test]
    fn touching_intervals_do_not_cross() {
        let m = explicit(&[0.0, 0.5], &[0.5, 1.0]);
        assert!(
            noncrossing_check(&m, &line(&[0.0, 0.5]), &line(&[0.5, 1.0]))
                .unwrap()
                .is_noncrossing()
        );
    }

    #[test]
    fn circle_examples() {
        let m = explicit(&[0.0], &[1.0]);
        let c = mccann_circles(&m, &line(&[0.0]), &line(&[1.0])).unwrap();
        assert_eq!(
            c.circles,
            vec![Circle {
                center: vec![0.5],
                radius: 0.5
            }]
        );

        let x = PointSet::new(2, &[vec![0.0, 0.0]]).unwrap();
        let y = PointSet::new(2, &[vec![0.0, 1.0]]).unwrap();
        let m = optimal_match(&x, &y, CostSpec::Power(0.5)).unwrap();
        let c = mccann_circles(&m, &x, &y).unwrap();
        assert_eq!(
            c.circles,
            vec![Circle {
                center: vec![0.0, 0.5],
                radius: 0.5
            }]
        );

        let fx = line(&[6.0, 6.7, 7.0, 8.0]);
        let fy = line(&[6.3, 7.5, 9.0, 10.0]);
        let dyck = dyck_match(&fx, &fy).unwrap();
        let wide = mccann_circles(&dyck, &fx, &fy).unwrap().circles[1].clone();
        assert!((wide.center[0] - 8.35).abs() < 1e-12 && (wide.radius - 1.65).abs() < 1e-12);
    }

    #[test]
    fn three_dimensions_unsupported() {
        let p = PointSet::new(3, &[vec![0.0, 0.0, 0.0]]).unwrap();
        let m = greedy_match(&p, &p).unwrap();
        assert!(matches!(
            mccann_circles(&m, &p, &p),
            Err(Error::UnsupportedDimension { dim: 3, .. })
        ));
        assert!(matches!(
            noncrossing_check(&m, &p, &p),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn planar_greedy_can_cross() {
        // Short edge straddling the boundary of a long edge's circle. Greedy
        // takes the unit pair first and the long one is forced.
        let x = PointSet::new(2, &[vec![0.0, 0.0], vec![-9.8, 10.3]]).unwrap();
        let y = PointSet::new(2, &[vec![1.0, 0.0], vec![10.8, 10.3]]).unwrap();
        let g = greedy_match(&x, &y).unwrap();
        assert_eq!(g.perm, vec![0, 1]);
        assert_eq!(
            noncrossing_check(&g, &x, &y).unwrap().violations,
            vec![(0, 1)]
        );
    }

    #[test]
    fn greedy_is_noncrossing_on_the_line() {
        for seed in 0..100 {
            let inst = generate(&InstanceSpec::uniform(40, 1, seed)).unwrap();
            let g = greedy_match(&inst.x, &inst.y).unwrap();
            assert!(noncrossing_check(&g, &inst.x, &inst.y)
                .unwrap()
                .is_noncrossing());
        }
    }

    #[test]
    fn agreement_on_two_point_example() {
        let agree =
            step_agreement(&line(&[0.0, 0.6]), &line(&[0.5, 1.1]), CostSpec::Power(0.5)).unwrap();
        assert_eq!(agree, vec![true, true]);
    }

    #[test]
    fn agreement_is_total_when_sets_coincide() {
        let curve = agreement_curve_with(5, 0, CostSpec::Power(0.5), |s| {
            let inst = generate(&InstanceSpec::uniform(12, 1, s))?;
            Instance::explicit(inst.x.clone(), inst.x)
        })
        .unwrap();
        assert!(curve.agreement.iter().all(|&a| a == 1.0));
    }

    #[test]
    fn agreement_values_are_probabilities() {
        let curve = agreement_curve(15, 1, CostSpec::LogDistance, 10, 4).unwrap();
        assert_eq!(curve.agreement.len(), 15);
        assert!(curve.agreement.iter().all(|a| (0.0..=1.0).contains(a)));
        assert!(agreement_curve(15, 1, CostSpec::OddLogPower(1), 1, 0).is_err());
        assert!(agreement_curve(15, 1, CostSpec::LogDistance, 0, 0).is_err());
    }

    #[test]
    fn displacement_examples() {
        let x = line(&[0.2, 0.4]);
        let s = displacement_stats(&sorted_match(&x, &x).unwrap(), 2);
        assert_eq!((s.median, s.long_edges, s.very_long_edges), (0.0, 0, 0));

        let inst = generate(&InstanceSpec::alternating(4)).unwrap();
        let g = greedy_match(&inst.x, &inst.y).unwrap();
        let s = displacement_stats(&g, 4);
        assert_eq!((s.median, s.long_edges, s.very_long_edges), (0.125, 0, 0));
    }

    #[test]
    fn order_deviation_examples() {
        let inst = generate(&InstanceSpec::uniform(30, 1, 2)).unwrap();
        let s = sorted_match(&inst.x, &inst.y).unwrap();
        assert_eq!(order_deviation(&s, &inst.x, &inst.y, 0).unwrap(), 0);

        let (x, y) = (line(&[0.1, 0.2]), line(&[0.3, 0.4]));
        let dyck = dyck_match(&x, &y).unwrap();
        assert_eq!(order_deviation(&dyck, &x, &y, 0).unwrap(), 2);
        assert_eq!(order_deviation(&dyck, &x, &y, 1).unwrap(), 0);

        let alt = generate(&InstanceSpec::alternating(8)).unwrap();
        let g = greedy_match(&alt.x, &alt.y).unwrap();
        assert_eq!(order_deviation(&g, &alt.x, &alt.y, 0).unwrap(), 0);

        let p = PointSet::new(2, &[vec![0.0, 0.0]]).unwrap();
        let m = greedy_match(&p, &p).unwrap();
        assert!(order_deviation(&m, &p, &p, 0).is_err());
    }
}
