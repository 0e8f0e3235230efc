//! Numerical checks of the inequalities known for greedy and optimal
//! matchings under concave costs.
//!
//! Every check returns [`BoundReport`]s holding both sides of the
//! inequality, so failures can be inspected rather than just counted.

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::cost::odd_log_magnitude;
use crate::instance::{derive_seed, generate, InstanceSpec, SplitMix64};
use crate::matching::{brute_force_cmp, greedy_match, optimal_match, w1, Matching};
use crate::numeric::{mean_and_stderr, unit_ball_volume};
use crate::points::{check_pair, DistanceMatrix, PointSet};
use crate::{CostSpec, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundContext {
    pub n: usize,
    pub d: usize,
    pub p: Option<f64>,
    pub seed: Option<u64>,
    /// Greedy step (1-based) for per-step inequalities.
    pub step: Option<usize>,
}

/// `lhs <= rhs`, evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub passed: bool,
    pub context: BoundContext,
}

impl BoundReport {
    /// Passes iff `lhs <= rhs + 1e-9 * max(1, |rhs|)`.
    pub fn new(name: &'static str, lhs: f64, rhs: f64, context: BoundContext) -> Self {
        let passed = lhs <= rhs + 1e-9 * rhs.abs().max(1.0);
        Self {
            name,
            lhs,
            rhs,
            slack: rhs - lhs,
            passed,
            context,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.context.seed = Some(seed);
        self
    }
}

fn check_open_unit(p: f64, what: &str) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{what}: p must lie in (0, 1), got {p}"
        )))
    }
}

/// Finite-n constant of the greedy upper bound,
/// `B(n, p) = (n + 1)^p * sum_{k=1..n} k^(-2p)`, so that
/// `Greedy_p(X, Y) <= B(n, p) * W1(X, Y)^p` for any metric space.
pub fn theorem1_bound(n: usize, p: f64) -> Result<f64> {
    check_open_unit(p, "greedy bound")?;
    if n == 0 {
        return Err(Error::invalid("greedy bound: n must be at least 1"));
    }
    // smallest terms first
    let sum: f64 = (1..=n).rev().map(|k| (k as f64).powf(-2.0 * p)).sum();
    Ok((n as f64 + 1.0).powf(p) * sum)
}

/// Greedy cost at `p` against `B(n, p) * W1^p`, from a precomputed greedy
/// matching and `W1`.
pub fn theorem1_report(greedy: &Matching, w1: f64, p: f64, d: usize) -> Result<BoundReport> {
    let n = greedy.n();
    let lhs = greedy.priced(CostSpec::power(p)?)?.total_cost();
    let rhs = theorem1_bound(n, p)? * w1.powf(p);
    Ok(BoundReport::new(
        "greedy_bound",
        lhs,
        rhs,
        BoundContext {
            n,
            d,
            p: Some(p),
            ..Default::default()
        },
    ))
}

pub fn theorem1_check(x: &PointSet, y: &PointSet, p: f64) -> Result<BoundReport> {
    let g = greedy_match(x, y)?;
    theorem1_report(&g, w1(x, y)?, p, x.dim())
}

/// `W_p^p(X, Y) <= W1(X, Y)^p * n^(1 - p)` (Hoelder).
pub fn holder_bound_check(x: &PointSet, y: &PointSet, p: f64) -> Result<BoundReport> {
    check_open_unit(p, "Hoelder bound")?;
    let n = x.len();
    let lhs = optimal_match(x, y, CostSpec::Power(p))?.total_cost();
    let rhs = w1(x, y)?.powf(p) * (n as f64).powf(1.0 - p);
    Ok(BoundReport::new(
        "holder",
        lhs,
        rhs,
        BoundContext {
            n,
            d: x.dim(),
            p: Some(p),
            ..Default::default()
        },
    ))
}

pub const RECURSION_MAX_N: usize = 200;

/// Replays the greedy removal sequence and checks, at every step `k`
/// (with `X_k`, `Y_k` the `n - k + 1` surviving points and `c_k` the
/// distance matched at step `k`):
///
/// - `w1_growth`: `W1(X_{k+1}, Y_{k+1}) <= W1(X_k, Y_k) + c_k`
/// - `pigeonhole`: `c_k <= W1(X_k, Y_k) / (n - k + 1)`
/// - `w1_product`: `W1(X_k, Y_k) <= (n + 1) / (n - k + 2) * W1(X, Y)`
/// - `step_bound`: `c_k <= (n + 1) / (n - k + 1)^2 * W1(X, Y)`
///
/// Needs one exact `W1` per step, hence the size limit.
pub fn greedy_recursion_check(x: &PointSet, y: &PointSet) -> Result<Vec<BoundReport>> {
    check_pair(x, y)?;
    let n = x.len();
    if n > RECURSION_MAX_N {
        return Err(Error::InstanceTooLarge {
            op: "greedy recursion check",
            n,
            max: RECURSION_MAX_N,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let g = greedy_match(x, y)?;
    let mut alive_x: Vec<usize> = (0..n).collect();
    let mut alive_y: Vec<usize> = (0..n).collect();
    let mut w1_k = w1(x, y)?;
    let w1_full = w1_k;
    let nf = n as f64;
    let mut reports = Vec::with_capacity(4 * n);

    for (idx, e) in g.edges.iter().enumerate() {
        let k = idx + 1;
        let c_k = e.dist;
        let ctx = BoundContext {
            n,
            d: x.dim(),
            step: Some(k),
            ..Default::default()
        };
        let remaining = (n - k + 1) as f64;

        alive_x.retain(|&i| i != e.i);
        alive_y.retain(|&j| j != e.j);
        let w1_next = if alive_x.is_empty() {
            0.0
        } else {
            w1(&x.select(&alive_x), &y.select(&alive_y))?
        };

        reports.push(BoundReport::new("w1_growth", w1_next, w1_k + c_k, ctx));
        reports.push(BoundReport::new("pigeonhole", c_k, w1_k / remaining, ctx));
        reports.push(BoundReport::new(
            "w1_product",
            w1_k,
            (nf + 1.0) / (remaining + 1.0) * w1_full,
            ctx,
        ));
        reports.push(BoundReport::new(
            "step_bound",
            c_k,
            (nf + 1.0) / (remaining * remaining) * w1_full,
            ctx,
        ));
        w1_k = w1_next;
    }
    Ok(reports)
}

fn check_beta_range(p: f64, d: usize) -> Result<()> {
    if d == 0 || !(p > 0.0 && p < d as f64 / 2.0) {
        return Err(Error::invalid(format!(
            "need 0 < p < d/2, got p = {p}, d = {d}"
        )));
    }
    Ok(())
}

/// Lower bound `omega_d^(-p/d) * Gamma(1 + p/d)` on the limit constant of
/// `n^(p/d - 1) W_p^p` for iid uniform points.
pub fn beta_lower_bound(p: f64, d: usize) -> Result<f64> {
    check_beta_range(p, d)?;
    let q = p / d as f64;
    Ok(unit_ball_volume(d).powf(-q) * gamma(1.0 + q))
}

/// Two-sided bracket for the one-dimensional constant:
/// `2^-p Gamma(1 + p) <= beta_1(p) <= 2^p / ((1 - 2p) Gamma(1 - p))`.
pub fn corollary3_interval(p: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::invalid(format!(
            "bracket needs 0 < p < 1/2, got {p}"
        )));
    }
    let low = 2f64.powf(-p) * gamma(1.0 + p);
    let high = 2f64.powf(p) / ((1.0 - 2.0 * p) * gamma(1.0 - p));
    Ok((low, high))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaEstimate {
    pub p: f64,
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub stderr: f64,
}

/// Monte-Carlo mean of `n^(p/d - 1) * W_p^p(X, Y)` over iid uniform
/// instances on the unit cube. Trial `t` uses `derive_seed(seed, t)`.
pub fn beta_estimate(p: f64, d: usize, n: usize, trials: usize, seed: u64) -> Result<BetaEstimate> {
    check_beta_range(p, d)?;
    let cost = CostSpec::power(p)?;
    if n < 2 {
        return Err(Error::invalid("beta estimate needs n >= 2"));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let scale = (n as f64).powf(p / d as f64 - 1.0);
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let inst = generate(&InstanceSpec::uniform(n, d, derive_seed(seed, t)))?;
            Ok(scale * optimal_match(&inst.x, &inst.y, cost)?.total_cost())
        })
        .collect::<Result<_>>()?;
    let (mean, stderr) = mean_and_stderr(&samples);
    Ok(BetaEstimate {
        p,
        d,
        n,
        trials,
        mean,
        stderr,
    })
}

/// `P(min_i |Y - X_i| >= eps) = (1 - omega_d eps^d)^n` for `n` iid uniform
/// points `X_i` and `Y` at least `eps` away from the cube boundary. Zero when
/// the ball volume exceeds one.
pub fn nearest_neighbor_tail(n: usize, d: usize, eps: f64) -> f64 {
    let vol = unit_ball_volume(d) * eps.powi(d as i32);
    if vol > 1.0 {
        return 0.0;
    }
    (1.0 - vol).powi(n as i32)
}

/// Empirical version of [`nearest_neighbor_tail`]: `Y` uniform on
/// `[eps, 1 - eps]^d`, `X_1..X_n` uniform on `[0, 1]^d`. Returns the hit
/// frequency and its binomial standard error.
pub fn empirical_nearest_neighbor_tail(
    n: usize,
    d: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if !(eps > 0.0 && eps < 0.5) || samples == 0 || d == 0 {
        return Err(Error::invalid(
            "need 0 < eps < 1/2, samples >= 1 and d >= 1",
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut y = vec![0.0; d];
    let mut hits = 0usize;
    for _ in 0..samples {
        for c in y.iter_mut() {
            *c = rng.uniform(eps, 1.0 - eps);
        }
        let mut far = true;
        for _ in 0..n {
            let mut sq = 0.0;
            for c in &y {
                let t = rng.next_f64() - c;
                sq += t * t;
            }
            // keep drawing so every sample consumes the same stream length
            far &= sq >= eps * eps;
        }
        hits += far as usize;
    }
    let f = hits as f64 / samples as f64;
    Ok((f, (f * (1.0 - f) / samples as f64).sqrt()))
}

pub const PROP3_MAX_N: usize = 7;
pub const PROP3_DEFAULT_K_MAX: u32 = 200;

fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + values.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// Brute-force minimizer of `sum_i (ln d(x_i, y_pi(i)))^(2k+1)`.
///
/// All distances are in `(0, 1)`, so every term is negative and minimizing
/// the objective means maximizing `sum_i exp(m_i)` with per-edge magnitudes
/// `m_i = (2k+1) ln|ln d_i|`. Two permutations are compared on the edges
/// where they differ only, through log-sum-exp of those magnitudes: shared
/// edges cancel exactly, and the comparison stays finite and meaningful
/// for any `k`, even when one edge dominates by hundreds of orders of
/// magnitude.
pub fn odd_log_argmin(dist: &DistanceMatrix, k: u32) -> Result<Vec<usize>> {
    let n = dist.n();
    let mags = dist
        .entries()
        .iter()
        .map(|&d| odd_log_magnitude(d, k))
        .collect::<Result<Vec<f64>>>()?;
    let mut only_cand = Vec::with_capacity(n);
    let mut only_best = Vec::with_capacity(n);
    Ok(brute_force_cmp(n, |cand, best| {
        only_cand.clear();
        only_best.clear();
        for i in 0..n {
            if cand[i] != best[i] {
                only_cand.push(mags[i * n + cand[i]]);
                only_best.push(mags[i * n + best[i]]);
            }
        }
        log_sum_exp(&only_cand) > log_sum_exp(&only_best)
    }))
}

/// Smallest `K <= k_max` such that for every `k` in `K..=k_max` the
/// minimizer of the odd-log-power objective is the greedy matching, or
/// `None` when they still differ at `k_max`.
pub fn prop3_extreme_check(x: &PointSet, y: &PointSet, k_max: u32) -> Result<Option<u32>> {
    check_pair(x, y)?;
    let n = x.len();
    if n > PROP3_MAX_N {
        return Err(Error::InstanceTooLarge {
            op: "extreme cost check",
            n,
            max: PROP3_MAX_N,
        });
    }
    let dist = DistanceMatrix::new(x, y)?;
    if let Some(&d) = dist.entries().iter().find(|&&d| !(d > 0.0 && d < 1.0)) {
        return Err(Error::domain(format!(
            "extreme cost check needs distances in (0, 1), found {d}"
        )));
    }
    let mut sorted = dist.entries().to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(
            "pairwise distances must be unique".into(),
        ));
    }
    let greedy = greedy_match(x, y)?.perm;
    let mut stable_from = None;
    for k in (0..=k_max).rev() {
        if odd_log_argmin(&dist, k)? != greedy {
            break;
        }
        stable_from = Some(k);
    }
    Ok(stable_from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{brute_force_by, next_permutation};

    fn line(v: &[f64]) -> PointSet {
        PointSet::line(v).unwrap()
    }

    #[test]
    fn bound_constant_examples() {
        for p in [0.1, 0.5, 0.9] {
            assert!((theorem1_bound(1, p).unwrap() - 2f64.powf(p)).abs() < 1e-15);
        }
        assert!((theorem1_bound(3, 0.5).unwrap() - 2.0 * 11.0 / 6.0).abs() < 1e-14);
        assert!(theorem1_bound(3, 1.0).is_err());
        assert!(theorem1_bound(3, 0.0).is_err());
    }

    #[test]
    fn bound_constant_growth_rate() {
        // B(n, 1/4) / n^(3/4) -> 1 / (1 - 2p) = 2 from below
        let r3 = theorem1_bound(1000, 0.25).unwrap() / 1000f64.powf(0.75);
        let r4 = theorem1_bound(10_000, 0.25).unwrap() / 10_000f64.powf(0.75);
        assert!(r3 < r4 && r4 < 2.0);
        assert!((r4 - 2.0).abs() < 0.02, "{r4}");
        assert!((r3 - 2.0).abs() < 0.05, "{r3}");
    }

    #[test]
    fn report_pass_rule() {
        let ctx = BoundContext::default();
        assert!(BoundReport::new("t", 1.0, 1.0, ctx).passed);
        assert!(BoundReport::new("t", 1.0 + 5e-10, 1.0, ctx).passed);
        assert!(!BoundReport::new("t", 1.0 + 2e-9, 1.0, ctx).passed);
        assert!(BoundReport::new("t", 1000.0 + 5e-7, 1000.0, ctx).passed);
        assert_eq!(BoundReport::new("t", 0.5, 2.0, ctx).slack, 1.5);
    }

    #[test]
    fn holder_examples() {
        let x = line(&[0.2, 0.7]);
        let r = holder_bound_check(&x, &x, 0.3).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.passed);
        let r = holder_bound_check(&line(&[0.0]), &line(&[1.0]), 0.5).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        assert!(r.passed);
    }

    #[test]
    fn holder_on_random_instances() {
        for seed in 0..200u64 {
            let inst = generate(&InstanceSpec::uniform(12, 1, seed)).unwrap();
            for p in [0.1, 0.3, 0.49] {
                assert!(holder_bound_check(&inst.x, &inst.y, p).unwrap().passed);
            }
        }
    }

    #[test]
    fn recursion_examples() {
        let r = greedy_recursion_check(&line(&[0.3]), &line(&[0.9])).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| r.passed));
        let pig = r.iter().find(|r| r.name == "pigeonhole").unwrap();
        assert!((pig.lhs - 0.6).abs() < 1e-15 && pig.lhs == pig.rhs);

        let r = greedy_recursion_check(&line(&[0.0, 0.6]), &line(&[0.5, 1.1])).unwrap();
        let first = r
            .iter()
            .find(|r| r.name == "pigeonhole" && r.context.step == Some(1))
            .unwrap();
        assert!((first.lhs - 0.1).abs() < 1e-12);
        assert!((first.rhs - 0.5).abs() < 1e-12);
        assert!(r.iter().all(|r| r.passed));
    }

    #[test]
    fn recursion_size_limit() {
        let x = PointSet::line(&vec![0.0; 201]).unwrap();
        assert!(matches!(
            greedy_recursion_check(&x, &x),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn recursion_in_two_dimensions() {
        for seed in 0..5 {
            let inst = generate(&InstanceSpec::uniform(15, 2, seed)).unwrap();
            let r = greedy_recursion_check(&inst.x, &inst.y).unwrap();
            assert_eq!(r.len(), 60);
            assert!(r.iter().all(|r| r.passed));
        }
    }

    #[test]
    fn beta_lower_bound_values() {
        // tabulated: Gamma(1.2) = 0.9181687423997607, Gamma(1.25) = 0.9064024770554771
        let b = beta_lower_bound(0.2, 1).unwrap();
        assert!(
            (b - 2f64.powf(-0.2) * 0.918_168_742_399_760_6).abs() < 1e-12,
            "{b}"
        );
        let b = beta_lower_bound(0.5, 2).unwrap();
        assert!(
            (b - std::f64::consts::PI.powf(-0.25) * 0.906_402_477_055_477).abs() < 1e-12,
            "{b}"
        );
        assert!((beta_lower_bound(1e-9, 1).unwrap() - 1.0).abs() < 1e-8);
        assert!(beta_lower_bound(0.5, 1).is_err());
        assert!(beta_lower_bound(0.0, 3).is_err());
    }

    #[test]
    fn bracket_values() {
        let (lo, hi) = corollary3_interval(1e-9).unwrap();
        assert!((lo - 1.0).abs() < 1e-8 && (hi - 1.0).abs() < 1e-8);
        let (lo, hi) = corollary3_interval(0.2).unwrap();
        assert!((lo - 2f64.powf(-0.2) * 0.918_168_742_399_760_6).abs() < 1e-12);
        // Gamma(0.8) = 1.1642297137253030
        assert!(
            (hi - 2f64.powf(0.2) / (0.6 * 1.164_229_713_725_303)).abs() < 1e-12,
            "{hi}"
        );
        let (lo, hi) = corollary3_interval(0.4).unwrap();
        // Gamma(1.4) = 0.8872638175030753, Gamma(0.6) = 1.4891922488128171
        assert!((lo - 2f64.powf(-0.4) * 0.887_263_817_503_075_3).abs() < 1e-12);
        assert!((hi - 5.0 * 2f64.powf(0.4) / 1.489_192_248_812_817).abs() < 1e-11);
        assert!(corollary3_interval(0.5).is_err());
    }

    #[test]
    fn beta_estimate_is_deterministic() {
        let a = beta_estimate(0.2, 1, 2, 1, 17).unwrap();
        let b = beta_estimate(0.2, 1, 2, 1, 17).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.stderr, 0.0);
        assert!(a.mean >= 0.0);
        assert!(beta_estimate(0.6, 1, 10, 1, 0).is_err());
        assert!(beta_estimate(0.2, 1, 1, 1, 0).is_err());
    }

    #[test]
    fn tail_closed_form() {
        assert_eq!(nearest_neighbor_tail(5, 1, 0.5), 0.0);
        assert_eq!(nearest_neighbor_tail(0, 1, 0.01), 1.0);
        assert_eq!(nearest_neighbor_tail(3, 1, 0.6), 0.0);
        assert!((nearest_neighbor_tail(100, 1, 0.01) - 0.98f64.powi(100)).abs() < 1e-15);
        assert!((nearest_neighbor_tail(100, 1, 0.01) - 0.13262).abs() < 1e-5);
    }

    #[test]
    fn tail_simulation_in_two_dimensions() {
        let expected = nearest_neighbor_tail(50, 2, 0.05);
        let (f, se) = empirical_nearest_neighbor_tail(50, 2, 0.05, 20_000, 3).unwrap();
        assert!((f - expected).abs() < 4.0 * se, "{f} vs {expected}");
    }

    // direct f64 objective, fine for small k
    fn direct_odd_log_argmin(dist: &DistanceMatrix, k: u32) -> Vec<usize> {
        let n = dist.n();
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            let v: f64 = p
                .iter()
                .enumerate()
                .map(|(i, &j)| dist.get(i, j).ln().powi(2 * k as i32 + 1))
                .sum();
            if best.as_ref().is_none_or(|b| v < b.0) {
                best = Some((v, p.clone()));
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
        best.unwrap().1
    }

    #[test]
    fn log_domain_argmin_matches_direct_objective() {
        let mut rng = SplitMix64::new(21);
        for _ in 0..30 {
            let x = line(&(0..5).map(|_| 0.4 * rng.next_f64()).collect::<Vec<_>>());
            let y = line(&(0..5).map(|_| 0.4 * rng.next_f64()).collect::<Vec<_>>());
            let dist = DistanceMatrix::new(&x, &y).unwrap();
            for k in 0..12 {
                assert_eq!(
                    odd_log_argmin(&dist, k).unwrap(),
                    direct_odd_log_argmin(&dist, k)
                );
            }
        }
    }

    #[test]
    fn two_pair_extreme_example() {
        let (x, y) = (line(&[0.1, 0.5]), line(&[0.12, 0.9]));
        let dist = DistanceMatrix::new(&x, &y).unwrap();
        for k in 0..=20 {
            assert_eq!(direct_odd_log_argmin(&dist, k), vec![0, 1]);
        }
        assert_eq!(greedy_match(&x, &y).unwrap().perm, vec![0, 1]);
        assert_eq!(prop3_extreme_check(&x, &y, 20).unwrap(), Some(0));
    }

    #[test]
    fn extreme_check_edge_cases() {
        assert_eq!(
            prop3_extreme_check(&line(&[0.2]), &line(&[0.5]), 10).unwrap(),
            Some(0)
        );
        assert!(matches!(
            prop3_extreme_check(&line(&[0.0, 0.1]), &line(&[1.5, 0.2]), 5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            prop3_extreme_check(&line(&[0.0, 0.2]), &line(&[0.1, 0.3]), 5),
            Err(Error::Precondition(_))
        ));
        let big = PointSet::line(&[0.1; 8]).unwrap();
        assert!(matches!(
            prop3_extreme_check(&big, &big, 5),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn large_exponent_ranks_by_smallest_distances() {
        // At large k the edge with the smallest distance dominates, so the
        // minimizer is the permutation whose ascending distance list is
        // lexicographically smallest.
        let mut rng = SplitMix64::new(8);
        for _ in 0..20 {
            let x = line(&(0..4).map(|_| 0.4 * rng.next_f64()).collect::<Vec<_>>());
            let y = line(&(0..4).map(|_| 0.4 * rng.next_f64()).collect::<Vec<_>>());
            let dist = DistanceMatrix::new(&x, &y).unwrap();
            let key = |p: &[usize]| {
                let mut v: Vec<f64> = p.iter().enumerate().map(|(i, &j)| dist.get(i, j)).collect();
                v.sort_by(f64::total_cmp);
                v
            };
            let (lex, _) = brute_force_by(4, |p| key(p));
            assert_eq!(odd_log_argmin(&dist, 2000).unwrap(), lex);
        }
    }
}
