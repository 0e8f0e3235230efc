//! Randomized bound-verification suites behind `verify-bounds`.

use clap::ValueEnum;
use rayon::prelude::*;

use concave_ot::bounds::{
    beta_estimate, beta_lower_bound, corollary3_interval, empirical_nearest_neighbor_tail,
    greedy_recursion_check, holder_bound_check, nearest_neighbor_tail, prop3_extreme_check,
    theorem1_report, BoundContext, BoundReport, PROP3_DEFAULT_K_MAX,
};
use concave_ot::instance::{derive_seed, generate, Instance, SplitMix64};
use concave_ot::matching::{greedy_match, w1};
use concave_ot::points::PointSet;
use concave_ot::{Error, InstanceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem1,
    Recursion,
    Holder,
    Prop2,
    Prop3,
    Lemma1,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Recursion => "recursion",
            Suite::Holder => "holder",
            Suite::Prop2 => "prop2",
            Suite::Prop3 => "prop3",
            Suite::Lemma1 => "lemma1",
        }
    }
}

pub struct SuiteOutcome {
    pub reports: Vec<BoundReport>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

const THEOREM1_P: [f64; 5] = [0.1, 0.25, 0.4, 0.5, 0.75];
const HOLDER_P: [f64; 3] = [0.1, 0.3, 0.49];

fn per_trial<F>(trials: usize, seed: u64, f: F) -> Result<Vec<BoundReport>, Error>
where
    F: Fn(u64) -> Result<Vec<BoundReport>, Error> + Sync,
{
    let chunks: Vec<Vec<BoundReport>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let s = derive_seed(seed, t);
            Ok(f(s)?.into_iter().map(|r| r.with_seed(s)).collect())
        })
        .collect::<Result<_, Error>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn uniform(n: usize, d: usize, seed: u64) -> Result<Instance, Error> {
    generate(&InstanceSpec::uniform(n, d, seed))
}

/// Points uniform on `[0, 0.4]`, so every distance is below one.
fn small_line(n: usize, rng: &mut SplitMix64) -> Result<PointSet, Error> {
    PointSet::line(&(0..n).map(|_| 0.4 * rng.next_f64()).collect::<Vec<_>>())
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Result<SuiteOutcome, Error> {
    if trials == 0 {
        return Err(Error::InvalidInput("--trials: must be at least 1".into()));
    }
    let reports = match suite {
        Suite::Theorem1 => per_trial(trials, seed, |s| {
            let mut out = Vec::new();
            for (k, (n, d)) in [(10, 1), (100, 1), (10, 2), (100, 2)]
                .into_iter()
                .enumerate()
            {
                let inst = uniform(n, d, derive_seed(s, k as u64))?;
                let g = greedy_match(&inst.x, &inst.y)?;
                let w = w1(&inst.x, &inst.y)?;
                for p in THEOREM1_P {
                    out.push(theorem1_report(&g, w, p, d)?);
                }
            }
            Ok(out)
        })?,
        Suite::Recursion => per_trial(trials, seed, |s| {
            let inst = uniform(50, 1, s)?;
            greedy_recursion_check(&inst.x, &inst.y)
        })?,
        Suite::Holder => per_trial(trials, seed, |s| {
            let inst = uniform(50, 1, s)?;
            HOLDER_P
                .iter()
                .map(|&p| holder_bound_check(&inst.x, &inst.y, p))
                .collect()
        })?,
        Suite::Prop2 => {
            let trials = trials.max(2);
            let mut out = Vec::new();
            for (p, d) in [(0.2, 1), (0.5, 2)] {
                let est = beta_estimate(p, d, 200, trials, seed)?;
                let ctx = BoundContext {
                    n: est.n,
                    d,
                    p: Some(p),
                    seed: Some(seed),
                    step: None,
                };
                let slack = 3.0 * est.stderr;
                out.push(BoundReport::new(
                    "beta_lower_bound",
                    beta_lower_bound(p, d)?,
                    est.mean + slack,
                    ctx,
                ));
                if d == 1 {
                    let (lo, hi) = corollary3_interval(p)?;
                    out.push(BoundReport::new(
                        "beta_bracket_low",
                        lo,
                        est.mean + slack,
                        ctx,
                    ));
                    out.push(BoundReport::new(
                        "beta_bracket_high",
                        est.mean - slack,
                        hi,
                        ctx,
                    ));
                }
            }
            out
        }
        Suite::Prop3 => per_trial(trials, seed, |s| {
            let mut rng = SplitMix64::new(s);
            let x = small_line(5, &mut rng)?;
            let y = small_line(5, &mut rng)?;
            let k = prop3_extreme_check(&x, &y, PROP3_DEFAULT_K_MAX)?;
            let ctx = BoundContext {
                n: 5,
                d: 1,
                ..Default::default()
            };
            let lhs = k.map_or(f64::INFINITY, f64::from);
            Ok(vec![BoundReport::new(
                "greedy_stabilizes",
                lhs,
                PROP3_DEFAULT_K_MAX as f64,
                ctx,
            )])
        })?,
        Suite::Lemma1 => {
            let (n, eps) = (100, 0.01);
            let samples = 2000 * trials;
            let expected = nearest_neighbor_tail(n, 1, eps);
            let (freq, se) = empirical_nearest_neighbor_tail(n, 1, eps, samples, seed)?;
            let ctx = BoundContext {
                n,
                d: 1,
                seed: Some(seed),
                ..Default::default()
            };
            // 4 standard errors: the suite is run over many seeds
            vec![BoundReport::new(
                "nn_tail",
                (freq - expected).abs(),
                4.0 * se,
                ctx,
            )]
        }
    };
    Ok(SuiteOutcome { reports })
}
