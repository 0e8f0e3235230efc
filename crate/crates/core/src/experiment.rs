//! Multi-trial studies comparing the heuristics with the exact optimum.
//!
//! Trial `t` of a study with base seed `s` draws its instance from
//! [`derive_seed`]`(s, t)`. Trials run in parallel on the current rayon pool
//! and are reduced in trial order, so every report is independent of the
//! worker count.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::analysis::{agreement_curve, AgreementCurve};
use crate::instance::{derive_seed, generate, InstanceSpec};
use crate::matching::{dyck_match, greedy_match, optimal_match, Method};
use crate::numeric::mean_and_stderr;
use crate::{CostSpec, Error, Result};

pub const CSV_HEADER: &str = "method,n,d,p,trials,mean_cost,mean_ratio,stderr,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub method: Method,
    pub n: usize,
    pub d: usize,
    pub p: f64,
    pub trials: usize,
    pub mean_cost: f64,
    pub mean_ratio: f64,
    /// Standard error of `mean_ratio`.
    pub stderr: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    /// FNV-1a digest of the study configuration.
    pub config_digest: String,
    pub tool_version: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<Row>,
    pub metadata: Metadata,
}

impl ExperimentReport {
    fn new(rows: Vec<Row>, config: &str) -> Self {
        Self {
            rows,
            metadata: Metadata {
                config_digest: format!("{:016x}", fnv1a(config.as_bytes())),
                tool_version: env!("CARGO_PKG_VERSION"),
            },
        }
    }

    pub fn row(&self, method: Method, d: usize, p: f64) -> Option<&Row> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.d == d && r.p == p)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.method,
                r.n,
                r.d,
                fmt_sig(r.p),
                r.trials,
                fmt_sig(r.mean_cost),
                fmt_sig(r.mean_ratio),
                fmt_sig(r.stderr),
                r.seed
            );
        }
        out
    }

    /// Mean ratios pivoted with one line per `p` and one column per `d`.
    pub fn to_pivot_csv(&self) -> String {
        let mut dims: Vec<usize> = self.rows.iter().map(|r| r.d).collect();
        dims.sort_unstable();
        dims.dedup();
        let mut ps: Vec<f64> = Vec::new();
        for r in &self.rows {
            if !ps.contains(&r.p) {
                ps.push(r.p);
            }
        }
        let mut out = String::from("p");
        for d in &dims {
            let _ = write!(out, ",d={d}");
        }
        out.push('\n');
        for p in ps {
            out.push_str(&fmt_sig(p));
            for &d in &dims {
                out.push(',');
                if let Some(r) = self.rows.iter().find(|r| r.d == d && r.p == p) {
                    out.push_str(&fmt_sig(r.mean_ratio));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// `%.9g`-style formatting: 9 significant digits, trailing zeros removed,
/// scientific notation outside `1e-5 <= |v| < 1e9`.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn ratio(cost: f64, optimal: f64) -> f64 {
    if optimal == 0.0 {
        if cost == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        cost / optimal
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("p grid is empty"));
    }
    if let Some(p) = grid.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
        return Err(Error::invalid(format!("p grid value {p} outside (0, 1]")));
    }
    Ok(())
}

/// Heuristic cost and optimal cost for one trial at one `p`.
struct Sample {
    cost: f64,
    ratio: f64,
}

fn aggregate(
    per_trial: &[Vec<Vec<Sample>>],
    methods: &[Method],
    grid: &[f64],
    n: usize,
    d: usize,
    seed: u64,
) -> Vec<Row> {
    let trials = per_trial.len();
    let mut rows = Vec::with_capacity(methods.len() * grid.len());
    for (mi, &method) in methods.iter().enumerate() {
        for (pi, &p) in grid.iter().enumerate() {
            let costs: Vec<f64> = per_trial.iter().map(|t| t[mi][pi].cost).collect();
            let ratios: Vec<f64> = per_trial.iter().map(|t| t[mi][pi].ratio).collect();
            let (mean_cost, _) = mean_and_stderr(&costs);
            let (mean_ratio, stderr) = mean_and_stderr(&ratios);
            rows.push(Row {
                method,
                n,
                d,
                p,
                trials,
                mean_cost,
                mean_ratio,
                stderr,
                seed,
            });
        }
    }
    rows
}

fn run_trials(
    n: usize,
    d: usize,
    grid: &[f64],
    methods: &[Method],
    trials: usize,
    seed: u64,
) -> Result<Vec<Vec<Vec<Sample>>>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let inst = generate(&InstanceSpec::uniform(n, d, derive_seed(seed, t)))?;
            let heuristics = methods
                .iter()
                .map(|m| match m {
                    Method::Greedy => greedy_match(&inst.x, &inst.y),
                    Method::Dyck => dyck_match(&inst.x, &inst.y),
                    other => Err(Error::invalid(format!("method {other} is not a heuristic"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let mut out: Vec<Vec<Sample>> = methods
                .iter()
                .map(|_| Vec::with_capacity(grid.len()))
                .collect();
            for &p in grid {
                let cost = CostSpec::Power(p);
                let optimal = optimal_match(&inst.x, &inst.y, cost)?.total_cost();
                for (slot, h) in out.iter_mut().zip(&heuristics) {
                    let c = h.priced(cost)?.total_cost();
                    slot.push(Sample {
                        cost: c,
                        ratio: ratio(c, optimal),
                    });
                }
            }
            Ok(out)
        })
        .collect()
}

/// Mean heuristic/optimal cost ratio per method and per `p`, over iid uniform
/// instances of size `n` on `[0, 1]^d`. The same instance is used for every
/// `p` within a trial.
pub fn ratio_curve(
    n: usize,
    d: usize,
    p_grid: &[f64],
    methods: &[Method],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    check_grid(p_grid)?;
    if methods.is_empty() {
        return Err(Error::invalid("no methods requested"));
    }
    if trials == 0 || n == 0 {
        return Err(Error::invalid("trials and n must be at least 1"));
    }
    if methods.contains(&Method::Dyck) && d != 1 {
        return Err(Error::UnsupportedDimension {
            op: "dyck matching",
            dim: d,
            required: "d = 1",
        });
    }
    let per_trial = run_trials(n, d, p_grid, methods, trials, seed)?;
    let rows = aggregate(&per_trial, methods, p_grid, n, d, seed);
    let config = format!(
        "ratio_curve n={n} d={d} grid={p_grid:?} methods={methods:?} trials={trials} seed={seed}"
    );
    Ok(ExperimentReport::new(rows, &config))
}

/// Greedy/optimal ratio grid over dimensions and exponents; rows are ordered
/// by `p`, then `d`.
pub fn dimension_table(
    n: usize,
    dims: &[usize],
    p_values: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if n < 2 {
        return Err(Error::invalid("dimension table needs n >= 2"));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::invalid(
            "dimensions must be a nonempty list of positive integers",
        ));
    }
    check_grid(p_values)?;
    let mut by_dim = Vec::with_capacity(dims.len());
    for &d in dims {
        let per_trial = run_trials(n, d, p_values, &[Method::Greedy], trials, seed)?;
        by_dim.push(aggregate(
            &per_trial,
            &[Method::Greedy],
            p_values,
            n,
            d,
            seed,
        ));
    }
    let mut rows = Vec::with_capacity(dims.len() * p_values.len());
    for pi in 0..p_values.len() {
        for dim_rows in &by_dim {
            rows.push(dim_rows[pi].clone());
        }
    }
    let config =
        format!("dimension_table n={n} dims={dims:?} p={p_values:?} trials={trials} seed={seed}");
    Ok(ExperimentReport::new(rows, &config))
}

pub const AGREEMENT_CSV_HEADER: &str = "cost,step,agreement,stderr,trials";

/// Greedy/optimal agreement per greedy step on the line. Only agreement is
/// reported, never a cost ratio (log costs can be negative).
pub fn agreement_experiment(
    n: usize,
    cost: CostSpec,
    trials: usize,
    seed: u64,
) -> Result<AgreementCurve> {
    agreement_curve(n, 1, cost, trials, seed)
}

/// CSV with one line per greedy step (steps are 1-based).
pub fn agreement_csv(curve: &AgreementCurve, cost: CostSpec) -> String {
    let mut out = String::from(AGREEMENT_CSV_HEADER);
    out.push('\n');
    for (k, (a, se)) in curve.agreement.iter().zip(&curve.stderr).enumerate() {
        let _ = writeln!(
            out,
            "{cost},{},{},{},{}",
            k + 1,
            fmt_sig(*a),
            fmt_sig(*se),
            curve.trials
        );
    }
    out
}

/// Estimated exponent where the greedy and Dyck mean-ratio curves cross,
/// with the crossings of the curves shifted by one combined standard error
/// as an uncertainty interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub p_star: f64,
    pub low: f64,
    pub high: f64,
}

fn first_crossing(grid: &[f64], diff: &[f64]) -> Option<f64> {
    for k in 0..grid.len().saturating_sub(1) {
        let (a, b) = (diff[k], diff[k + 1]);
        if a == 0.0 {
            return Some(grid[k]);
        }
        if (a < 0.0) != (b < 0.0) || b == 0.0 {
            return Some(grid[k] + (grid[k + 1] - grid[k]) * a / (a - b));
        }
    }
    None
}

/// Locates the first sign change of `greedy - dyck` along `grid` by linear
/// interpolation. `None` if the curves do not cross inside the grid.
pub fn find_crossover(
    grid: &[f64],
    greedy: &[f64],
    greedy_se: &[f64],
    dyck: &[f64],
    dyck_se: &[f64],
) -> Option<Crossover> {
    let diff: Vec<f64> = greedy.iter().zip(dyck).map(|(g, d)| g - d).collect();
    let p_star = first_crossing(grid, &diff)?;
    let se: Vec<f64> = greedy_se
        .iter()
        .zip(dyck_se)
        .map(|(a, b)| a.hypot(*b))
        .collect();
    let lower: Vec<f64> = diff.iter().zip(&se).map(|(d, s)| d - s).collect();
    let upper: Vec<f64> = diff.iter().zip(&se).map(|(d, s)| d + s).collect();
    let (first, last) = (grid[0], grid[grid.len() - 1]);
    let a = first_crossing(grid, &lower).unwrap_or(last);
    let b = first_crossing(grid, &upper).unwrap_or(first);
    Some(Crossover {
        p_star,
        low: a.min(b).min(p_star),
        high: a.max(b).max(p_star),
    })
}

pub fn crossover_scan(
    n: usize,
    p_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<(ExperimentReport, Option<Crossover>)> {
    let report = ratio_curve(n, 1, p_grid, &[Method::Greedy, Method::Dyck], trials, seed)?;
    let pick = |m: Method| -> (Vec<f64>, Vec<f64>) {
        p_grid
            .iter()
            .map(|&p| {
                let r = report.row(m, 1, p).expect("row per grid point");
                (r.mean_ratio, r.stderr)
            })
            .unzip()
    };
    let (g, gse) = pick(Method::Greedy);
    let (d, dse) = pick(Method::Dyck);
    let crossing = find_crossover(p_grid, &g, &gse, &d, &dse);
    Ok((report, crossing))
}

/// Parses `a:b:s` into `a, a + s, ...`, including `b` when `(b - a) / s` is
/// integral (up to rounding), or a comma-separated list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::invalid(format!("`{s}` in grid `{spec}` is not a number")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [a, b, s] => {
            let (a, b, s) = (num(a)?, num(b)?, num(s)?);
            if s.is_nan() || s <= 0.0 || b < a {
                return Err(Error::invalid(format!(
                    "grid `{spec}` needs start <= end and a positive step"
                )));
            }
            let steps = ((b - a) / s + 1e-9).floor() as usize;
            // round to the step's precision so 0.05 * 3 prints as 0.15
            Ok((0..=steps)
                .map(|k| ((a + k as f64 * s) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => spec.split(',').map(num).collect(),
        _ => Err(Error::invalid(format!(
            "grid `{spec}` must be a:b:step or a comma list"
        ))),
    }
}
