//! Small numeric helpers shared by the matchers and the experiment harness.

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise (tree) summation.
///
/// Error grows as O(log n) instead of O(n) for naive left-to-right
/// accumulation. The reduction order depends only on the slice length, so
/// the result is a deterministic function of the input.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sample mean and standard error of the mean (sample std / sqrt(len)).
///
/// Returns `(mean, 0.0)` for a single value and `(NaN, NaN)` for none.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = pairwise_sum(values) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = pairwise_sum(&sq) / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Volume of the unit ball in `d` dimensions, `pi^(d/2) / Gamma(1 + d/2)`,
/// through `V_d = 2 pi / d * V_(d-2)` so that `V_1 = 2` and `V_2 = pi`
/// exactly.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / d as f64 * unit_ball_volume(d - 2),
    }
}
