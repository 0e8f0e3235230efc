//! Transport cost functions of the distance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A cost `c(x, y) = h(d(x, y))` with `h` strictly increasing.
///
/// Textual form (used on the command line and in JSON): `pow:<p>`, `log`,
/// `oddlog:<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CostSpec {
    /// `d^p` with `0 < p <= 1`, and `0^p = 0`.
    Power(f64),
    /// `ln d`, defined for `d > 0`.
    LogDistance,
    /// `(ln d)^(2k + 1)`, defined for `0 < d < 1`.
    OddLogPower(u32),
}

impl CostSpec {
    pub fn power(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::invalid(format!(
                "power exponent must lie in (0, 1], got {p}"
            )));
        }
        Ok(CostSpec::Power(p))
    }

    /// Checks the parameter invariants; used after deserialization or when
    /// the variant was built directly.
    pub fn validate(self) -> Result<Self> {
        match self {
            CostSpec::Power(p) => Self::power(p),
            other => Ok(other),
        }
    }

    pub fn eval(self, dist: f64) -> Result<f64> {
        if dist.is_nan() || dist < 0.0 || !dist.is_finite() {
            return Err(Error::domain(format!(
                "distance must be finite and nonnegative, got {dist}"
            )));
        }
        match self {
            CostSpec::Power(p) => Ok(if dist == 0.0 { 0.0 } else { dist.powf(p) }),
            CostSpec::LogDistance => {
                if dist == 0.0 {
                    return Err(Error::domain(
                        "log cost undefined at distance 0 (coincident points)",
                    ));
                }
                Ok(dist.ln())
            }
            CostSpec::OddLogPower(k) => {
                if dist == 0.0 || dist >= 1.0 {
                    return Err(Error::domain(format!(
                        "odd log power cost needs 0 < distance < 1, got {dist}"
                    )));
                }
                Ok(dist.ln().powi(2 * k as i32 + 1))
            }
        }
    }

    /// Whether matchings under this cost can be compared by ratio to the
    /// optimum (false for costs that may be negative).
    pub fn is_nonnegative(self) -> bool {
        matches!(self, CostSpec::Power(_))
    }
}

/// `ln |(ln d)^(2k+1)| = (2k + 1) ln |ln d|`, the magnitude of an odd log
/// power cost in log space. Valid for `0 < d < 1`, where the cost itself is
/// negative. Stays finite for exponents where the cost overflows.
pub fn odd_log_magnitude(dist: f64, k: u32) -> Result<f64> {
    if !(dist > 0.0 && dist < 1.0) {
        return Err(Error::domain(format!(
            "odd log power cost needs 0 < distance < 1, got {dist}"
        )));
    }
    Ok((2.0 * k as f64 + 1.0) * (-dist.ln()).ln())
}

impl fmt::Display for CostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostSpec::Power(p) => write!(f, "pow:{p}"),
            CostSpec::LogDistance => f.write_str("log"),
            CostSpec::OddLogPower(k) => write!(f, "oddlog:{k}"),
        }
    }
}

impl FromStr for CostSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "log" {
            return Ok(CostSpec::LogDistance);
        }
        if let Some(p) = s.strip_prefix("pow:") {
            let p: f64 = p
                .parse()
                .map_err(|_| Error::invalid(format!("cost `{s}`: `{p}` is not a number")))?;
            return Self::power(p);
        }
        if let Some(k) = s.strip_prefix("oddlog:") {
            let k: u32 = k.parse().map_err(|_| {
                Error::invalid(format!("cost `{s}`: `{k}` is not a nonnegative integer"))
            })?;
            return Ok(CostSpec::OddLogPower(k));
        }
        Err(Error::invalid(format!(
            "unknown cost `{s}`, expected pow:<p>, log or oddlog:<k>"
        )))
    }
}

impl TryFrom<String> for CostSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CostSpec> for String {
    fn from(c: CostSpec) -> Self {
        c.to_string()
    }
}
