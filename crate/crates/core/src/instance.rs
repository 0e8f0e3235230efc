//! Seeded instance generation and the instance JSON file format.
//!
//! # Random stream
//!
//! All randomness comes from SplitMix64 (Steele, Lea & Flood 2014):
//!
//! ```text
//! state  = state + 0x9E3779B97F4A7C15          (wrapping)
//! z      = state
//! z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z      = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! A uniform double in `[0, 1)` is `(output >> 11) * 2^-53`. A uniform
//! instance of size `n` in dimension `d` draws `2 n d` doubles from a
//! generator seeded with the instance seed: the first `n d` fill `X` row by
//! row, the next `n d` fill `Y`. Trial `t` of an experiment with base seed
//! `s` uses [`derive_seed`]`(s, t)`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::points::PointSet;
use crate::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub const SCHEMA_VERSION: u32 = 1;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Seed of trial `trial` under base seed `seed`:
/// `mix64(seed + (trial + 1) * 0x9E3779B97F4A7C15)`, i.e. the `trial + 1`-th
/// output of a SplitMix64 stream started at `seed`, computed without
/// advancing through the earlier outputs.
pub fn derive_seed(seed: u64, trial: u64) -> u64 {
    mix64(seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Both sets iid uniform on `[0, 1]^d`.
    Uniform,
    /// 1D: reds uniform on `[1 - delta, 1]`, blues uniform on `[0, delta]`.
    Clusters,
    /// 1D equispaced: reds at `(2i - 2) / 2n`, blues at `(2i - 1) / 2n`.
    Alternating,
    /// Points given explicitly.
    Explicit,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "clusters" => Ok(Family::Clusters),
            "alternating" => Ok(Family::Alternating),
            "explicit" => Ok(Family::Explicit),
            _ => Err(Error::invalid(format!(
                "unknown family `{s}`, expected uniform, clusters or alternating"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Cluster half-width, `Clusters` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub params: FamilyParams,
}

impl InstanceSpec {
    pub fn uniform(n: usize, d: usize, seed: u64) -> Self {
        Self {
            family: Family::Uniform,
            n,
            d,
            seed,
            params: FamilyParams::default(),
        }
    }

    pub fn clusters(n: usize, delta: f64, seed: u64) -> Self {
        Self {
            family: Family::Clusters,
            n,
            d: 1,
            seed,
            params: FamilyParams { delta: Some(delta) },
        }
    }

    pub fn alternating(n: usize) -> Self {
        Self {
            family: Family::Alternating,
            n,
            d: 1,
            seed: 0,
            params: FamilyParams::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if self.d == 0 {
            return Err(Error::invalid("d must be at least 1"));
        }
        match self.family {
            Family::Clusters | Family::Alternating if self.d != 1 => Err(Error::invalid(format!(
                "family {:?} is one-dimensional, got d = {}",
                self.family, self.d
            ))),
            Family::Clusters => match self.params.delta {
                Some(delta) if delta > 0.0 && delta < 0.25 => Ok(()),
                other => Err(Error::invalid(format!(
                    "clusters need a half-width delta in (0, 1/4), got {other:?}"
                ))),
            },
            Family::Explicit => Err(Error::invalid(
                "explicit instances are built with Instance::explicit",
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub x: PointSet,
    pub y: PointSet,
    pub spec: InstanceSpec,
}

impl Instance {
    pub fn explicit(x: PointSet, y: PointSet) -> Result<Self> {
        crate::points::check_pair(&x, &y)?;
        let spec = InstanceSpec {
            family: Family::Explicit,
            n: x.len(),
            d: x.dim(),
            seed: 0,
            params: FamilyParams::default(),
        };
        Ok(Self { x, y, spec })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn d(&self) -> usize {
        self.x.dim()
    }
}

/// Builds the instance described by `spec`; a pure function of `spec`.
pub fn generate(spec: &InstanceSpec) -> Result<Instance> {
    spec.validate()?;
    let (n, d) = (spec.n, spec.d);
    let (x, y) = match spec.family {
        Family::Uniform => {
            let mut rng = SplitMix64::new(spec.seed);
            let x: Vec<f64> = (0..n * d).map(|_| rng.next_f64()).collect();
            let y: Vec<f64> = (0..n * d).map(|_| rng.next_f64()).collect();
            (x, y)
        }
        Family::Clusters => {
            let delta = spec.params.delta.expect("validated");
            let mut rng = SplitMix64::new(spec.seed);
            let x: Vec<f64> = (0..n).map(|_| rng.uniform(1.0 - delta, 1.0)).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.uniform(0.0, delta)).collect();
            (x, y)
        }
        Family::Alternating => {
            let denom = (2 * n) as f64;
            let x = (1..=n).map(|i| (2 * i - 2) as f64 / denom).collect();
            let y = (1..=n).map(|i| (2 * i - 1) as f64 / denom).collect();
            (x, y)
        }
        Family::Explicit => unreachable!(),
    };
    Ok(Instance {
        x: PointSet::from_flat(d, x)?,
        y: PointSet::from_flat(d, y)?,
        spec: *spec,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    version: u32,
    n: usize,
    d: usize,
    family: Family,
    seed: u64,
    #[serde(default)]
    params: FamilyParams,
    #[serde(rename = "X")]
    x: Vec<Vec<f64>>,
    #[serde(rename = "Y")]
    y: Vec<Vec<f64>>,
}

/// Serializes to the instance JSON document. Floats are written in
/// shortest round-trip form, so [`from_json`] restores them exactly.
pub fn to_json(inst: &Instance) -> String {
    let file = InstanceFile {
        version: SCHEMA_VERSION,
        n: inst.spec.n,
        d: inst.spec.d,
        family: inst.spec.family,
        seed: inst.spec.seed,
        params: inst.spec.params,
        x: inst.x.to_rows(),
        y: inst.y.to_rows(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("instance serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Instance> {
    let raw: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance file: {e}")))?;
    match raw.get("version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => return Err(Error::Schema(format!(
            "field `version`: unsupported instance schema version {v}, expected {SCHEMA_VERSION}"
        ))),
        None => {
            return Err(Error::Schema(
                "field `version`: missing or not an integer".into(),
            ))
        }
    }
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance file: {e}")))?;
    if file.x.len() != file.y.len() {
        return Err(Error::Parse(format!(
            "fields `X`/`Y`: sizes differ ({} vs {})",
            file.x.len(),
            file.y.len()
        )));
    }
    if file.x.len() != file.n {
        return Err(Error::Parse(format!(
            "field `n`: says {} but `X` has {} points",
            file.n,
            file.x.len()
        )));
    }
    let x = PointSet::new(file.d, &file.x).map_err(|e| Error::Parse(format!("field `X`: {e}")))?;
    let y = PointSet::new(file.d, &file.y).map_err(|e| Error::Parse(format!("field `Y`: {e}")))?;
    let spec = InstanceSpec {
        family: file.family,
        n: file.n,
        d: file.d,
        seed: file.seed,
        params: file.params,
    };
    Ok(Instance { x, y, spec })
}

pub fn save(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(inst))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{greedy_match, w1};
    use crate::CostSpec;

    #[test]
    fn splitmix_reference_outputs() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn derived_seed_is_stream_output() {
        let mut rng = SplitMix64::new(1234);
        for t in 0..5 {
            assert_eq!(derive_seed(1234, t), rng.next_u64());
        }
    }

    #[test]
    fn unit_interval() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..10_000 {
            let u = rng.next_f64();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn alternating_formula() {
        let inst = generate(&InstanceSpec::alternating(2)).unwrap();
        assert_eq!(inst.x.coords(), &[0.0, 0.5]);
        assert_eq!(inst.y.coords(), &[0.25, 0.75]);
    }

    #[test]
    fn deterministic() {
        let spec = InstanceSpec::uniform(20, 3, 42);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        assert_ne!(
            generate(&spec).unwrap().x,
            generate(&InstanceSpec::uniform(20, 3, 43)).unwrap().x
        );
    }

    #[test]
    fn uniform_stream_layout() {
        let inst = generate(&InstanceSpec::uniform(3, 2, 9)).unwrap();
        let mut rng = SplitMix64::new(9);
        let stream: Vec<f64> = (0..12).map(|_| rng.next_f64()).collect();
        assert_eq!(inst.x.coords(), &stream[..6]);
        assert_eq!(inst.y.coords(), &stream[6..]);
    }

    #[test]
    fn cluster_ranges() {
        let inst = generate(&InstanceSpec::clusters(3, 0.1, 7)).unwrap();
        assert!(inst.x.coords().iter().all(|v| (0.9..=1.0).contains(v)));
        assert!(inst.y.coords().iter().all(|v| (0.0..=0.1).contains(v)));
    }

    #[test]
    fn invalid_specs() {
        let mut s = InstanceSpec::alternating(3);
        s.d = 2;
        assert!(generate(&s).is_err());
        let mut s = InstanceSpec::clusters(3, 0.1, 0);
        s.d = 2;
        assert!(generate(&s).is_err());
        assert!(generate(&InstanceSpec::clusters(3, 0.3, 0)).is_err());
        assert!(generate(&InstanceSpec::uniform(0, 1, 0)).is_err());
    }

    #[test]
    fn alternating_closed_forms() {
        // power-of-two sizes keep every coordinate and gap exact
        for n in [1usize, 2, 4, 8, 64, 256] {
            let inst = generate(&InstanceSpec::alternating(n)).unwrap();
            let g = greedy_match(&inst.x, &inst.y).unwrap();
            for p in [0.1, 0.25, 0.5, 1.0] {
                let cost = g.priced(CostSpec::Power(p)).unwrap().total_cost();
                let expected = n as f64 * (1.0 / (2 * n) as f64).powf(p);
                assert!((cost - expected).abs() <= 1e-12 * expected, "n={n} p={p}");
            }
            assert!((w1(&inst.x, &inst.y).unwrap() - 0.5).abs() <= 1e-12 * 0.5);
        }
    }

    #[test]
    fn cluster_lower_bounds() {
        for seed in 0..20 {
            let delta = 0.1;
            let inst = generate(&InstanceSpec::clusters(15, delta, seed)).unwrap();
            let g = greedy_match(&inst.x, &inst.y).unwrap();
            for p in [0.1, 0.5] {
                let cost = g.priced(CostSpec::Power(p)).unwrap().total_cost();
                assert!(cost >= 15.0 * (1.0 - 2.0 * delta).powf(p));
            }
            assert!(w1(&inst.x, &inst.y).unwrap() >= 15.0 * (1.0 - 2.0 * delta));
        }
    }

    #[test]
    fn json_round_trip() {
        for spec in [
            InstanceSpec::alternating(2),
            InstanceSpec::uniform(7, 3, 5),
            InstanceSpec::clusters(4, 0.2, 1),
        ] {
            let inst = generate(&spec).unwrap();
            assert_eq!(from_json(&to_json(&inst)).unwrap(), inst);
        }
    }

    #[test]
    fn json_errors() {
        let ok = to_json(&generate(&InstanceSpec::alternating(2)).unwrap());
        let mut v: serde_json::Value = serde_json::from_str(&ok).unwrap();
        v["Y"].as_array_mut().unwrap().pop();
        let err = from_json(&v.to_string()).unwrap_err();
        assert!(
            matches!(err, Error::Parse(_)) && err.to_string().contains("sizes differ"),
            "{err}"
        );
        let wrong_version = ok.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(from_json(&wrong_version), Err(Error::Schema(_))));
        let err = from_json("{\"version\": 1, \"n\": \"two\"}").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(err.to_string().contains("line"), "{err}");
    }
}
