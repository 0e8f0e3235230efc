//! Matchers between two equal-size point sets and the common [`Matching`]
//! record they return.
//!
//! Indices are zero-based: `perm[i] = j` sends `x_i` to `y_j`.

mod assignment;
mod brute;
mod document;
mod dyck;
mod greedy;
pub(crate) mod sorted;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numeric::pairwise_sum;
use crate::points::{Euclidean, Metric, PointSet};
use crate::{CostSpec, Error, Result};

pub use assignment::{optimal_match, solve_assignment};
pub use brute::{
    brute_force_by, brute_force_cmp, brute_force_match, next_permutation, BRUTE_FORCE_MAX_N,
};
pub use document::{matching_from_json, matching_to_json, MATCHING_SCHEMA_VERSION};
pub use dyck::dyck_match;
pub use greedy::{greedy_match, greedy_order};
pub use sorted::{sorted_match, w1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Greedy,
    Dyck,
    Optimal,
    Sorted,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Dyck => "dyck",
            Method::Optimal => "optimal",
            Method::Sorted => "sorted",
            Method::BruteForce => "brute_force",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Method::Greedy),
            "dyck" => Ok(Method::Dyck),
            "optimal" => Ok(Method::Optimal),
            "sorted" => Ok(Method::Sorted),
            "brute_force" | "brute-force" => Ok(Method::BruteForce),
            _ => Err(Error::invalid(format!(
                "unknown method `{s}`, expected greedy, dyck, optimal, sorted or brute_force"
            ))),
        }
    }
}

/// One matched pair `x_i -> y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub dist: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub method: Method,
    /// Cost the edge costs were evaluated with.
    pub cost: CostSpec,
    pub perm: Vec<usize>,
    /// Greedy: in selection order. Otherwise ordered by `i`.
    pub edges: Vec<Edge>,
    /// Greedy only: the minimal surviving distance at each step.
    pub step_minima: Option<Vec<f64>>,
}

impl Matching {
    /// Builds a matching from `(i, j)` pairs, evaluating distances with the
    /// Euclidean metric and costs with `cost`. Pairs keep the given order.
    pub(crate) fn from_pairs(
        method: Method,
        cost: CostSpec,
        pairs: &[(usize, usize)],
        x: &PointSet,
        y: &PointSet,
    ) -> Result<Self> {
        let n = x.len();
        let mut perm = vec![usize::MAX; n];
        let mut edges = Vec::with_capacity(n);
        for &(i, j) in pairs {
            perm[i] = j;
            let dist = Euclidean.distance(x.point(i), y.point(j));
            edges.push(Edge {
                i,
                j,
                dist,
                cost: cost.eval(dist)?,
            });
        }
        let m = Matching {
            method,
            cost,
            perm,
            edges,
            step_minima: None,
        };
        debug_assert!(m.check_bijection().is_ok());
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Sum of the edge costs (pairwise summation in edge order).
    pub fn total_cost(&self) -> f64 {
        let costs: Vec<f64> = self.edges.iter().map(|e| e.cost).collect();
        pairwise_sum(&costs)
    }

    pub fn total_distance(&self) -> f64 {
        let d: Vec<f64> = self.edges.iter().map(|e| e.dist).collect();
        pairwise_sum(&d)
    }

    /// The same permutation with edge costs re-evaluated under `cost`.
    pub fn priced(&self, cost: CostSpec) -> Result<Matching> {
        let mut out = self.clone();
        out.cost = cost;
        for e in &mut out.edges {
            e.cost = cost.eval(e.dist)?;
        }
        Ok(out)
    }

    /// Whether `(i, j)` is an edge.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.perm.get(i) == Some(&j)
    }

    /// Verifies that `perm` is a bijection and agrees with `edges`.
    pub fn check_bijection(&self) -> Result<()> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        for (i, &j) in self.perm.iter().enumerate() {
            if j >= n || seen[j] {
                return Err(Error::invalid(format!(
                    "perm is not a bijection at index {i}"
                )));
            }
            seen[j] = true;
        }
        if self.edges.len() != n || self.edges.iter().any(|e| self.perm.get(e.i) != Some(&e.j)) {
            return Err(Error::invalid("edges disagree with perm"));
        }
        Ok(())
    }
}
