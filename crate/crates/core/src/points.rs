//! Point sets, the ground metric and dense distance matrices.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An ordered set of points in `R^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from explicit rows. Every row must have `dim`
    /// finite coordinates.
    pub fn new(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::invalid(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::invalid(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid(format!(
                "coordinate {} of point {} is not finite",
                pos % dim,
                pos / dim
            )));
        }
        Ok(Self { dim, coords })
    }

    /// One-dimensional point set.
    pub fn line(values: &[f64]) -> Result<Self> {
        Self::from_flat(1, values.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The subset of points at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self {
            dim: self.dim,
            coords,
        }
    }

    /// First coordinates, for one-dimensional sets.
    pub(crate) fn line_values(&self, op: &'static str) -> Result<&[f64]> {
        if self.dim != 1 {
            return Err(Error::UnsupportedDimension {
                op,
                dim: self.dim,
                required: "d = 1",
            });
        }
        Ok(&self.coords)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for PointSet {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.first().map_or(1, Vec::len);
        Self::new(dim, &rows)
    }
}

impl From<PointSet> for Vec<Vec<f64>> {
    fn from(set: PointSet) -> Self {
        set.to_rows()
    }
}

/// A ground metric on `R^d`.
///
/// The greedy bound holds in any metric space, so matchers are written
/// against this trait. [`Euclidean`] is the only implementation shipped.
pub trait Metric: Sync {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Metric for Euclidean {
    #[inline]
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        if a.len() == 1 {
            return (a[0] - b[0]).abs();
        }
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(Euclidean.distance(a, b))
}

pub(crate) fn check_pair(x: &PointSet, y: &PointSet) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "point sets differ in size: |X| = {}, |Y| = {}",
            x.len(),
            y.len()
        )));
    }
    if x.dim() != y.dim() {
        return Err(Error::invalid(format!(
            "point sets differ in dimension: {} vs {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(())
}

/// Dense `n x n` matrix, entry `(i, j)` = `d(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(x: &PointSet, y: &PointSet) -> Result<Self> {
        Self::with_metric(x, y, &Euclidean)
    }

    pub fn with_metric(x: &PointSet, y: &PointSet, metric: &dyn Metric) -> Result<Self> {
        check_pair(x, y)?;
        let n = x.len();
        let mut entries = Vec::with_capacity(n * n);
        for a in x.iter() {
            entries.extend(y.iter().map(|b| metric.distance(a, b)));
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}
