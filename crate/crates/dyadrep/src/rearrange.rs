//! Decreasing rearrangements, equimeasurability tests and tensor-product
//! rearrangements of step functions.
//!
//! A [`WeightedStep`] is the canonical form of a decreasing rearrangement:
//! cells `(value, measure)` with values strictly decreasing (equal values are
//! merged) and measures summing to 1. Built from dyadic inputs every measure
//! is a dyadic rational, so comparisons are exact.

use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicStep;
use crate::error::{Error, Result};

/// A decreasing staircase: `(value, measure)` cells, values strictly
/// decreasing, measures summing to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightedStep {
    cells: Vec<(f64, f64)>,
}

impl WeightedStep {
    /// Canonicalize a list of `(value >= 0, measure > 0)` cells: sort by
    /// value descending and merge equal values.
    pub fn from_cells(mut cells: Vec<(f64, f64)>) -> Self {
        cells.retain(|&(_, m)| m > 0.0);
        cells.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(cells.len());
        for (v, m) in cells {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += m,
                _ => merged.push((v, m)),
            }
        }
        Self { cells: merged }
    }

    pub fn cells(&self) -> &[(f64, f64)] {
        &self.cells
    }

    pub fn total_measure(&self) -> f64 {
        self.cells.iter().map(|c| c.1).sum()
    }

    /// `\int x* = \int |x|`, exactly (sorting preserves the multiset).
    pub fn integral(&self) -> f64 {
        self.cells.iter().map(|(v, m)| v * m).sum()
    }

    pub fn sup(&self) -> f64 {
        self.cells.first().map_or(0.0, |c| c.0)
    }

    /// Largest absolute staircase gap against `other`, ignoring slivers
    /// narrower than `slack` in the measure axis.
    pub fn staircase_gap(&self, other: &Self, slack: f64) -> f64 {
        let mut gap: f64 = 0.0;
        let (a, b) = (&self.cells, &other.cells);
        let (mut i, mut j) = (0usize, 0usize);
        let (mut ta, mut tb) = (0.0f64, 0.0f64); // consumed measure within current cell
        let mut t = 0.0f64;
        while i < a.len() && j < b.len() {
            let rest_a = a[i].1 - ta;
            let rest_b = b[j].1 - tb;
            let width = rest_a.min(rest_b);
            if width > slack {
                gap = gap.max((a[i].0 - b[j].0).abs());
            }
            t += width;
            ta += width;
            tb += width;
            if a[i].1 - ta <= 1e-15 {
                i += 1;
                ta = 0.0;
            }
            if j < b.len() && b[j].1 - tb <= 1e-15 {
                j += 1;
                tb = 0.0;
            }
        }
        // trailing mass on one side
        let tail = |cells: &[(f64, f64)], k: usize, consumed: f64| -> f64 {
            let mut g: f64 = 0.0;
            let mut first = consumed;
            for c in &cells[k.min(cells.len())..] {
                if c.1 - first > slack {
                    g = g.max(c.0.abs());
                }
                first = 0.0;
            }
            g
        };
        let _ = t;
        gap.max(tail(a, i, ta)).max(tail(b, j, tb))
    }
}

/// Decreasing rearrangement of `|x|` with exact dyadic measures.
pub fn rearrangement(x: &DyadicStep) -> WeightedStep {
    let m = 1.0 / x.values().len() as f64;
    WeightedStep::from_cells(x.values().iter().map(|v| (v.abs(), m)).collect())
}

/// Rearrangement of the tensor product `(f ⊗ u)(s,t) = f(s) u(t)`:
/// all `2^(rank f + rank u)` products, merged and sorted.
pub fn tensor_rearrangement(f: &DyadicStep, u: &DyadicStep) -> WeightedStep {
    let m = 1.0 / (f.values().len() * u.values().len()) as f64;
    let mut cells = Vec::with_capacity(f.values().len() * u.values().len());
    for &a in f.values() {
        for &b in u.values() {
            cells.push(((a * b).abs(), m));
        }
    }
    WeightedStep::from_cells(cells)
}

/// True iff the two decreasing rearrangements agree as staircases within
/// `tol` (identical distribution functions).
pub fn equimeasurable(x: &WeightedStep, y: &WeightedStep, tol: f64) -> bool {
    x.staircase_gap(y, tol) <= tol
}

pub fn equimeasurable_steps(x: &DyadicStep, y: &DyadicStep, tol: f64) -> bool {
    equimeasurable(&rearrangement(x), &rearrangement(y), tol)
}

/// Rearrangement of `sigma_tau x` for `tau` in `(0, 1]`: every measure is
/// scaled by `tau` and a zero cell of measure `1 - tau` is appended.
pub fn dilation(x: &WeightedStep, tau: f64) -> Result<WeightedStep> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::BadDilation { tau });
    }
    let mut cells: Vec<(f64, f64)> = x.cells().iter().map(|&(v, m)| (v, m * tau)).collect();
    if tau < 1.0 {
        cells.push((0.0, 1.0 - tau));
    }
    Ok(WeightedStep::from_cells(cells))
}

pub fn dilation_step(x: &DyadicStep, tau: f64) -> Result<WeightedStep> {
    dilation(&rearrangement(x), tau)
}
