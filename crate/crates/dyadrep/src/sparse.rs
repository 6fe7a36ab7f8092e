//! Sparse dyadic carriers for the representation engine.
//!
//! Residuals in the greedy loop live at ranks far beyond the dense cap but
//! keep only a handful of nonzero cells, so they are stored as sorted
//! `(position, value)` lists at a uniform rank. Reconstructions are sums of
//! blocks at many different ranks; those are accumulated in an adaptive
//! partition of `[0,1]` into dyadic cells of mixed ranks.

use crate::dyadic::DyadicStep;
use crate::rearrange::WeightedStep;

/// Hard limit for sparse positions; positions are `u128`.
pub(crate) const SPARSE_RANK_LIMIT: u32 = 120;

/// A rank-`k` step with explicit nonzero cells only, sorted by position.
#[derive(Clone, Debug)]
pub(crate) struct SparseStep {
    pub rank: u32,
    pub cells: Vec<(u128, f64)>,
}

impl SparseStep {
    pub fn from_dense(x: &DyadicStep) -> Self {
        let cells = x
            .values()
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, &v)| (i as u128, v))
            .collect();
        Self { rank: x.rank(), cells }
    }

    pub fn measure_per_cell(&self) -> f64 {
        2f64.powi(-(self.rank as i32))
    }

    /// Replicate each cell into its children at rank `m >= rank`.
    pub fn refine(&self, m: u32) -> Self {
        assert!(m >= self.rank && m <= SPARSE_RANK_LIMIT);
        let d = m - self.rank;
        let mut cells = Vec::with_capacity(self.cells.len() << d);
        for &(pos, v) in &self.cells {
            let base = pos << d;
            for j in 0..(1u128 << d) {
                cells.push((base + j, v));
            }
        }
        Self { rank: m, cells }
    }

    /// Decreasing rearrangement; the zero remainder of `[0,1]` is included.
    pub fn to_weighted(&self) -> WeightedStep {
        let m = self.measure_per_cell();
        let mut cells: Vec<(f64, f64)> = self.cells.iter().map(|&(_, v)| (v.abs(), m)).collect();
        let covered = m * self.cells.len() as f64;
        if covered < 1.0 {
            cells.push((0.0, 1.0 - covered));
        }
        WeightedStep::from_cells(cells)
    }

    /// Expand each cell `c` into the pattern `pattern` scaled by `c`:
    /// the sparse form of `sum_beta c_beta V^beta g` where `pattern` holds
    /// the nonzero cells of `g` at rank `pattern_rank`.
    pub fn expand(&self, pattern: &[(u128, f64)], pattern_rank: u32) -> Self {
        let rank = self.rank + pattern_rank;
        assert!(rank <= SPARSE_RANK_LIMIT, "sparse rank limit exceeded");
        let mut cells = Vec::with_capacity(self.cells.len() * pattern.len());
        for &(pos, c) in &self.cells {
            let base = pos << pattern_rank;
            for &(j, g) in pattern {
                cells.push((base + j, c * g));
            }
        }
        Self { rank, cells }
    }

    /// Drop cells with `|value| <= threshold`; returns the sup of the
    /// dropped values (a bound for the norm of the discarded function in
    /// any normalized symmetric space).
    pub fn prune(&mut self, threshold: f64) -> f64 {
        let mut dropped: f64 = 0.0;
        self.cells.retain(|&(_, v)| {
            if v.abs() <= threshold {
                dropped = dropped.max(v.abs());
                false
            } else {
                true
            }
        });
        dropped
    }

    /// Keep at most `budget` cells, discarding the smallest values.
    /// Returns the sup of the dropped values.
    pub fn truncate_to_budget(&mut self, budget: usize) -> f64 {
        if self.cells.len() <= budget {
            return 0.0;
        }
        let mut by_mag = self.cells.clone();
        by_mag.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());
        let cutoff = by_mag[budget].1.abs();
        let dropped = cutoff;
        // keep strictly larger values plus ties up to the budget
        let mut kept = 0usize;
        self.cells.retain(|&(_, v)| {
            if kept < budget && v.abs() >= cutoff {
                kept += 1;
                true
            } else {
                v.abs() > cutoff && {
                    kept += 1;
                    true
                }
            }
        });
        dropped
    }
}

/// A function on `[0,1]` given by disjoint dyadic cells of mixed ranks
/// covering the whole interval, sorted by position.
#[derive(Clone, Debug)]
pub(crate) struct CellFn {
    /// `(rank, position, value)` triples.
    pub cells: Vec<(u32, u128, f64)>,
}

fn start_scaled(rank: u32, pos: u128) -> u128 {
    pos << (SPARSE_RANK_LIMIT - rank)
}

impl CellFn {
    pub fn zero() -> Self {
        Self { cells: vec![(0, 0, 0.0)] }
    }

    pub fn from_dense(x: &DyadicStep) -> Self {
        let cells =
            x.values().iter().enumerate().map(|(i, &v)| (x.rank(), i as u128, v)).collect();
        Self { cells }
    }

    /// Build from a sparse step, filling the gaps between nonzero cells
    /// with the minimal set of zero dyadic cells.
    pub fn from_sparse(x: &SparseStep) -> Self {
        let mut cells: Vec<(u32, u128, f64)> = Vec::new();
        let mut cursor: u128 = 0; // position at rank x.rank
        for &(pos, v) in &x.cells {
            push_zero_gap(&mut cells, x.rank, cursor, pos);
            cells.push((x.rank, pos, v));
            cursor = pos + 1;
        }
        push_zero_gap(&mut cells, x.rank, cursor, 1u128 << x.rank);
        if cells.is_empty() {
            return Self::zero();
        }
        Self { cells }
    }

    pub fn scale(&self, lambda: f64) -> Self {
        Self { cells: self.cells.iter().map(|&(r, p, v)| (r, p, v * lambda)).collect() }
    }

    /// Pointwise sum; overlapping cells are nested because both operands
    /// partition `[0,1]` into dyadic cells, so the result refines locally
    /// to the finer of the two.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.cells, &other.cells);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() && j < b.len() {
            let (ra, pa, va) = a[i];
            let (rb, pb, vb) = b[j];
            let (rank, pos) = if ra >= rb { (ra, pa) } else { (rb, pb) };
            out.push((rank, pos, va + vb));
            let end_a = start_scaled(ra, pa + 1);
            let end_b = start_scaled(rb, pb + 1);
            if end_a <= end_b {
                i += 1;
            }
            if end_b <= end_a {
                j += 1;
            }
        }
        debug_assert!(i == a.len() && j == b.len(), "operands must both cover [0,1]");
        Self { cells: out }
    }

    pub fn to_weighted(&self) -> WeightedStep {
        let cells = self
            .cells
            .iter()
            .map(|&(r, _, v)| (v.abs(), 2f64.powi(-(r as i32))))
            .collect();
        WeightedStep::from_cells(cells)
    }
}

/// Decompose the gap `[from, to)` (cell indices at `rank`) into maximal
/// aligned dyadic cells and push them with value zero.
fn push_zero_gap(cells: &mut Vec<(u32, u128, f64)>, rank: u32, mut from: u128, to: u128) {
    while from < to {
        let align = if from == 0 { rank } else { from.trailing_zeros().min(rank) };
        let span = 127 - (to - from).leading_zeros();
        let s = align.min(span);
        cells.push((rank - s, from >> s, 0.0));
        from += 1u128 << s;
    }
}
