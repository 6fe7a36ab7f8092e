//! Exact arithmetic on dyadic step functions: construction, refinement,
//! coarsening (the average projection), integrals and pointwise algebra.
//!
//! A [`DyadicStep`] of rank `n` is constant on each of the `2^n` half-open
//! cells `[i 2^-n, (i+1) 2^-n)` of `[0,1]`. All operations stay exact in
//! dyadic arithmetic.

use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

static MAX_RANK: AtomicU32 = AtomicU32::new(22);

/// Current dense rank cap (default 22, about 4M cells).
pub fn max_rank() -> u32 {
    MAX_RANK.load(Ordering::Relaxed)
}

/// Override the dense rank cap (e.g. from `DYADREP_MAX_RANK`).
pub fn set_max_rank(cap: u32) {
    MAX_RANK.store(cap, Ordering::Relaxed);
}

fn check_cap(rank: u32) -> Result<()> {
    let cap = max_rank();
    if rank > cap {
        Err(Error::RankCap { requested: rank, cap })
    } else {
        Ok(())
    }
}

/// A function on `[0,1]` constant on the dyadic cells of a fixed rank.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicStep {
    rank: u32,
    values: Vec<f64>,
}

impl<'de> Deserialize<'de> for DyadicStep {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            rank: u32,
            values: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        DyadicStep::new(raw.rank, raw.values).map_err(serde::de::Error::custom)
    }
}

impl DyadicStep {
    pub fn new(rank: u32, values: Vec<f64>) -> Result<Self> {
        check_cap(rank)?;
        let expected = 1usize << rank;
        if values.len() != expected {
            return Err(Error::CellCount { rank, expected, got: values.len() });
        }
        Ok(Self { rank, values })
    }

    pub fn constant(c: f64) -> Self {
        Self { rank: 0, values: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// Characteristic function of `[0, cells * 2^-rank)`.
    pub fn indicator_prefix(rank: u32, cells: usize) -> Result<Self> {
        check_cap(rank)?;
        let n = 1usize << rank;
        if cells > n {
            return Err(Error::CellCount { rank, expected: n, got: cells });
        }
        let mut values = vec![0.0; n];
        values[..cells].fill(1.0);
        Ok(Self { rank, values })
    }

    /// Build from exact cell averages: `avg(a, b)` must return the mean of
    /// the underlying function over `[a, b]`. This equals the projection
    /// `P_rank` of the continuous function.
    pub fn from_averages(rank: u32, avg: impl Fn(f64, f64) -> f64) -> Result<Self> {
        check_cap(rank)?;
        let n = 1usize << rank;
        let h = 1.0 / n as f64;
        let values = (0..n).map(|i| avg(i as f64 * h, (i + 1) as f64 * h)).collect();
        Ok(Self { rank, values })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Replicate every cell value `2^(m - rank)` times.
    pub fn refine(&self, m: u32) -> Result<Self> {
        if m < self.rank {
            return Err(Error::RankOrder { requested: m, have: self.rank });
        }
        check_cap(m)?;
        if m == self.rank {
            return Ok(self.clone());
        }
        let reps = 1usize << (m - self.rank);
        let mut values = Vec::with_capacity(self.values.len() * reps);
        for &v in &self.values {
            values.extend(std::iter::repeat_n(v, reps));
        }
        Ok(Self { rank: m, values })
    }

    /// Average projection onto rank `k`: cell `j` becomes the mean of the
    /// covered cells. Preserves the integral exactly.
    pub fn coarsen(&self, k: u32) -> Result<Self> {
        if k > self.rank {
            return Err(Error::RankOrder { requested: k, have: self.rank });
        }
        let group = 1usize << (self.rank - k);
        let inv = 1.0 / group as f64;
        let values = self
            .values
            .chunks_exact(group)
            .map(|chunk| chunk.iter().sum::<f64>() * inv)
            .collect();
        Ok(Self { rank: k, values })
    }

    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `<x, y> = \int x y` at the common refinement.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        let (a, b) = Self::common(self, other)?;
        let n = a.values.len() as f64;
        Ok(a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum::<f64>() / n)
    }

    fn common(x: &Self, y: &Self) -> Result<(Self, Self)> {
        let m = x.rank.max(y.rank);
        Ok((x.refine(m)?, y.refine(m)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    fn zip(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let (mut a, b) = Self::common(self, other)?;
        for (x, y) in a.values.iter_mut().zip(&b.values) {
            *x = op(*x, *y);
        }
        Ok(a)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        let values = self.values.iter().map(|v| v * lambda).collect();
        Self { rank: self.rank, values }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_nonneg_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1]) && self.values.last().is_none_or(|&v| v >= 0.0)
    }
}

/// A bit string addressing the dyadic interval `I_alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    bits: Vec<u8>,
}

impl MultiIndex {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadFamily("multi-index bits must be 0 or 1".into()));
        }
        Ok(Self { bits })
    }

    pub fn empty() -> Self {
        Self { bits: Vec::new() }
    }

    /// Index of rank `k` addressing cell `pos` (most significant bit first).
    pub fn from_position(k: u32, pos: u64) -> Self {
        let bits = (0..k).rev().map(|nu| ((pos >> nu) & 1) as u8).collect();
        Self { bits }
    }

    pub fn len(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `i = sum of alpha_nu 2^(k - nu)`.
    pub fn position(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }
}
