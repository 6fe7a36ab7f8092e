//! The dilation/translation operator algebra: `V_0`, `V_1`, `W`, `V^alpha`,
//! the projections `P_{k,f}` and the adjoint `P*_{k,f}`.

use crate::dyadic::{DyadicStep, MultiIndex};
use crate::error::{Error, Result};

/// A generator `f` with nonzero mean, the carrier of the system
/// `{V^alpha f}`.
#[derive(Clone, Debug)]
pub struct DilationSystem {
    f: DyadicStep,
    mean: f64,
}

impl DilationSystem {
    /// Fails when the generator integrates to zero.
    pub fn new(f: DyadicStep) -> Result<Self> {
        let mean = f.integral();
        if mean == 0.0 {
            return Err(Error::ZeroIntegral);
        }
        Ok(Self { f, mean })
    }

    pub fn generator(&self) -> &DyadicStep {
        &self.f
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn is_normalized(&self) -> bool {
        (self.mean - 1.0).abs() <= 1e-12
    }

    /// The same system scaled so that `<f, 1> = 1`.
    pub fn normalized(&self) -> Self {
        Self { f: self.f.scale(1.0 / self.mean), mean: 1.0 }
    }

    /// `P_{k,f} x = 2^k sum_{|alpha|=k} <x, V^alpha 1> V^alpha f`.
    /// Requires the normalization `<f, 1> = 1`; the result has rank
    /// `k + rank(f)` and the coefficients are exact scaled partial sums.
    pub fn project(&self, k: u32, x: &DyadicStep) -> Result<DyadicStep> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let coeffs = block_means(x, k)?;
        scaled_translates(&self.f, k, &coeffs)
    }

    /// `P*_{k,f} y`: the rank-`k` step whose cell at `position(alpha)` is
    /// `2^k <V^alpha f, y>`.
    pub fn adjoint_project(&self, k: u32, y: &DyadicStep) -> Result<DyadicStep> {
        let m = k + self.f.rank();
        let yr = y.refine(m.max(y.rank()))?;
        let sub = 1usize << (yr.rank() - k);
        let group = 1usize << (yr.rank() - m); // cells of y under one cell of f
        let fv = self.f.values();
        let inv = 1.0 / sub as f64;
        let values = yr
            .values()
            .chunks_exact(sub)
            .map(|block| {
                // 2^k * <V^alpha f, y> = mean over I_alpha of f(2^k t - i) y(t) * 2^k...
                // computed as the average of f_j * y over the block.
                block
                    .chunks_exact(group)
                    .zip(fv)
                    .map(|(ys, &fj)| fj * ys.iter().sum::<f64>())
                    .sum::<f64>()
                    * inv
            })
            .collect();
        DyadicStep::new(k, values)
    }
}

/// Means of `x` over the rank-`k` dyadic cells, i.e. `2^k <x, V^alpha 1>`.
fn block_means(x: &DyadicStep, k: u32) -> Result<Vec<f64>> {
    let x = if x.rank() >= k { x.clone() } else { x.refine(k)? };
    Ok(x.coarsen(k)?.into_values())
}

/// `sum_i c_i V^{alpha_i} f` with `alpha_i` running over all rank-`k`
/// indices in position order.
fn scaled_translates(f: &DyadicStep, k: u32, coeffs: &[f64]) -> Result<DyadicStep> {
    debug_assert_eq!(coeffs.len(), 1usize << k);
    let fv = f.values();
    let mut values = Vec::with_capacity(coeffs.len() * fv.len());
    for &c in coeffs {
        values.extend(fv.iter().map(|&v| c * v));
    }
    DyadicStep::new(k + f.rank(), values)
}

/// `V_0` (compress onto the left half) or `V_1` (right half).
pub fn apply_v(bit: u8, x: &DyadicStep) -> Result<DyadicStep> {
    let n = x.values().len();
    let mut values = vec![0.0; 2 * n];
    let offset = if bit == 0 { 0 } else { n };
    values[offset..offset + n].copy_from_slice(x.values());
    DyadicStep::new(x.rank() + 1, values)
}

/// `V^alpha x = V_{alpha_1} ... V_{alpha_k} x`: `x` compressed by
/// `2^-|alpha|` onto the dyadic interval at `position(alpha)`.
pub fn apply_v_alpha(alpha: &MultiIndex, x: &DyadicStep) -> Result<DyadicStep> {
    let k = alpha.len();
    let rank = k + x.rank();
    let n = x.values().len();
    let mut values = vec![0.0; n << k];
    let start = alpha.position() as usize * n;
    values[start..start + n].copy_from_slice(x.values());
    DyadicStep::new(rank, values)
}

/// `W^k f`: `2^k` periodized copies of `f`; equals
/// `sum_{|alpha|=k} V^alpha f` exactly.
pub fn apply_w_power(k: u32, f: &DyadicStep) -> Result<DyadicStep> {
    let mut values = Vec::with_capacity(f.values().len() << k);
    for _ in 0..1usize << k {
        values.extend_from_slice(f.values());
    }
    DyadicStep::new(k + f.rank(), values)
}

/// `sum_{|alpha|=k} xi_alpha V^alpha f` for a dense coefficient block.
pub fn coefficient_block(f: &DyadicStep, k: u32, coeffs: &[f64]) -> Result<DyadicStep> {
    if coeffs.len() != 1usize << k {
        return Err(Error::CellCount { rank: k, expected: 1usize << k, got: coeffs.len() });
    }
    scaled_translates(f, k, coeffs)
}
