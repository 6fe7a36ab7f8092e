//! Smoothness of a symmetric space at the constant function, probed through
//! `inf_lambda ||1 - lambda f||`: the infimum stays at 1 exactly when two
//! different norming functionals exist at 1. Houses the two-sign witness
//! construction showing Lorentz spaces are never smooth there.

use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicStep;
use crate::error::{Error, Result};
use crate::optimize::expanding_min;
use crate::rearrange::rearrangement;
use crate::spaces::{PhiFunction, SpaceSpec};

/// Minimize `lambda -> norm(X, 1 - lambda f)` (convex) over an expanding
/// bracket; returns `(lambda_min, value)`. The value never exceeds 1
/// since `lambda = 0` attains exactly 1.
pub fn min_over_lambda(space: &SpaceSpec, f: &DyadicStep, tol: f64) -> (f64, f64) {
    let one = DyadicStep::one();
    let l1 = rearrangement(f).integral();
    if l1 == 0.0 {
        return (0.0, 1.0);
    }
    let half = 2.0 / l1;
    let mut g = |lambda: f64| {
        space.norm_step(&one.sub(&f.scale(lambda)).expect("ranks within cap"))
    };
    expanding_min(&mut g, -half, half, tol)
}

/// A generator with positive mean but negative pairing against `phi'` —
/// the two functionals pull in opposite directions, so no scaling of it
/// brings `1 - lambda f` below norm 1 in the Lorentz space of `phi`.
/// Shape: `-c` on `[0, u)`, `1` on `[u, 1)` with `u = 1/4` and `c` the
/// midpoint of the feasible interval `(1/phi(u) - 1, (1-u)/u)`.
pub fn lorentz_witness(phi: &PhiFunction) -> Result<DyadicStep> {
    let u = 0.25;
    let lo = 1.0 / phi.eval(u) - 1.0;
    let hi = (1.0 - u) / u;
    if hi - lo <= 1e-9 {
        // phi(u) <= u: the family behaves like L1 near zero
        return Err(Error::NoWitness);
    }
    let c = 0.5 * (lo + hi);
    DyadicStep::new(2, vec![-c, 1.0, 1.0, 1.0])
}

/// `phi'` discretized as exact cell averages, so `<1, phi'> = phi(1)`
/// holds exactly on the grid.
pub fn phi_prime_step(phi: &PhiFunction, rank: u32) -> Result<DyadicStep> {
    DyadicStep::from_averages(rank, |a, b| (phi.eval(b) - phi.eval(a)) / (b - a))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmoothnessEntry {
    pub dual_norm: f64,
    /// `<1, y>`.
    pub pairing: f64,
    /// Both quantities equal 1 within 1e-9: `y` norms the constant 1.
    pub achieves: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub entries: Vec<SmoothnessEntry>,
    /// Two distinct candidates both norm the constant 1.
    pub non_smooth: bool,
}

/// Evaluate `(dual_norm(y), <1, y>)` for each candidate functional and
/// flag non-smoothness when two distinct candidates achieve `(1, 1)`.
pub fn smoothness_probe(
    space: &SpaceSpec,
    candidates: &[DyadicStep],
) -> Result<SmoothnessReport> {
    let mut entries = Vec::with_capacity(candidates.len());
    let mut achievers: Vec<&DyadicStep> = Vec::new();
    for y in candidates {
        let dual_norm = space.dual_norm_step(y)?;
        let pairing = y.integral();
        let achieves = (dual_norm - 1.0).abs() <= 1e-9 && (pairing - 1.0).abs() <= 1e-9;
        if achieves
            && !achievers
                .iter()
                .any(|z| z.sub(y).map(|d| d.sup_norm() <= 1e-9).unwrap_or(false))
        {
            achievers.push(y);
        }
        entries.push(SmoothnessEntry { dual_norm, pairing, achieves });
    }
    Ok(SmoothnessReport { entries, non_smooth: achievers.len() >= 2 })
}
