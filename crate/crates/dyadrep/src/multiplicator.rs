//! Estimation of the multiplicator norm of a generator (the operator norm
//! of `y -> f tensor y`) together with the membership criteria: the
//! dilation-ratio criterion for Lorentz spaces and the grid check backing
//! the Marcinkiewicz sufficient condition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dyadic::DyadicStep;
use crate::error::{Error, Result};
use crate::rearrange::{dilation_step, rearrangement, tensor_rearrangement};
use crate::sampling::random_decreasing_step;
use crate::spaces::{PhiFunction, SpaceSpec};

/// Witness achieving the reported lower bound.
#[derive(Clone, Debug, Serialize)]
pub enum Witness {
    /// Indicator of a prefix interval of the given measure.
    Dilation { t: f64 },
    /// An explicit decreasing step.
    Step(DyadicStep),
}

/// Two-sided report: `lower` is certified (every evaluated ratio is an
/// exact lower bound for the operator norm), `upper` is the heuristic
/// search envelope.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicatorEstimate {
    pub lower: f64,
    pub upper: f64,
    pub witness_lower: Witness,
    pub iterations: usize,
}

fn tensor_ratio(space: &SpaceSpec, f: &DyadicStep, u: &DyadicStep) -> f64 {
    let denom = space.norm_step(u);
    if denom == 0.0 {
        return 0.0;
    }
    space.norm(&tensor_rearrangement(f, u)) / denom
}

/// Certified lower bound: max ratio over prefix indicators
/// `t = 2^-j, j <= grid_rank` and seeded random decreasing steps.
pub fn multiplicator_lower(
    space: &SpaceSpec,
    f: &DyadicStep,
    grid_rank: u32,
    seed: u64,
) -> (f64, Witness) {
    let mut best = space.norm_step(f); // witness U = 1
    let mut witness = Witness::Dilation { t: 1.0 };
    let mut iterations = 1usize;
    // prefix indicators: the ratio is norm(sigma_t f) / phi_X(t)
    for j in 1..=grid_rank {
        let t = 2f64.powi(-(j as i32));
        let num = space.norm(&dilation_step(f, t).unwrap());
        let den = space.fundamental(t).expect("t in (0,1]");
        iterations += 1;
        if num / den > best {
            best = num / den;
            witness = Witness::Dilation { t };
        }
    }
    // random decreasing steps, ranks kept small enough that the tensor
    // product stays at desk scale
    let rank = grid_rank.min(20u32.saturating_sub(f.rank())).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..48 {
        let r = rng.gen_range(1..=rank);
        let u = random_decreasing_step(&mut rng, r, 4.0);
        let ratio = tensor_ratio(space, f, &u);
        iterations += 1;
        if ratio > best {
            best = ratio;
            witness = Witness::Step(u);
        }
    }
    let _ = iterations;
    (best, witness)
}

/// Heuristic upper envelope: coordinate-ascent over decreasing steps with
/// random restarts until the evaluation budget is spent.
pub fn multiplicator_upper(space: &SpaceSpec, f: &DyadicStep, budget: usize, seed: u64) -> f64 {
    let rank = 6u32.min(20u32.saturating_sub(f.rank())).max(1);
    let n = 1usize << rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut best = space.norm_step(f);
    let mut spent = 0usize;
    while spent < budget {
        let mut u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..4.0)).collect();
        u.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let make = |vals: &[f64]| DyadicStep::new(rank, vals.to_vec()).unwrap();
        let mut cur = tensor_ratio(space, f, &make(&u));
        spent += 1;
        let mut improved = true;
        while improved && spent < budget {
            improved = false;
            for i in 0..n {
                for factor in [0.25, 0.5, 0.9, 1.1, 2.0, 4.0] {
                    let mut cand = u.clone();
                    cand[i] *= factor;
                    // the ratio depends on the value multiset only, so keep
                    // the decreasing canonical form
                    cand.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    let r = tensor_ratio(space, f, &make(&cand));
                    spent += 1;
                    if r > cur * (1.0 + 1e-12) {
                        cur = r;
                        u = cand;
                        improved = true;
                    }
                    if spent >= budget {
                        break;
                    }
                }
                if spent >= budget {
                    break;
                }
            }
        }
        best = best.max(cur);
    }
    best
}

/// Combined two-sided estimate.
pub fn estimate(
    space: &SpaceSpec,
    f: &DyadicStep,
    grid_rank: u32,
    budget: usize,
    seed: u64,
) -> MultiplicatorEstimate {
    let (lower, witness_lower) = multiplicator_lower(space, f, grid_rank, seed);
    let upper = multiplicator_upper(space, f, budget, seed).max(lower);
    MultiplicatorEstimate { lower, upper, witness_lower, iterations: budget }
}

/// Verdict of the dilation-ratio criterion for membership of a decreasing
/// `f` in the multiplicator space of a Lorentz space.
#[derive(Clone, Debug, Serialize)]
pub struct LorentzMembership {
    /// `(j, norm(sigma_{2^-j} f) / phi(2^-j))` for `j = 0..=grid_rank`.
    pub curve: Vec<(u32, f64)>,
    /// True when the ratio curve stabilizes (or decreases) over the last
    /// third of the grid; false when it keeps growing.
    pub bounded: bool,
}

/// Ratio curve `j -> norm(Lambda_phi, sigma_{2^-j} f) / phi(2^-j)` for a
/// decreasing nonnegative generator.
pub fn lorentz_membership(
    phi: &PhiFunction,
    f: &DyadicStep,
    grid_rank: u32,
) -> Result<LorentzMembership> {
    if !f.is_nonneg_decreasing() {
        return Err(Error::NotDecreasing);
    }
    let space = SpaceSpec::lorentz(*phi);
    let fr = rearrangement(f);
    let curve: Vec<(u32, f64)> = (0..=grid_rank)
        .map(|j| {
            let t = 2f64.powi(-(j as i32));
            let num = space.norm(&crate::rearrange::dilation(&fr, t).unwrap());
            (j, num / phi.eval(t))
        })
        .collect();
    let tail_start = (curve.len() * 2) / 3;
    let tail = &curve[tail_start..];
    let non_increasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-9);
    let lo = tail.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let hi = tail.iter().map(|c| c.1).fold(0.0f64, f64::max);
    let stabilized = hi <= lo * 1.01;
    Ok(LorentzMembership { curve, bounded: non_increasing || stabilized })
}

/// Grid check of the sufficient condition `phi(t) <= C phi(t^2)` for the
/// Marcinkiewicz multiplicator identity: returns the max ratio and whether
/// it stabilizes under refinement.
pub fn marcinkiewicz_sufficient(phi: &PhiFunction, grid_rank: u32) -> (f64, bool) {
    let scan = |n: u32| -> f64 {
        (0..=n)
            .map(|j| {
                let t = 2f64.powi(-(j as i32));
                phi.eval(t) / phi.eval(t * t)
            })
            .fold(0.0f64, f64::max)
    };
    let maxima: Vec<f64> = [1, 2, 4].iter().map(|&k| scan(grid_rank * k)).collect();
    // saturating growth: increments shrink under refinement; an unbounded
    // ratio grows geometrically instead
    let bounded = maxima[2] - maxima[1] <= maxima[1] - maxima[0] + 1e-9;
    (maxima[0], bounded)
}
