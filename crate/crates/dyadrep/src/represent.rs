//! Frame checking and the greedy construction of absolutely representing
//! expansions `x = sum_alpha xi_alpha V^alpha f`.
//!
//! The greedy loop rests on an exact identity for steps: if the residual
//! `r` has rank `k`, then `r = sum_beta c_beta V^beta 1` with `c_beta` the
//! cell values of `r`, so emitting the block `lambda* c_beta` on `f` leaves
//! the residual `sum_beta c_beta V^beta (1 - lambda* f)`. Each round is a
//! sparse block substitution; ranks grow by `rank(f)` per round, which is
//! why residuals are carried in the sparse representation.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicStep;
use crate::error::{Error, Result};
use crate::multiplicator::multiplicator_lower;
use crate::operators::{coefficient_block, DilationSystem};
use crate::optimize::expanding_min;
use crate::rearrange::{dilation, rearrangement};
use crate::sampling::random_decreasing_step;
use crate::sparse::{CellFn, SparseStep, SPARSE_RANK_LIMIT};
use crate::spaces::SpaceSpec;

/// Slack below 1 at which a computed contraction factor is treated as
/// "no contraction": the minimum over lambda evaluates to exactly 1 in
/// the degenerate cases, up to rounding.
const CONTRACTION_SLACK: f64 = 1e-9;

/// Cap on nonzero residual cells per round; exceeding it triggers tracked
/// truncation of the smallest cells.
const CELL_BUDGET: usize = 1 << 16;

/// Expansion coefficients grouped by rank, sparse: each block stores only
/// the nonzero `(position, xi)` pairs among the `2^k` slots of rank `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientBlocks {
    pub start_rank: u32,
    pub blocks: BTreeMap<u32, Vec<(u128, f64)>>,
    /// `b_k = norm(X, sum_{|alpha|=k} xi_alpha V^alpha f)` per rank.
    pub block_norms: BTreeMap<u32, f64>,
    /// `sum_k b_k`.
    pub total_mass: f64,
}

/// One greedy round in the residual trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub rank: u32,
    pub residual_norm: f64,
    pub block_mass: f64,
    /// `residual_norm / previous residual_norm`.
    pub ratio: f64,
    pub truncated: bool,
    /// Sup of the cells dropped by pruning this round.
    pub truncation_sup: f64,
}

/// Result of `greedy_decompose`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    pub lambda: f64,
    pub theta: f64,
    pub converged: bool,
    pub truncated: bool,
    pub rounds: usize,
    pub target_norm: f64,
    pub final_residual: f64,
    pub blocks: CoefficientBlocks,
    pub trace: Vec<RoundRecord>,
}

/// Observed and theoretical frame bounds for the analysis operator
/// `y -> {P*_k y}` over random test functionals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameReport {
    pub a_observed: f64,
    pub b_observed: f64,
    /// `|<f, 1>|`.
    pub a_theory: f64,
    /// Heuristic upper estimate of the multiplicator norm of `f`.
    pub b_theory: f64,
    pub samples: usize,
    pub k_max: u32,
}

fn nonzero_cells(x: &DyadicStep) -> Vec<(u128, f64)> {
    SparseStep::from_dense(x).cells
}

fn contraction_norm(space: &SpaceSpec, h: &DyadicStep, seed: u64) -> f64 {
    match space {
        SpaceSpec::Lp { .. } => space.norm_step(h),
        _ => multiplicator_lower(space, h, 8, seed).0,
    }
}

/// Minimize the contraction norm of `1 - lambda f` over `lambda`.
/// For `Lp` the contraction norm is the plain norm; otherwise the
/// certified multiplicator lower estimate. Returns `(lambda*, theta)`;
/// `theta >= 1` is a legitimate outcome, reported as-is.
pub fn find_lambda(space: &SpaceSpec, f: &DyadicStep, seed: u64) -> Result<(f64, f64)> {
    if f.integral() == 0.0 {
        return Err(Error::ZeroIntegral);
    }
    let one = DyadicStep::one();
    let l1 = rearrangement(f).integral();
    let half = 2.0 / l1;
    let mut g = |lambda: f64| {
        let h = one.sub(&f.scale(lambda)).expect("ranks within cap");
        contraction_norm(space, &h, seed)
    };
    Ok(expanding_min(&mut g, -half, half, 1e-12))
}

/// Iteratively replace the residual by scaled translates of `1 - lambda* f`,
/// emitting one coefficient block per round, until
/// `norm(residual) <= tol * norm(x)` or `max_rounds`.
pub fn greedy_decompose(
    space: &SpaceSpec,
    f: &DyadicStep,
    x: &DyadicStep,
    tol: f64,
    max_rounds: usize,
    k0: u32,
    seed: u64,
) -> Result<Decomposition> {
    let (lambda, theta) = find_lambda(space, f, seed)?;
    if theta >= 1.0 - CONTRACTION_SLACK {
        return Err(Error::NoContraction { theta });
    }
    let g = DyadicStep::one().sub(&f.scale(lambda))?;
    let rg = g.rank();
    let pattern_g = nonzero_cells(&g);
    let pattern_f = nonzero_cells(&f.refine(rg)?);

    let target_norm = space.norm_step(x);
    let prune_threshold = 1e-13 * x.sup_norm();
    let mut r = SparseStep::from_dense(x);
    let mut prev_norm = space.norm(&r.to_weighted());

    let mut blocks: BTreeMap<u32, Vec<(u128, f64)>> = BTreeMap::new();
    let mut block_norms: BTreeMap<u32, f64> = BTreeMap::new();
    let mut total_mass = 0.0;
    let mut trace: Vec<RoundRecord> = Vec::new();
    let mut converged = prev_norm <= tol * target_norm;
    let mut truncated_run = false;

    for round in 0..max_rounds {
        if converged {
            break;
        }
        let k = r.rank.max(k0);
        if k + rg > SPARSE_RANK_LIMIT {
            truncated_run = true;
            break;
        }
        if k > r.rank {
            r = r.refine(k);
        }

        // emit the block xi_beta = lambda * c_beta at rank k
        let coeffs = SparseStep {
            rank: k,
            cells: r.cells.iter().map(|&(p, c)| (p, lambda * c)).collect(),
        };
        let block_fn = coeffs.expand(&pattern_f, rg);
        let b_k = space.norm(&block_fn.to_weighted());
        blocks.entry(k).or_default().extend(coeffs.cells.iter().copied());
        *block_norms.entry(k).or_insert(0.0) += b_k;
        total_mass += b_k;

        // residual update with tracked pruning
        let mut next = r.expand(&pattern_g, rg);
        let mut trunc_sup = next.prune(prune_threshold);
        trunc_sup = trunc_sup.max(next.truncate_to_budget(CELL_BUDGET));
        if trunc_sup > 0.0 {
            truncated_run = true;
        }
        let next_norm = space.norm(&next.to_weighted());
        let ratio = if prev_norm > 0.0 { next_norm / prev_norm } else { 0.0 };
        // pruning only removes cells, so the check stays valid either way
        if ratio > theta + 1e-9 {
            return Err(Error::ContractionViolated { round, ratio, theta });
        }
        trace.push(RoundRecord {
            round,
            rank: k,
            residual_norm: next_norm,
            block_mass: b_k,
            ratio,
            truncated: trunc_sup > 0.0,
            truncation_sup: trunc_sup,
        });
        r = next;
        prev_norm = next_norm;
        converged = prev_norm <= tol * target_norm;
    }

    Ok(Decomposition {
        lambda,
        theta,
        converged,
        truncated: truncated_run,
        rounds: trace.len(),
        target_norm,
        final_residual: prev_norm,
        blocks: CoefficientBlocks { start_rank: k0, blocks, block_norms, total_mass },
        trace,
    })
}

/// Dense evaluation of `sum_k sum_alpha xi_alpha V^alpha f` at the common
/// rank; fails with a rank-cap error when the blocks are too deep.
pub fn reconstruct(f: &DyadicStep, blocks: &CoefficientBlocks) -> Result<DyadicStep> {
    let mut acc = DyadicStep::constant(0.0);
    for (&k, cells) in &blocks.blocks {
        let cap = crate::dyadic::max_rank();
        if k > cap || k + f.rank() > cap {
            return Err(Error::RankCap { requested: k + f.rank(), cap });
        }
        let mut dense = vec![0.0; 1usize << k];
        for &(p, v) in cells {
            dense[p as usize] = v;
        }
        acc = acc.add(&coefficient_block(f, k, &dense)?)?;
    }
    Ok(acc)
}

/// `norm(X, x - sum_k sum_alpha xi_alpha V^alpha f)`, evaluated exactly in
/// the mixed-rank cell representation (no dense rank cap).
pub fn reconstruction_error(
    space: &SpaceSpec,
    f: &DyadicStep,
    blocks: &CoefficientBlocks,
    x: &DyadicStep,
) -> f64 {
    let rg = f.rank();
    let pattern_f = nonzero_cells(f);
    let mut acc = CellFn::from_dense(x).scale(-1.0);
    for (&k, cells) in &blocks.blocks {
        let coeffs = SparseStep { rank: k, cells: cells.clone() };
        acc = acc.add(&CellFn::from_sparse(&coeffs.expand(&pattern_f, rg)));
    }
    space.norm(&acc.to_weighted())
}

/// Observed frame bounds: for random functionals `y`, the ratio
/// `r(y) = sup_{k <= k_max} dual_norm(P*_k y) / dual_norm(y)`;
/// `A = min r`, `B = max r` over the sample.
pub fn frame_check(
    space: &SpaceSpec,
    f: &DyadicStep,
    samples: usize,
    k_max: u32,
    seed: u64,
) -> Result<FrameReport> {
    let system = DilationSystem::new(f.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a_observed = f64::INFINITY;
    let mut b_observed = 0.0f64;
    for i in 0..samples {
        let rank = 1 + (i % 5) as u32;
        let mut y = random_decreasing_step(&mut rng, rank, 1.0);
        if i % 2 == 1 {
            // signed perturbation: dual norms are rearrangement-invariant,
            // but the adjoint itself is sign-sensitive
            let values = y
                .values()
                .iter()
                .map(|&v| if rng.gen_bool(0.5) { -v } else { v })
                .collect();
            y = DyadicStep::new(rank, values)?;
        }
        let denom = space.dual_norm_step(&y)?;
        if denom == 0.0 {
            continue;
        }
        let mut r = 0.0f64;
        for k in 0..=k_max {
            let py = system.adjoint_project(k, &y)?;
            r = r.max(space.dual_norm_step(&py)? / denom);
        }
        a_observed = a_observed.min(r);
        b_observed = b_observed.max(r);
    }
    let b_theory = crate::multiplicator::multiplicator_upper(space, f, 64, seed);
    Ok(FrameReport {
        a_observed,
        b_observed,
        a_theory: f.integral().abs(),
        b_theory,
        samples,
        k_max,
    })
}

/// Mass constants of greedy runs started at each rank in `k0_list`;
/// boundedness uniformly in the start rank is the tail-system property.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TailRecord {
    pub k0: u32,
    pub mass: f64,
    pub rounds: usize,
    pub converged: bool,
}

pub fn tail_system_check(
    space: &SpaceSpec,
    f: &DyadicStep,
    x: &DyadicStep,
    k0_list: &[u32],
    tol: f64,
    max_rounds: usize,
    seed: u64,
) -> Result<Vec<TailRecord>> {
    k0_list
        .iter()
        .map(|&k0| {
            let d = greedy_decompose(space, f, x, tol, max_rounds, k0, seed)?;
            Ok(TailRecord {
                k0,
                mass: d.blocks.total_mass,
                rounds: d.rounds,
                converged: d.converged,
            })
        })
        .collect()
}

/// Ratio curve `t -> norm(X, sigma_t f) / (2 C |<f,1>| phi_X(t))` on
/// `t = 2^-j`; a representing generator must keep it at or below 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub curve: Vec<(f64, f64)>,
    pub pass: bool,
}

pub fn necessary_condition_check(
    space: &SpaceSpec,
    f: &DyadicStep,
    c_claim: f64,
    j_max: u32,
) -> Result<NecessaryReport> {
    if !f.is_nonneg_decreasing() {
        return Err(Error::NotDecreasing);
    }
    let mean = f.integral();
    if mean == 0.0 {
        return Err(Error::ZeroIntegral);
    }
    let w = rearrangement(f);
    let mut curve = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max {
        let t = 2f64.powi(-(j as i32));
        let num = space.norm(&dilation(&w, t)?);
        let den = 2.0 * c_claim * mean.abs() * space.fundamental(t)?;
        curve.push((t, num / den));
    }
    let pass = curve.iter().all(|&(_, r)| r <= 1.0 + 1e-9);
    Ok(NecessaryReport { curve, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::PhiFunction;

    fn half_generator() -> DyadicStep {
        DyadicStep::new(1, vec![2.0, 0.0]).unwrap()
    }

    #[test]
    fn lambda_for_unit_generator_kills_everything() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let (l, t) = find_lambda(&space, &DyadicStep::one(), 7).unwrap();
        assert!((l - 1.0).abs() < 1e-9);
        assert!(t < 1e-9);
    }

    #[test]
    fn lambda_for_half_indicator_matches_closed_form() {
        for p in [1.0, 1.5, 2.0, 3.0] {
            let space = SpaceSpec::lp(p).unwrap();
            let (l, t) = find_lambda(&space, &half_generator(), 7).unwrap();
            assert!((l - 0.5).abs() < 1e-9, "p={p}: lambda={l}");
            assert!((t - 2f64.powf(-1.0 / p)).abs() < 1e-9, "p={p}: theta={t}");
        }
    }

    #[test]
    fn unit_generator_is_exact_in_one_round() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let x = DyadicStep::new(2, vec![3.0, -1.0, 0.5, 2.0]).unwrap();
        let d = greedy_decompose(&space, &DyadicStep::one(), &x, 1e-12, 10, 0, 7).unwrap();
        assert!(d.converged);
        assert_eq!(d.rounds, 1);
        assert_eq!(d.final_residual, 0.0);
        assert!((d.blocks.total_mass - space.norm_step(&x)).abs() < 1e-12);
        let back = reconstruct(&DyadicStep::one(), &d.blocks).unwrap();
        assert_eq!(back.sub(&x).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn residual_norms_match_the_closed_form() {
        // x = 1, f = 2 on [0,1/2): residual after round m is a single cell
        // of value 1 and measure 2^-m, so its L2 norm is 2^{-m/2}
        let space = SpaceSpec::lp(2.0).unwrap();
        let d =
            greedy_decompose(&space, &half_generator(), &DyadicStep::one(), 1e-6, 60, 0, 7)
                .unwrap();
        assert!(d.converged);
        for rec in &d.trace {
            let oracle = 2f64.powf(-((rec.round + 1) as f64) / 2.0);
            assert!((rec.residual_norm - oracle).abs() < 1e-12);
            assert!(rec.ratio <= 2f64.powf(-0.5) + 1e-9);
            assert!(!rec.truncated);
        }
        let mass_cap = 1.0 / (1.0 - 2f64.powf(-0.5)) * 1.01;
        assert!(d.blocks.total_mass <= mass_cap);
    }

    #[test]
    fn dense_round_trip_matches_sparse_error() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let x = DyadicStep::new(2, vec![1.0, 0.25, -0.5, 2.0]).unwrap();
        let f = half_generator();
        let d = greedy_decompose(&space, &f, &x, 1e-3, 40, 0, 7).unwrap();
        assert!(d.converged);
        let err_sparse = reconstruction_error(&space, &f, &d.blocks, &x);
        let back = reconstruct(&f, &d.blocks).unwrap();
        let err_dense = space.norm_step(&back.sub(&x).unwrap());
        assert!((err_sparse - err_dense).abs() < 1e-12);
        assert!(err_dense <= d.final_residual + 1e-12);
    }

    #[test]
    fn start_rank_only_shifts_the_blocks() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let recs = tail_system_check(
            &space,
            &half_generator(),
            &DyadicStep::one(),
            &[0, 1, 2, 3],
            1e-6,
            80,
            7,
        )
        .unwrap();
        let masses: Vec<f64> = recs.iter().map(|r| r.mass).collect();
        let (lo, hi) =
            masses.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &m| (l.min(m), h.max(m)));
        assert!(hi <= lo * 1.05, "masses {masses:?}");
        assert!(recs.iter().all(|r| r.converged));
    }

    #[test]
    fn no_contraction_for_the_lorentz_obstruction() {
        // f has positive mean but negative pairing with phi', so the
        // Lorentz norm of 1 - lambda f never drops below 1
        let space = SpaceSpec::lorentz(PhiFunction::power(2.0).unwrap());
        let f = DyadicStep::new(2, vec![-2.0, 1.0, 1.0, 1.0]).unwrap();
        let err = greedy_decompose(&space, &f, &DyadicStep::one(), 1e-6, 10, 0, 7).unwrap_err();
        assert!(matches!(err, Error::NoContraction { theta } if theta >= 1.0 - 1e-9));
    }

    #[test]
    fn zero_mean_generator_is_rejected() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let f = DyadicStep::new(1, vec![1.0, -1.0]).unwrap();
        assert!(matches!(
            find_lambda(&space, &f, 7),
            Err(Error::ZeroIntegral)
        ));
    }

    #[test]
    fn frame_ratios_for_unit_generator_are_one() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let rep = frame_check(&space, &DyadicStep::one(), 20, 8, 7).unwrap();
        assert_eq!(rep.a_observed, 1.0);
        assert_eq!(rep.b_observed, 1.0);
    }

    #[test]
    fn frame_bounds_for_half_indicator_in_l2() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let rep = frame_check(&space, &half_generator(), 24, 12, 7).unwrap();
        assert!(rep.a_observed <= rep.b_observed);
        assert!(rep.a_observed >= 1.0 - 0.05, "A={}", rep.a_observed);
        assert!(rep.b_observed <= 2f64.sqrt() + 0.05, "B={}", rep.b_observed);
        assert!((rep.a_theory - 1.0).abs() < 1e-12);
    }

    #[test]
    fn necessary_curve_for_unit_is_one_half() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let rep = necessary_condition_check(&space, &DyadicStep::one(), 1.0, 10).unwrap();
        assert!(rep.pass);
        for &(_, r) in &rep.curve {
            assert!((r - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn necessary_curve_grows_for_heavy_tail_in_slow_log() {
        let space = SpaceSpec::lorentz(PhiFunction::slow_log().unwrap());
        let f = DyadicStep::from_averages(12, |a, b| {
            // cell average of 1 + ln(1/t): antiderivative 2t - t ln t
            let ft = |t: f64| if t == 0.0 { 0.0 } else { 2.0 * t - t * t.ln() };
            (ft(b) - ft(a)) / (b - a)
        })
        .unwrap();
        let rep = necessary_condition_check(&space, &f, 1.0, 10).unwrap();
        let first = rep.curve[1].1;
        let last = rep.curve.last().unwrap().1;
        assert!(last > 1.4 * first, "first={first} last={last}");
    }

    #[test]
    fn non_decreasing_target_is_rejected_by_necessary_check() {
        let space = SpaceSpec::lp(2.0).unwrap();
        let f = DyadicStep::new(1, vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            necessary_condition_check(&space, &f, 1.0, 4),
            Err(Error::NotDecreasing)
        ));
    }
}
