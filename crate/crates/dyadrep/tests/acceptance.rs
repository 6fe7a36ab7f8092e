//! End-to-end acceptance gate: one test per criterion, each printing a
//! single pass line. Tolerances are pinned; loosening them is a regression.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dyadrep::dyadic::MultiIndex;
use dyadrep::multiplicator;
use dyadrep::operators::{apply_v_alpha, apply_w_power, coefficient_block, DilationSystem};
use dyadrep::represent::{
    frame_check, greedy_decompose, necessary_condition_check, reconstruction_error,
    tail_system_check,
};
use dyadrep::smoothness::{lorentz_witness, min_over_lambda};
use dyadrep::spaces::{submultiplicativity_constant, PhiFunction, SpaceSpec};
use dyadrep::{rearrangement, tensor_rearrangement, DyadicStep, Error};

fn random_step(rng: &mut ChaCha8Rng, rank: u32, lo: f64, hi: f64) -> DyadicStep {
    let values = (0..1usize << rank).map(|_| rng.gen_range(lo..hi)).collect();
    DyadicStep::new(rank, values).unwrap()
}

fn half_generator() -> DyadicStep {
    DyadicStep::new(1, vec![2.0, 0.0]).unwrap()
}

#[test]
fn acceptance_01_norm_axioms() {
    let specs: Vec<SpaceSpec> = [
        "lp:1",
        "lp:2",
        "lp:3",
        "lorentz:power:2",
        "lorentz:logpower:1",
        "orlicz:exp:1",
    ]
    .iter()
    .map(|s| SpaceSpec::parse(s).unwrap())
    .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let rank = rng.gen_range(0u32..6);
        let x = random_step(&mut rng, rank, -5.0, 5.0);
        let y = random_step(&mut rng, rank, -5.0, 5.0);
        // z with |z| <= |x| cellwise, random signs
        let z_values: Vec<f64> =
            x.values().iter().map(|&v| v * rng.gen_range(-1.0..1.0)).collect();
        let z = DyadicStep::new(rank, z_values).unwrap();
        let mut shuffled = x.values().to_vec();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let xs = DyadicStep::new(rank, shuffled).unwrap();
        let c: f64 = rng.gen_range(-3.0..3.0);
        let l1 = rearrangement(&x).integral();
        for space in &specs {
            let (nx, ny) = (space.norm_step(&x), space.norm_step(&y));
            assert!(space.norm_step(&x.add(&y).unwrap()) <= nx + ny + 1e-9);
            assert!((space.norm_step(&x.scale(c)) - c.abs() * nx).abs() <= 1e-9 * nx.max(1.0));
            assert!(space.norm_step(&z) <= nx + 1e-9);
            assert!((space.norm_step(&xs) - nx).abs() <= 1e-9 * nx.max(1.0));
            assert!(l1 <= nx + 1e-9 && nx <= x.sup_norm() + 1e-9);
        }
    }
    println!("ACCEPTANCE 01 norm-axioms: pass");
}

#[test]
fn acceptance_02_tensor_multiplicativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..500 {
        let rank = rng.gen_range(0u32..5);
        let f = random_step(&mut rng, rank, -4.0, 4.0);
        let rank = rng.gen_range(0u32..5);
        let u = random_step(&mut rng, rank, -4.0, 4.0);
        for p in [1.0, 1.5, 2.0, 4.0] {
            let space = SpaceSpec::lp(p).unwrap();
            let lhs = space.norm(&tensor_rearrangement(&f, &u));
            let rhs = space.norm_step(&f) * space.norm_step(&u);
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0), "p={p}: {lhs} vs {rhs}");
        }
    }
    println!("ACCEPTANCE 02 tensor-multiplicativity: pass");
}

#[test]
fn acceptance_03_block_equimeasurability() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let one = DyadicStep::one();
    for _ in 0..500 {
        let rank = rng.gen_range(0u32..4);
        let f = random_step(&mut rng, rank, -3.0, 3.0);
        let k = rng.gen_range(0u32..=6);
        let coeffs: Vec<f64> =
            (0..1usize << k).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let x = coefficient_block(&f, k, &coeffs).unwrap();
        let u = coefficient_block(&one, k, &coeffs).unwrap();
        let gap = rearrangement(&x).staircase_gap(&tensor_rearrangement(&f, &u), 0.0);
        assert_eq!(gap, 0.0);
    }
    println!("ACCEPTANCE 03 block-equimeasurability: pass");
}

#[test]
fn acceptance_04_projection_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let f = half_generator();
    let system = DilationSystem::new(f.clone()).unwrap();
    for _ in 0..50 {
        let rank = rng.gen_range(0u32..6);
        let x = random_step(&mut rng, rank, -3.0, 3.0);
        let rank = rng.gen_range(0u32..6);
        let y = random_step(&mut rng, rank, -3.0, 3.0);
        let k = rng.gen_range(0u32..=6);
        // idempotence
        let px = system.project(k, &x).unwrap();
        assert!(system.project(k, &px).unwrap().sub(&px).unwrap().sup_norm() <= 1e-12);
        // commutation with the translation operators, exact
        let beta = MultiIndex::new(vec![rng.gen_range(0u8..2), rng.gen_range(0u8..2)]).unwrap();
        let kk = k + beta.len();
        let lhs = system.project(kk, &apply_v_alpha(&beta, &x).unwrap()).unwrap();
        let rhs = apply_v_alpha(&beta, &system.project(k, &x).unwrap()).unwrap();
        assert_eq!(lhs.sub(&rhs).unwrap().sup_norm(), 0.0);
        // P_k 1 is the full sum of rank-k translates, exact
        let p1 = system.project(k, &DyadicStep::one()).unwrap();
        assert_eq!(p1.sub(&apply_w_power(k, &f).unwrap()).unwrap().sup_norm(), 0.0);
        // adjoint identity
        let a = px.inner(&y).unwrap();
        let b = x.inner(&system.adjoint_project(k, &y).unwrap()).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }
    println!("ACCEPTANCE 04 projection-suite: pass");
}

#[test]
fn acceptance_05_weak_convergence_trend() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let system = DilationSystem::new(half_generator()).unwrap();
    assert!(system.is_normalized());
    for _ in 0..20 {
        let x = random_step(&mut rng, 4, -3.0, 3.0);
        let y = random_step(&mut rng, 4, -3.0, 3.0);
        let mut prev = f64::INFINITY;
        let mut last = f64::INFINITY;
        for k in [2u32, 4, 6, 8, 10, 12] {
            let gap = system.project(k, &x).unwrap().sub(&x).unwrap();
            let v = gap.inner(&y).unwrap().abs();
            assert!(v <= prev + 1e-12, "k={k}: {v} after {prev}");
            prev = v;
            last = v;
        }
        assert!(last < 1e-3);
    }
    println!("ACCEPTANCE 05 weak-convergence-trend: pass");
}

#[test]
fn acceptance_06_frame_constants() {
    let space = SpaceSpec::lp(2.0).unwrap();
    let unit = frame_check(&space, &DyadicStep::one(), 24, 12, 106).unwrap();
    assert_eq!(unit.a_observed, 1.0);
    assert_eq!(unit.b_observed, 1.0);

    let rep = frame_check(&space, &half_generator(), 32, 12, 106).unwrap();
    assert!(rep.a_observed <= rep.b_observed);
    assert!(rep.a_observed >= 1.0 - 0.05, "A = {}", rep.a_observed);
    assert!(rep.b_observed <= 2f64.sqrt() + 0.05, "B = {}", rep.b_observed);
    println!("ACCEPTANCE 06 frame-constants: pass");
}

#[test]
fn acceptance_07_greedy_convergence() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let f = half_generator();
    let targets = vec![DyadicStep::one(), random_step(&mut rng, 4, -2.0, 2.0)];
    for p in [1.0, 1.5, 2.0, 3.0] {
        let space = SpaceSpec::lp(p).unwrap();
        let theta_bound = 2f64.powf(-1.0 / p);
        for x in &targets {
            let d = greedy_decompose(&space, &f, x, 1e-6, 150, 0, 107).unwrap();
            assert!(d.converged, "p={p}");
            for rec in &d.trace {
                assert!(rec.ratio <= theta_bound + 1e-9, "p={p} round {}", rec.round);
            }
            let nx = space.norm_step(x);
            assert!(reconstruction_error(&space, &f, &d.blocks, x) <= 1e-6 * nx);
            assert!(d.blocks.total_mass <= nx / (1.0 - theta_bound) * 1.01);
        }
        let recs =
            tail_system_check(&space, &f, &targets[0], &[0, 1, 2, 3], 1e-6, 150, 107).unwrap();
        let masses: Vec<f64> = recs.iter().map(|r| r.mass).collect();
        let lo = masses.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = masses.iter().cloned().fold(0.0f64, f64::max);
        assert!(hi <= lo * 1.05, "p={p}: tail masses {masses:?}");
    }
    println!("ACCEPTANCE 07 greedy-convergence: pass");
}

#[test]
fn acceptance_08_lorentz_counterexample() {
    let phi = PhiFunction::power(2.0).unwrap();
    let space = SpaceSpec::lorentz(phi);
    let f = lorentz_witness(&phi).unwrap();
    assert_eq!(f.values(), &[-2.0, 1.0, 1.0, 1.0]);
    assert!((f.integral() - 0.25).abs() < 1e-15);

    // bracket scan of width 1000 plus the expanding minimizer
    let one = DyadicStep::one();
    for i in 0..=2000 {
        let lambda = -500.0 + i as f64 * 0.5;
        assert!(space.norm_step(&one.sub(&f.scale(lambda)).unwrap()) >= 1.0 - 1e-9);
    }
    let (_, value) = min_over_lambda(&space, &f, 1e-12);
    assert!(value >= 1.0 - 1e-9);

    let err = greedy_decompose(&space, &f, &one, 1e-6, 20, 0, 108).unwrap_err();
    assert!(matches!(err, Error::NoContraction { .. }));
    println!("ACCEPTANCE 08 lorentz-counterexample: pass");
}

#[test]
fn acceptance_09_dilation_ratio_curves() {
    // member trend: cell averages of t^(-1/4) against the sqrt weight
    let tame = DyadicStep::from_averages(14, |a, b| {
        let anti = |t: f64| (4.0 / 3.0) * t.powf(0.75);
        (anti(b) - anti(a)) / (b - a)
    })
    .unwrap();
    let sqrt_space = SpaceSpec::lorentz(PhiFunction::power(2.0).unwrap());
    let rep = necessary_condition_check(&sqrt_space, &tame, 1.0, 14).unwrap();
    let max_half = rep.curve[..=7].iter().map(|c| c.1).fold(0.0f64, f64::max);
    let max_full = rep.curve.iter().map(|c| c.1).fold(0.0f64, f64::max);
    assert!(max_full <= max_half * 1.05, "{max_half} -> {max_full}");

    // negative control: squared-log generator against the slow-log weight
    let heavy = DyadicStep::from_averages(16, |a, b| {
        // cell averages of (1 + ln(1/t))^2
        let anti = |t: f64| {
            if t == 0.0 {
                0.0
            } else {
                t * (5.0 + t.ln() * (t.ln() - 4.0))
            }
        };
        (anti(b) - anti(a)) / (b - a)
    })
    .unwrap();
    let slow_space = SpaceSpec::lorentz(PhiFunction::slow_log().unwrap());
    let rep = necessary_condition_check(&slow_space, &heavy, 1.0, 14).unwrap();
    let v: Vec<f64> = rep.curve.iter().map(|c| c.1).collect();
    for (j, jj) in [(2usize, 4usize), (4, 8), (7, 14)] {
        assert!(v[jj] >= 1.2 * v[j], "j {j}->{jj}: {} -> {}", v[j], v[jj]);
    }
    assert!(!rep.pass);
    println!("ACCEPTANCE 09 dilation-ratio-curves: pass");
}

#[test]
fn acceptance_10_submultiplicativity_verdicts() {
    for q in [1.5, 2.0, 3.0] {
        let rep = submultiplicativity_constant(&PhiFunction::power(q).unwrap(), 5);
        assert!((rep.c_best - 1.0).abs() <= 1e-12, "q={q}: {}", rep.c_best);
    }
    let rep = submultiplicativity_constant(&PhiFunction::slow_log().unwrap(), 5);
    for w in rep.refinement_maxima.windows(2) {
        assert!(w[1] >= 1.5 * w[0], "maxima {:?}", rep.refinement_maxima);
    }
    assert!(rep.unbounded_trend);
    println!("ACCEPTANCE 10 submultiplicativity-verdicts: pass");
}

#[test]
fn acceptance_11_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let gen_path = dir.path().join("f.json");
    let target_path = dir.path().join("x.json");
    std::fs::write(&gen_path, serde_json::to_string(&half_generator()).unwrap()).unwrap();
    std::fs::write(
        &target_path,
        serde_json::to_string(&DyadicStep::new(2, vec![1.0, -0.5, 2.0, 0.25]).unwrap()).unwrap(),
    )
    .unwrap();

    let run = |out: &std::path::Path| {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_dyadrep"))
            .args([
                "decompose",
                "--space",
                "lp:2",
                "--generator",
                gen_path.to_str().unwrap(),
                "--target",
                target_path.to_str().unwrap(),
                "--seed",
                "11",
                "--out",
                out.to_str().unwrap(),
            ])
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run(&a);
    run(&b);
    for name in ["blocks.json", "trace.csv"] {
        let ba = std::fs::read(a.join(name)).unwrap();
        let bb = std::fs::read(b.join(name)).unwrap();
        assert!(!ba.is_empty());
        assert_eq!(ba, bb, "{name} differs between identical runs");
    }

    // in Lp the two-sided multiplicator estimate collapses to the exact
    // norm; spot-check the oracle the frame bound leans on
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for _ in 0..10 {
        let rank = rng.gen_range(0u32..5);
        let f = random_step(&mut rng, rank, -3.0, 3.0);
        for p in [1.0, 2.0, 3.0] {
            let space = SpaceSpec::lp(p).unwrap();
            let est = multiplicator::estimate(&space, &f, 8, 40, 111);
            let oracle = space.norm_step(&f);
            assert!((est.lower - oracle).abs() <= 1e-9 * oracle.max(1.0));
            assert!((est.upper - oracle).abs() <= 1e-9 * oracle.max(1.0));
        }
    }
    println!("ACCEPTANCE 11 reproducibility: pass");
}
