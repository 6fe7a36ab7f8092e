//! Two-sided estimate of the multiplicator norm: the operator norm of
//! tensoring with `f`. In Lp it collapses to `||f||_p` (Fubini); in
//! Lorentz spaces it can be strictly larger than the plain norm.

use dyadrep::multiplicator::{estimate, lorentz_membership};
use dyadrep::spaces::{PhiFunction, SpaceSpec};
use dyadrep::DyadicStep;

fn main() {
    let f = DyadicStep::new(2, vec![3.0, 1.5, 1.0, 0.5]).unwrap();

    let l2 = SpaceSpec::lp(2.0).unwrap();
    let est = estimate(&l2, &f, 10, 120, 1);
    println!(
        "L2:        lower = {:.9}, upper = {:.9}, ||f||_2 = {:.9}",
        est.lower,
        est.upper,
        l2.norm_step(&f)
    );

    let phi = PhiFunction::power(2.0).unwrap();
    let lorentz = SpaceSpec::lorentz(phi);
    let est = estimate(&lorentz, &f, 10, 120, 1);
    println!(
        "Lorentz:   lower = {:.9}, upper = {:.9}, ||f||   = {:.9}",
        est.lower,
        est.upper,
        lorentz.norm_step(&f)
    );

    // membership verdict via the dilation-ratio curve
    let member = lorentz_membership(&phi, &f, 10).unwrap();
    println!("\ndilation ratio curve (j, ratio):");
    for (j, r) in &member.curve {
        println!("  {j:>2}  {r:.6}");
    }
    println!("bounded: {}", member.bounded);
}
