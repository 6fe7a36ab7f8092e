//! Why the greedy construction must fail in Lorentz spaces: a generator
//! with positive mean but negative pairing against phi' keeps
//! `||1 - lambda f||` pinned at 1 for every lambda, so no scaling of it
//! contracts the residual.

use dyadrep::represent::greedy_decompose;
use dyadrep::smoothness::{lorentz_witness, min_over_lambda, phi_prime_step, smoothness_probe};
use dyadrep::spaces::{PhiFunction, SpaceSpec};
use dyadrep::{DyadicStep, Error};

fn main() {
    let phi = PhiFunction::power(2.0).unwrap();
    let space = SpaceSpec::lorentz(phi);

    let f = lorentz_witness(&phi).unwrap();
    println!("witness f = {:?}", f.values());
    println!("  <f, 1>    = {:.6}  (> 0)", f.integral());
    let dphi = phi_prime_step(&phi, 8).unwrap();
    println!("  <f, phi'> = {:.6}  (< 0)\n", f.inner(&dphi).unwrap());

    let (lambda, value) = min_over_lambda(&space, &f, 1e-12);
    println!("min over lambda of ||1 - lambda f||: {value:.12} at lambda = {lambda:.6}");

    match greedy_decompose(&space, &f, &DyadicStep::one(), 1e-6, 50, 0, 1) {
        Err(Error::NoContraction { theta }) => {
            println!("greedy refuses to run: no contraction, theta = {theta:.9}")
        }
        other => println!("unexpected: {other:?}"),
    }

    // the root cause: two distinct functionals norm the constant 1
    let probe = smoothness_probe(&space, &[DyadicStep::one(), dphi]).unwrap();
    for (i, e) in probe.entries.iter().enumerate() {
        println!(
            "candidate {i}: dual norm {:.9}, pairing {:.9}, norming: {}",
            e.dual_norm, e.pairing, e.achieves
        );
    }
    println!("space smooth at 1: {}", !probe.non_smooth);
}
