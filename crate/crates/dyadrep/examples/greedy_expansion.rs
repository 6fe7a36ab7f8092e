//! Greedy construction of an absolutely representing expansion
//! `x = sum xi_alpha V^alpha f` with per-round contraction by
//! `theta = min_lambda ||1 - lambda f||`.

use dyadrep::represent::{greedy_decompose, reconstruction_error};
use dyadrep::spaces::SpaceSpec;
use dyadrep::DyadicStep;

fn main() {
    let space = SpaceSpec::lp(2.0).unwrap();
    let f = DyadicStep::new(1, vec![2.0, 0.0]).unwrap();
    let x = DyadicStep::new(2, vec![1.0, -0.5, 2.0, 0.25]).unwrap();

    let d = greedy_decompose(&space, &f, &x, 1e-8, 100, 0, 1).unwrap();
    println!("lambda* = {}, theta = {:.12}", d.lambda, d.theta);
    println!("converged in {} rounds, residual {:.3e}\n", d.rounds, d.final_residual);

    println!("round  rank  residual      ratio");
    for rec in d.trace.iter().take(8) {
        println!(
            "{:>5}  {:>4}  {:.6e}  {:.6}",
            rec.round, rec.rank, rec.residual_norm, rec.ratio
        );
    }
    println!("  ... ({} rounds total)\n", d.rounds);

    println!("coefficient mass sum_k b_k = {:.9}", d.blocks.total_mass);
    println!(
        "geometric bound ||x|| / (1 - theta) = {:.9}",
        d.target_norm / (1.0 - d.theta)
    );
    println!(
        "reconstruction error = {:.3e}",
        reconstruction_error(&space, &f, &d.blocks, &x)
    );
}
