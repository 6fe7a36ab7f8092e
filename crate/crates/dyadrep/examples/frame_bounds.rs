//! Observed frame bounds of the analysis operator `y -> {P*_k y}`:
//! the sup over k of the dual norm stays between `|<f,1>|` and the
//! multiplicator norm of the generator.

use dyadrep::represent::frame_check;
use dyadrep::spaces::SpaceSpec;
use dyadrep::DyadicStep;

fn main() {
    let space = SpaceSpec::lp(2.0).unwrap();

    // the unit generator reproduces every functional exactly
    let unit = frame_check(&space, &DyadicStep::one(), 16, 8, 1).unwrap();
    println!("f = 1:          A = {:.12}, B = {:.12}", unit.a_observed, unit.b_observed);

    // a mean-one generator supported on the left half
    let f = DyadicStep::new(1, vec![2.0, 0.0]).unwrap();
    let rep = frame_check(&space, &f, 32, 12, 1).unwrap();
    println!(
        "f = 2 on [0,.5): A = {:.6}, B = {:.6}  (theory: A >= {:.3}, B <= {:.6})",
        rep.a_observed,
        rep.b_observed,
        rep.a_theory,
        2f64.sqrt()
    );
}
