//! Submultiplicativity of weight functions: `phi(st) <= C phi(s) phi(t)`.
//! Power weights achieve C = 1; the slow-log weight has no finite C, which
//! is what turns it into a counterexample factory.

use dyadrep::spaces::{submultiplicativity_constant, PhiFunction};

fn main() {
    for (name, phi) in [
        ("power:2", PhiFunction::power(2.0).unwrap()),
        ("power:3", PhiFunction::power(3.0).unwrap()),
        ("slowlog", PhiFunction::slow_log().unwrap()),
    ] {
        let rep = submultiplicativity_constant(&phi, 5);
        println!("{name:>8}: C_best = {:.9}", rep.c_best);
        println!("          refinement maxima: {:?}", rep.refinement_maxima);
        println!("          unbounded trend:   {}\n", rep.unbounded_trend);
    }
}
