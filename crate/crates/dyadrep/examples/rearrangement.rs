//! Decreasing rearrangements and the exact tensor identity that drives
//! everything else: the rearrangement of `sum_a c_a V^a f` equals the
//! rearrangement of the tensor product of `f` with `sum_a c_a V^a 1`.

use dyadrep::operators::apply_v_alpha;
use dyadrep::dyadic::MultiIndex;
use dyadrep::{rearrangement, tensor_rearrangement, DyadicStep};

fn main() {
    let x = DyadicStep::new(2, vec![-1.0, 3.0, 0.5, -2.0]).unwrap();
    let r = rearrangement(&x);
    println!("x  = {:?}", x.values());
    println!("x* = {:?}\n", r.cells());

    // a combination of shifted, compressed copies of f
    let f = DyadicStep::new(1, vec![2.0, -1.0]).unwrap();
    let coeffs = [(vec![0u8, 1], 1.5), (vec![1, 0], -0.5)];
    let mut sum = DyadicStep::constant(0.0);
    let mut u = DyadicStep::constant(0.0);
    for (bits, c) in &coeffs {
        let alpha = MultiIndex::new(bits.clone()).unwrap();
        sum = sum.add(&apply_v_alpha(&alpha, &f).unwrap().scale(*c)).unwrap();
        u = u.add(&apply_v_alpha(&alpha, &DyadicStep::one()).unwrap().scale(*c)).unwrap();
    }

    let lhs = rearrangement(&sum);
    let rhs = tensor_rearrangement(&f, &u);
    println!("rearrangement of the block:   {:?}", lhs.cells());
    println!("tensor rearrangement (f, u):  {:?}", rhs.cells());
    println!("staircase gap: {:.3e}", lhs.staircase_gap(&rhs, 0.0));
}
