//! The dilation/translation operators and the rank-k projections onto
//! spans of compressed translates of a generator.

use dyadrep::dyadic::MultiIndex;
use dyadrep::operators::{apply_v_alpha, apply_w_power, DilationSystem};
use dyadrep::DyadicStep;

fn main() {
    let f = DyadicStep::new(1, vec![2.0, 0.0]).unwrap();
    println!("generator f = {:?}, mean {}", f.values(), f.integral());

    let alpha = MultiIndex::new(vec![1, 0]).unwrap();
    let vf = apply_v_alpha(&alpha, &f).unwrap();
    println!("V^(1,0) f = {:?}", vf.values());
    let wf = apply_w_power(2, &f).unwrap();
    println!("W^2 f     = {:?} (all 4 translates summed)", wf.values());

    let system = DilationSystem::new(f).unwrap();
    let x = DyadicStep::new(3, vec![1.0, 0.0, 2.0, 2.0, -1.0, 1.0, 0.5, 0.5]).unwrap();
    for k in [0u32, 1, 2, 3, 5] {
        let px = system.project(k, &x).unwrap();
        let err = px.sub(&x).unwrap();
        println!(
            "k={k}: ||P_k x - x||_sup = {:.6}   (P idempotent gap {:.1e})",
            err.sup_norm(),
            system.project(k, &px).unwrap().sub(&px).unwrap().sup_norm()
        );
    }

    // adjoint identity <P_k x, y> = <x, P*_k y>
    let y = DyadicStep::new(2, vec![0.25, 1.0, -0.5, 0.75]).unwrap();
    let lhs = system.project(2, &x).unwrap().inner(&y).unwrap();
    let rhs = x.inner(&system.adjoint_project(2, &y).unwrap()).unwrap();
    println!("adjoint identity: {lhs:.12} vs {rhs:.12}");
}
