//! Norms of one step function across the supported space families.

use dyadrep::spaces::SpaceSpec;
use dyadrep::DyadicStep;

fn main() {
    let x = DyadicStep::new(3, vec![4.0, 2.5, 2.0, 1.0, 1.0, 0.5, 0.25, 0.0]).unwrap();
    println!("x = {:?} (rank {})", x.values(), x.rank());
    println!("integral = {:.6}, sup = {:.6}\n", x.integral(), x.sup_norm());

    for spec in [
        "lp:1",
        "lp:2",
        "lp:4",
        "lorentz:power:2",
        "lorentz:slowlog",
        "marcinkiewicz:power:2",
        "orlicz:power:3",
        "orlicz:exp:1",
    ] {
        let space = SpaceSpec::parse(spec).unwrap();
        println!("{spec:>22}  ->  {:.12}", space.norm_step(&x));
    }

    // the fundamental function phi_X(t) = norm of an indicator of measure t
    println!("\nfundamental functions at t = 1/4:");
    for spec in ["lp:2", "lorentz:power:2", "marcinkiewicz:power:2"] {
        let space = SpaceSpec::parse(spec).unwrap();
        println!("{spec:>22}  ->  {:.12}", space.fundamental(0.25).unwrap());
    }
}
