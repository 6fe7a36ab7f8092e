//! The dilation-ratio curve a representing generator must keep bounded:
//! `norm(sigma_t f) / (2 C <f,1> phi_X(t))` on `t = 2^-j`. A generator
//! whose curve grows without bound cannot absolutely represent.

use dyadrep::represent::necessary_condition_check;
use dyadrep::spaces::{PhiFunction, SpaceSpec};
use dyadrep::DyadicStep;

fn main() {
    // tame: cell averages of t^{-1/4} against the sqrt-weight Lorentz norm
    let tame = DyadicStep::from_averages(8, |a, b| {
        let anti = |t: f64| (4.0 / 3.0) * t.powf(0.75);
        (anti(b) - anti(a)) / (b - a)
    })
    .unwrap();
    let sqrt_space = SpaceSpec::lorentz(PhiFunction::power(2.0).unwrap());
    let rep = necessary_condition_check(&sqrt_space, &tame, 1.0, 12).unwrap();
    println!("t^(-1/4) in Lorentz(sqrt):  pass = {}", rep.pass);
    for &(t, r) in rep.curve.iter().step_by(3) {
        println!("  t = {t:.6e}  ratio = {r:.6}");
    }

    // heavy: cell averages of 1 + ln(1/t) against the slow-log norm
    let heavy = DyadicStep::from_averages(12, |a, b| {
        let anti = |t: f64| if t == 0.0 { 0.0 } else { 2.0 * t - t * t.ln() };
        (anti(b) - anti(a)) / (b - a)
    })
    .unwrap();
    let slow_space = SpaceSpec::lorentz(PhiFunction::slow_log().unwrap());
    let rep = necessary_condition_check(&slow_space, &heavy, 1.0, 12).unwrap();
    println!("\n1 + ln(1/t) in Lorentz(slowlog):  pass = {}", rep.pass);
    for &(t, r) in rep.curve.iter().step_by(3) {
        println!("  t = {t:.6e}  ratio = {r:.6}");
    }
}
