//! Norm evaluation for the four space families (Lp, Lorentz, Marcinkiewicz,
//! Orlicz), fundamental functions, dual norms for the analytically known
//! pairs, and the submultiplicativity grid check.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicStep;
use crate::error::{Error, Result};
use crate::optimize::golden_max;
use crate::rearrange::{rearrangement, WeightedStep};

const CHECK_GRID: usize = 1 << 12;

/// Increasing quasi-concave `phi` on `[0,1]` with `phi(0) = 0`, `phi(1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PhiFunction {
    /// `phi(t) = t^(1/q)`, `q >= 1`.
    Power { q: f64 },
    /// `phi(t) = t (1 + ln(1/t))^b`, `b >= 0`.
    LogPower { b: f64 },
    /// `phi(t) = (1 + ln(1/t))^(-1)`.
    SlowLog,
}

impl PhiFunction {
    pub fn power(q: f64) -> Result<Self> {
        if q < 1.0 {
            return Err(Error::BadFamily(format!("power phi needs q >= 1, got {q}")));
        }
        Self::Power { q }.validated()
    }

    pub fn log_power(b: f64) -> Result<Self> {
        if b < 0.0 {
            return Err(Error::BadFamily(format!("logpower phi needs b >= 0, got {b}")));
        }
        Self::LogPower { b }.validated()
    }

    pub fn slow_log() -> Result<Self> {
        Self::SlowLog.validated()
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::Power { q } => t.powf(1.0 / q),
            Self::LogPower { b } => t * (1.0 - t.ln()).powf(b),
            Self::SlowLog => 1.0 / (1.0 - t.ln()),
        }
    }

    /// Closed-form derivative on `(0, 1]`.
    pub fn derivative(&self, t: f64) -> f64 {
        let l = -t.ln();
        match *self {
            Self::Power { q } => t.powf(1.0 / q - 1.0) / q,
            Self::LogPower { b } => (1.0 + l).powf(b) - b * (1.0 + l).powf(b - 1.0),
            Self::SlowLog => 1.0 / (t * (1.0 + l) * (1.0 + l)),
        }
    }

    /// Numeric check on a `2^12`-point grid: increasing, quasi-concave,
    /// pinned at `phi(0) = 0` and `phi(1) = 1`.
    fn validated(self) -> Result<Self> {
        if self.eval(0.0) != 0.0 {
            return Err(Error::BadFamily(format!("{self:?}: phi(0) != 0")));
        }
        if (self.eval(1.0) - 1.0).abs() > 1e-12 {
            return Err(Error::BadFamily(format!("{self:?}: phi(1) != 1")));
        }
        let h = 1.0 / CHECK_GRID as f64;
        let mut prev = 0.0;
        for i in 1..=CHECK_GRID {
            let v = self.eval(i as f64 * h);
            if v < prev - 1e-12 {
                return Err(Error::BadFamily(format!(
                    "{self:?}: not increasing near t = {}",
                    i as f64 * h
                )));
            }
            prev = v;
        }
        // quasi-concavity: phi(t)/t non-increasing (weaker than concavity;
        // the slow-log family is quasi-concave but convex near t = 1)
        let mut prev_ratio = f64::INFINITY;
        for i in 1..=CHECK_GRID {
            let t = i as f64 * h;
            let ratio = self.eval(t) / t;
            if ratio > prev_ratio * (1.0 + 1e-12) {
                return Err(Error::BadFamily(format!(
                    "{self:?}: phi(t)/t increases near t = {t}"
                )));
            }
            prev_ratio = ratio;
        }
        Ok(self)
    }
}

/// Increasing convex Orlicz function with `Phi(0) = 0`, `Phi(1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum OrliczFunction {
    /// `Phi(t) = t^p`, `p >= 1`.
    Power { p: f64 },
    /// `Phi(t) = (e^(t^a) - 1) / (e - 1)`, `a >= 1`.
    Exp { a: f64 },
}

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self> {
        if p < 1.0 {
            return Err(Error::BadFamily(format!("power Orlicz needs p >= 1, got {p}")));
        }
        Self::Power { p }.validated()
    }

    pub fn exp(a: f64) -> Result<Self> {
        if a < 1.0 {
            return Err(Error::BadFamily(format!("exp Orlicz needs a >= 1, got {a}")));
        }
        Self::Exp { a }.validated()
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::Power { p } => t.powf(p),
            Self::Exp { a } => (t.powf(a).exp() - 1.0) / (std::f64::consts::E - 1.0),
        }
    }

    fn validated(self) -> Result<Self> {
        let h = 4.0 / CHECK_GRID as f64;
        let mut prev = 0.0;
        for i in 1..=CHECK_GRID {
            let v = self.eval(i as f64 * h);
            if v < prev {
                return Err(Error::BadFamily(format!("{self:?}: not increasing")));
            }
            prev = v;
        }
        for i in 1..CHECK_GRID {
            let (a, b) = ((i - 1) as f64 * h, (i + 1) as f64 * h);
            let mid = self.eval(0.5 * (a + b));
            if mid > 0.5 * (self.eval(a) + self.eval(b)) + 1e-9 * (1.0 + mid.abs()) {
                return Err(Error::BadFamily(format!("{self:?}: not convex")));
            }
        }
        Ok(self)
    }
}

/// A tagged choice of norm family, normalized so that the norm of the
/// constant 1 is 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpaceSpec {
    Lp { p: f64 },
    Lorentz { phi: PhiFunction },
    Marcinkiewicz { phi: PhiFunction },
    Orlicz { func: OrliczFunction },
}

impl SpaceSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if p < 1.0 {
            return Err(Error::BadFamily(format!("Lp needs p >= 1, got {p}")));
        }
        Ok(Self::Lp { p })
    }

    pub fn lorentz(phi: PhiFunction) -> Self {
        Self::Lorentz { phi }
    }

    pub fn marcinkiewicz(phi: PhiFunction) -> Self {
        Self::Marcinkiewicz { phi }
    }

    pub fn orlicz(func: OrliczFunction) -> Self {
        Self::Orlicz { func }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Lp { .. } => "lp",
            Self::Lorentz { .. } => "lorentz",
            Self::Marcinkiewicz { .. } => "marcinkiewicz",
            Self::Orlicz { .. } => "orlicz",
        }
    }

    /// Parse a config string, e.g. `lp:2`, `lorentz:power:2`,
    /// `lorentz:slowlog`, `marcinkiewicz:logpower:1`, `orlicz:exp:1`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::BadSpaceSpec(s.to_string());
        let num = |txt: &str| txt.parse::<f64>().map_err(|_| bad());
        match parts.as_slice() {
            ["lp", p] => Self::lp(num(p)?),
            ["lorentz", rest @ ..] => Ok(Self::lorentz(parse_phi(rest, s)?)),
            ["marcinkiewicz", rest @ ..] => Ok(Self::marcinkiewicz(parse_phi(rest, s)?)),
            ["orlicz", "power", p] => Ok(Self::orlicz(OrliczFunction::power(num(p)?)?)),
            ["orlicz", "exp", a] => Ok(Self::orlicz(OrliczFunction::exp(num(a)?)?)),
            _ => Err(bad()),
        }
    }

    /// The norm of a decreasing staircase.
    pub fn norm(&self, x: &WeightedStep) -> f64 {
        match self {
            Self::Lp { p } => lp_norm(x, *p),
            Self::Lorentz { phi } => lorentz_norm(x, phi),
            Self::Marcinkiewicz { phi } => marcinkiewicz_norm(x, phi),
            Self::Orlicz { func } => luxemburg_norm(x, func),
        }
    }

    pub fn norm_step(&self, x: &DyadicStep) -> f64 {
        self.norm(&rearrangement(x))
    }

    /// Koethe-dual norm for the implemented pairs: `Lp <-> Lq` and
    /// `Lorentz(phi) <-> Marcinkiewicz(phi)`.
    pub fn dual_norm(&self, y: &WeightedStep) -> Result<f64> {
        match self {
            Self::Lp { p } if *p == 1.0 => Ok(y.sup()),
            Self::Lp { p } => Ok(lp_norm(y, p / (p - 1.0))),
            Self::Lorentz { phi } => Ok(marcinkiewicz_norm(y, phi)),
            other => Err(Error::UnsupportedDual { family: other.family_name().to_string() }),
        }
    }

    pub fn dual_norm_step(&self, y: &DyadicStep) -> Result<f64> {
        self.dual_norm(&rearrangement(y))
    }

    /// `phi_X(t)`: the norm of the indicator of a set of measure `t`.
    pub fn fundamental(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::Domain { t });
        }
        match self {
            Self::Lp { p } => Ok(t.powf(1.0 / p)),
            Self::Lorentz { phi } => Ok(phi.eval(t)),
            _ => {
                let mut cells = vec![(1.0, t)];
                if t < 1.0 {
                    cells.push((0.0, 1.0 - t));
                }
                Ok(self.norm(&WeightedStep::from_cells(cells)))
            }
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lp { p } => write!(f, "lp:{p}"),
            Self::Lorentz { phi } => write!(f, "lorentz:{}", phi_str(phi)),
            Self::Marcinkiewicz { phi } => write!(f, "marcinkiewicz:{}", phi_str(phi)),
            Self::Orlicz { func } => match func {
                OrliczFunction::Power { p } => write!(f, "orlicz:power:{p}"),
                OrliczFunction::Exp { a } => write!(f, "orlicz:exp:{a}"),
            },
        }
    }
}

fn phi_str(phi: &PhiFunction) -> String {
    match phi {
        PhiFunction::Power { q } => format!("power:{q}"),
        PhiFunction::LogPower { b } => format!("logpower:{b}"),
        PhiFunction::SlowLog => "slowlog".into(),
    }
}

fn parse_phi(parts: &[&str], full: &str) -> Result<PhiFunction> {
    let bad = || Error::BadSpaceSpec(full.to_string());
    match parts {
        ["power", q] => PhiFunction::power(q.parse().map_err(|_| bad())?),
        ["logpower", b] => PhiFunction::log_power(b.parse().map_err(|_| bad())?),
        ["slowlog"] => PhiFunction::slow_log(),
        _ => Err(bad()),
    }
}

fn lp_norm(x: &WeightedStep, p: f64) -> f64 {
    if p.is_infinite() {
        return x.sup();
    }
    x.cells().iter().map(|&(v, m)| v.powf(p) * m).sum::<f64>().powf(1.0 / p)
}

/// `int x* dphi` summed exactly over the staircase cells.
fn lorentz_norm(x: &WeightedStep, phi: &PhiFunction) -> f64 {
    let mut t = 0.0;
    let mut prev = 0.0;
    let mut acc = 0.0;
    for &(v, m) in x.cells() {
        t += m;
        let ph = phi.eval(t);
        acc += v * (ph - prev);
        prev = ph;
    }
    acc
}

/// `sup_t psi(t)/phi(t)` where `psi(t) = int_0^t x*`. The ratio on each
/// linearity segment of `psi` is maximized by golden-section search; both
/// segment endpoints are always included as candidates.
fn marcinkiewicz_norm(x: &WeightedStep, phi: &PhiFunction) -> f64 {
    let mut best: f64 = 0.0;
    let mut t0 = 0.0;
    let mut psi0 = 0.0;
    for &(v, m) in x.cells() {
        let t1 = t0 + m;
        let psi_at = |t: f64| psi0 + v * (t - t0);
        let mut ratio = |t: f64| {
            if t <= 0.0 {
                0.0
            } else {
                psi_at(t) / phi.eval(t)
            }
        };
        best = best.max(ratio(t1));
        if t0 > 0.0 {
            best = best.max(ratio(t0));
        }
        let (_, interior) = golden_max(&mut ratio, t0, t1, 0.0, 40);
        if interior.is_finite() {
            best = best.max(interior);
        }
        psi0 = psi_at(t1);
        t0 = t1;
    }
    best
}

/// Luxemburg norm by bisection on `lambda`: `int Phi(|x|/lambda)` is
/// strictly decreasing in `lambda`, so the bracket is expanded by doubling
/// until the integral condition straddles 1, then bisected to relative
/// width 1e-12.
fn luxemburg_norm(x: &WeightedStep, func: &OrliczFunction) -> f64 {
    let sup = x.sup();
    if sup == 0.0 {
        return 0.0;
    }
    let modular = |lambda: f64| -> f64 {
        x.cells().iter().map(|&(v, m)| func.eval(v / lambda) * m).sum()
    };
    let mut lo = 2f64.powi(-40);
    let mut hi = sup.max(1.0);
    while modular(hi) > 1.0 {
        hi *= 2.0;
    }
    while modular(lo) <= 1.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return 0.0;
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if modular(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Result of the submultiplicativity grid check for `phi`.
#[derive(Clone, Debug, Serialize)]
pub struct SubmultReport {
    /// Max of `phi(st) / (phi(s) phi(t))` over the base grid.
    pub c_best: f64,
    /// Argmax `(s, t)` on the base grid.
    pub witness: (f64, f64),
    /// Grid maxima at the base resolution and three refinements.
    pub refinement_maxima: Vec<f64>,
    /// True when the maxima grow monotonically across all refinements.
    pub unbounded_trend: bool,
}

/// Scan `phi(st) <= C phi(s) phi(t)` over the dyadic logarithmic grid
/// `s, t = 2^-i`, `i = 0..2^grid_rank`, and over three 2x refinements.
pub fn submultiplicativity_constant(phi: &PhiFunction, grid_rank: u32) -> SubmultReport {
    let scan = |n: usize| -> (f64, (f64, f64)) {
        // keep 2^-2n a normal float; past that phi(st) collapses to phi(0)
        let n = n.min(500);
        let vals: Vec<f64> = (0..=2 * n).map(|m| phi.eval(2f64.powi(-(m as i32)))).collect();
        let mut best = 0.0;
        let mut arg = (1.0, 1.0);
        for i in 0..=n {
            for j in 0..=n {
                let r = vals[i + j] / (vals[i] * vals[j]);
                if r > best {
                    best = r;
                    arg = (2f64.powi(-(i as i32)), 2f64.powi(-(j as i32)));
                }
            }
        }
        (best, arg)
    };
    let base = 1usize << grid_rank;
    let (c_best, witness) = scan(base);
    let maxima: Vec<f64> = [1, 2, 4, 8].iter().map(|&k| scan(base * k).0).collect();
    let unbounded_trend = maxima.windows(2).all(|w| w[1] > w[0] * (1.0 + 1e-9));
    SubmultReport { c_best, witness, refinement_maxima: maxima, unbounded_trend }
}
