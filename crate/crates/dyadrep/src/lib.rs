//! Rearrangement-invariant norms on dyadic step functions and expansions
//! in systems of dyadic dilations and translations of a single generator.
//!
//! A [`dyadic::DyadicStep`] is a function on `[0,1]` constant on the `2^n`
//! dyadic cells of rank `n`. The crate computes its norm in Lebesgue,
//! Lorentz, Marcinkiewicz and Orlicz spaces ([`spaces::SpaceSpec`]),
//! applies the dilation/translation operators `V^alpha` and the rank-`k`
//! projections onto spans of translates ([`operators`]), estimates the
//! multiplicator norm that controls those projections uniformly
//! ([`multiplicator`]), and greedily constructs absolutely representing
//! expansions `x = sum xi_alpha V^alpha f` with certified contraction
//! ([`represent`]). The [`smoothness`] module probes why the construction
//! must fail in Lorentz spaces.
//!
//! Everything is deterministic given a seed; randomized searches use
//! ChaCha8 streams. See the `examples/` directory for runnable tours of
//! each capability.

pub mod cli;
pub mod dyadic;
pub mod error;
pub mod multiplicator;
pub mod operators;
mod optimize;
pub mod rearrange;
pub mod represent;
mod sampling;
pub mod smoothness;
mod sparse;
pub mod spaces;

pub use dyadic::DyadicStep;
pub use error::{Error, Result};
pub use rearrange::{rearrangement, tensor_rearrangement, WeightedStep};
pub use spaces::SpaceSpec;
