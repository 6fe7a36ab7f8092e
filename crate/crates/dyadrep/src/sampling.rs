//! Seeded random step generators shared by the search and sampling code.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dyadic::DyadicStep;

#[cfg(test)]
pub(crate) fn random_step(rng: &mut ChaCha8Rng, rank: u32, lo: f64, hi: f64) -> DyadicStep {
    let values = (0..1usize << rank).map(|_| rng.gen_range(lo..hi)).collect();
    DyadicStep::new(rank, values).expect("rank within cap")
}

/// Nonnegative step sorted decreasing, i.e. already equal to its
/// rearrangement.
pub(crate) fn random_decreasing_step(rng: &mut ChaCha8Rng, rank: u32, hi: f64) -> DyadicStep {
    let mut values: Vec<f64> = (0..1usize << rank).map(|_| rng.gen_range(0.0..hi)).collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    DyadicStep::new(rank, values).expect("rank within cap")
}
