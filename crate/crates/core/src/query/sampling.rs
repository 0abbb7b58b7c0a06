//! Sampled strategies: empirical frequencies of independent draws.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategy::MixedStrategy;

pub const DEFAULT_SAMPLING_CONSTANT: f64 = 12.0;

/// Number of draws `k = ⌈c_s · ln(2n + 2) / ε²⌉`.
pub fn sampling_size(n: usize, eps: f64, c_s: f64) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {eps} not in (0, 1)")));
    }
    if !(c_s > 0.0 && c_s.is_finite()) {
        return Err(Error::InvalidParameter(format!("sampling constant {c_s} must be positive")));
    }
    let k = (c_s * ((2 * n + 2) as f64).ln() / (eps * eps)).ceil();
    Ok((k as usize).max(1))
}

/// Draw counts of `k` independent samples from `x`.
pub fn sample_counts<T: Scalar, R: Rng + ?Sized>(x: &MixedStrategy<T>, k: usize, rng: &mut R) -> Vec<u32> {
    assert!(k >= 1, "k must be positive");
    let weights: Vec<f64> = x
        .probs()
        .iter()
        .enumerate()
        .map(|(i, p)| if x.in_support(i) { p.as_f64() } else { 0.0 })
        .collect();
    let dist = WeightedIndex::new(&weights).expect("strategy has a nonempty support");
    let mut counts = vec![0u32; x.dim()];
    for _ in 0..k {
        counts[dist.sample(rng)] += 1;
    }
    counts
}

/// The `k`-uniform strategy given by `k` independent draws from `x`.
pub fn sample_k_uniform_with<T: Scalar, R: Rng + ?Sized>(
    x: &MixedStrategy<T>,
    k: usize,
    rng: &mut R,
) -> MixedStrategy<T> {
    MixedStrategy::from_counts(&sample_counts(x, k, rng))
}

/// [`sample_k_uniform_with`] on a fresh generator seeded with `seed`.
pub fn sample_k_uniform<T: Scalar>(x: &MixedStrategy<T>, k: usize, seed: u64) -> MixedStrategy<T> {
    sample_k_uniform_with(x, k, &mut ChaCha8Rng::seed_from_u64(seed))
}
