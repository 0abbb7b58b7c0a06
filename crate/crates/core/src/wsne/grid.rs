//! k-uniform strategies: the support-size bound κ(δ) and exhaustive
//! enumeration of the k-uniform grid.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategy::MixedStrategy;

/// `max(1, ceil(2 ln(1/δ) / δ²))`, for `0 < δ < 1`.
pub fn kappa<T: Scalar>(delta: T) -> Result<usize> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
    }
    let d = delta.as_f64();
    let k = (2.0 * (1.0 / d).ln() / (d * d)).ceil();
    Ok((k as usize).max(1))
}

/// Number of k-uniform strategies over `d` pure strategies, `C(d+k-1, k)`.
pub fn k_uniform_count(d: usize, k: usize) -> u128 {
    binomial((d + k).saturating_sub(1) as u128, k as u128)
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Iterates over all count vectors of length `d` summing to `k`, in
/// decreasing lexicographic order starting at `(k, 0, ..., 0)`.
///
/// Each vector `c` stands for the k-uniform strategy `c / k`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl Compositions {
    pub fn new(d: usize, k: usize) -> Self {
        assert!(d >= 1 && k >= 1, "need d >= 1 and k >= 1");
        let mut current = vec![0; d];
        current[0] = u32::try_from(k).expect("k fits u32");
        Self {
            current,
            fresh: true,
            done: false,
        }
    }

    /// Advances in place; returns the next composition or `None` when exhausted.
    pub fn next_ref(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.current);
        }
        let d = self.current.len();
        let tail = self.current[d - 1];
        self.current[d - 1] = 0;
        match (0..d - 1).rev().find(|&p| self.current[p] > 0) {
            Some(p) => {
                self.current[p] -= 1;
                self.current[p + 1] = tail + 1;
                Some(&self.current)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        self.next_ref().map(<[u32]>::to_vec)
    }
}

/// Every k-uniform mixed strategy over `d` pure strategies, each exactly once.
pub fn enumerate_k_uniform<T: Scalar>(d: usize, k: usize) -> impl Iterator<Item = MixedStrategy<T>> {
    Compositions::new(d, k).map(|c| MixedStrategy::from_counts(&c))
}
