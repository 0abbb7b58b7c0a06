//! Mixed strategies and strategy profiles.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A probability vector over a player's pure strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy<T> {
    probs: Array1<T>,
    support_tol: T,
}

impl<T: Scalar> MixedStrategy<T> {
    /// Validates `probs` as a point of the simplex.
    pub fn new(probs: Vec<T>) -> Result<Self> {
        Self::with_tolerance(probs, T::support_tol())
    }

    pub fn with_tolerance(probs: Vec<T>, support_tol: T) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidStrategy("empty probability vector".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < T::zero()) {
            return Err(Error::InvalidStrategy(format!("entry {p} is negative or non-finite")));
        }
        let sum: T = probs.iter().copied().sum();
        if (sum - T::one()).abs() > T::simplex_tol() {
            return Err(Error::InvalidStrategy(format!("entries sum to {sum}")));
        }
        if !probs.iter().any(|p| *p > support_tol) {
            return Err(Error::InvalidStrategy("support is empty".into()));
        }
        Ok(Self {
            probs: Array1::from(probs),
            support_tol,
        })
    }

    /// Builds a strategy from nonnegative weights: clamps float noise below
    /// zero, drops mass at or below the support tolerance and renormalizes.
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        let tol = T::support_tol();
        let cleaned: Vec<T> = weights
            .iter()
            .map(|w| if *w > tol { *w } else { T::zero() })
            .collect();
        let total: T = cleaned.iter().copied().sum();
        if !(total > T::zero()) || !total.is_finite() {
            return Err(Error::InvalidStrategy("weights carry no mass".into()));
        }
        Self::new(cleaned.into_iter().map(|w| w / total).collect())
    }

    /// The pure strategy `e_index`.
    pub fn pure(dim: usize, index: usize) -> Self {
        assert!(index < dim, "pure strategy index {index} out of range {dim}");
        let mut probs = Array1::zeros(dim);
        probs[index] = T::one();
        Self {
            probs,
            support_tol: T::support_tol(),
        }
    }

    pub fn uniform(dim: usize) -> Self {
        assert!(dim > 0);
        let p = T::one() / T::from_usize_lossy(dim);
        Self {
            probs: Array1::from_elem(dim, p),
            support_tol: T::support_tol(),
        }
    }

    /// Strategy with probability `counts[i] / k`, where `k` is the sum of counts.
    pub fn from_counts(counts: &[u32]) -> Self {
        let k: u32 = counts.iter().sum();
        assert!(k > 0, "counts must not all be zero");
        let kf = T::from_u32(k).unwrap();
        Self {
            probs: counts.iter().map(|&c| T::from_u32(c).unwrap() / kf).collect(),
            support_tol: T::support_tol(),
        }
    }

    /// Places `self` inside a larger strategy space, putting probability
    /// `self[t]` on pure strategy `index_map[t]` and zero elsewhere.
    pub fn lift(&self, index_map: &[usize], dim: usize) -> Result<Self> {
        if index_map.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} mapped indices", self.dim()),
                actual: format!("{}", index_map.len()),
            });
        }
        let mut probs = Array1::zeros(dim);
        for (&p, &target) in self.probs.iter().zip(index_map) {
            if target >= dim {
                return Err(Error::InvalidIndexSet(format!("index {target} >= {dim}")));
            }
            probs[target] = probs[target] + p;
        }
        Ok(Self {
            probs,
            support_tol: self.support_tol,
        })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &Array1<T> {
        &self.probs
    }

    pub fn support_tol(&self) -> T {
        self.support_tol
    }

    pub fn get(&self, i: usize) -> T {
        self.probs[i]
    }

    /// Indices carrying more than `support_tol` mass, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > self.support_tol)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.probs[i] > self.support_tol
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.probs.to_vec()
    }
}

/// A row strategy paired with a column strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile<T> {
    pub row: MixedStrategy<T>,
    pub col: MixedStrategy<T>,
}

impl<T: Scalar> StrategyProfile<T> {
    pub fn new(row: MixedStrategy<T>, col: MixedStrategy<T>) -> Self {
        Self { row, col }
    }

    pub fn pure(m: usize, n: usize, i: usize, j: usize) -> Self {
        Self::new(MixedStrategy::pure(m, i), MixedStrategy::pure(n, j))
    }

    /// Swaps the roles of the players, matching a transposed game.
    pub fn swapped(self) -> Self {
        Self {
            row: self.col,
            col: self.row,
        }
    }
}
