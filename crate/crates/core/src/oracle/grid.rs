//! Brute-force minimum of the WSNE regret over the k-uniform grid.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};
use crate::wsne::grid::{k_uniform_count, Compositions};

/// Largest number of profile pairs the grid minimizer will visit.
pub const GRID_PROFILE_LIMIT: u128 = 10_000_000;

fn weighted_sum<T: Scalar>(counts: &[u32], k: T, vectors: impl Fn(usize) -> Array1<T>, len: usize) -> Array1<T> {
    let mut acc = Array1::<T>::zeros(len);
    for (i, &cnt) in counts.iter().enumerate() {
        if cnt > 0 {
            acc.scaled_add(T::from_u32(cnt).unwrap() / k, &vectors(i));
        }
    }
    acc
}

fn worst_on_support<T: Scalar>(counts: &[u32], pay: &Array1<T>) -> T {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| pay[i])
        .fold(T::infinity(), T::min)
}

fn best<T: Scalar>(pay: &Array1<T>) -> T {
    pay.iter().copied().fold(T::neg_infinity(), T::max)
}

/// The smallest WSNE regret attained by any k-uniform profile, and the first
/// profile (row grid outer, column grid inner) attaining it.
pub fn min_wsne_epsilon_over_grid<T: Scalar>(
    game: &BimatrixGame<T>,
    k: usize,
) -> Result<(T, StrategyProfile<T>)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let (m, n) = game.dims();
    let pairs = k_uniform_count(m, k).saturating_mul(k_uniform_count(n, k));
    if pairs > GRID_PROFILE_LIMIT {
        return Err(Error::SizeGuard(format!(
            "{pairs} k-uniform profiles exceed {GRID_PROFILE_LIMIT}"
        )));
    }
    let r = game.row_payoffs();
    let c = game.col_payoffs();
    let kf = T::from_usize_lossy(k);

    // row payoffs against every column grid point, computed once
    let cols: Vec<Vec<u32>> = Compositions::new(n, k).collect();
    let col_data: Vec<(Array1<T>, T)> = cols
        .iter()
        .map(|z| {
            let pay = weighted_sum(z, kf, |j| r.column(j).to_owned(), m);
            let b = best(&pay);
            (pay, b)
        })
        .collect();

    let mut best_eps = T::infinity();
    let mut best_pair: Option<(Vec<u32>, usize)> = None;
    for w in Compositions::new(m, k) {
        let col_pay = weighted_sum(&w, kf, |i| c.row(i).to_owned(), n);
        let col_best = best(&col_pay);
        for (zi, z) in cols.iter().enumerate() {
            let (row_pay, row_best) = &col_data[zi];
            let row_regret = *row_best - worst_on_support(&w, row_pay);
            let col_regret = col_best - worst_on_support(z, &col_pay);
            let eps = row_regret.max(col_regret).max(T::zero());
            if eps < best_eps {
                best_eps = eps;
                best_pair = Some((w.clone(), zi));
            }
        }
    }
    let (w, zi) = best_pair.expect("grid is nonempty");
    let profile = StrategyProfile::new(MixedStrategy::from_counts(&w), MixedStrategy::from_counts(&cols[zi]));
    Ok((best_eps, profile))
}
