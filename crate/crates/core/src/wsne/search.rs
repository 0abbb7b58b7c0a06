//! Exhaustive search over κ-uniform profiles.

use ndarray::Array1;

use crate::game::BimatrixGame;
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};
use crate::wsne::grid::Compositions;

#[derive(Debug, Clone)]
pub struct SearchResult<T> {
    pub profile: Option<StrategyProfile<T>>,
    /// Profiles examined, including the accepted one.
    pub enumerated: u64,
}

/// Returns the first κ-uniform profile (in enumeration order) whose full-game
/// WSNE regret is at most `target_eps`. The row strategy is restricted to
/// `row_support`; the column strategy ranges over all columns.
pub fn search_k_uniform_wsne<T: Scalar>(
    game: &BimatrixGame<T>,
    row_support: &[usize],
    kappa: usize,
    target_eps: T,
) -> Option<StrategyProfile<T>> {
    search_k_uniform_counted(game, row_support, kappa, target_eps).profile
}

/// [`search_k_uniform_wsne`] that also reports how many profiles it examined.
pub fn search_k_uniform_counted<T: Scalar>(
    game: &BimatrixGame<T>,
    row_support: &[usize],
    kappa: usize,
    target_eps: T,
) -> SearchResult<T> {
    assert!(!row_support.is_empty(), "row support must be nonempty");
    assert!(kappa >= 1, "kappa must be positive");
    let (m, n) = game.dims();
    let r = game.row_payoffs();
    let c = game.col_payoffs();
    let k = T::from_usize_lossy(kappa);

    let mut enumerated = 0u64;
    let mut col_pay = Array1::<T>::zeros(n);
    let mut row_pay = Array1::<T>::zeros(m);

    let mut rows_iter = Compositions::new(row_support.len(), kappa);
    while let Some(w) = rows_iter.next_ref() {
        col_pay.fill(T::zero());
        for (t, &cnt) in w.iter().enumerate() {
            if cnt > 0 {
                let weight = T::from_u32(cnt).unwrap() / k;
                col_pay.scaled_add(weight, &c.row(row_support[t]));
            }
        }
        let col_best = col_pay.iter().copied().fold(T::neg_infinity(), T::max);

        let mut cols_iter = Compositions::new(n, kappa);
        while let Some(z) = cols_iter.next_ref() {
            enumerated += 1;
            let col_worst = z
                .iter()
                .enumerate()
                .filter(|(_, &cnt)| cnt > 0)
                .map(|(j, _)| col_pay[j])
                .fold(T::infinity(), T::min);
            if col_best - col_worst > target_eps {
                continue;
            }
            row_pay.fill(T::zero());
            for (j, &cnt) in z.iter().enumerate() {
                if cnt > 0 {
                    let weight = T::from_u32(cnt).unwrap() / k;
                    row_pay.scaled_add(weight, &r.column(j));
                }
            }
            let row_best = row_pay.iter().copied().fold(T::neg_infinity(), T::max);
            let row_worst = w
                .iter()
                .enumerate()
                .filter(|(_, &cnt)| cnt > 0)
                .map(|(t, _)| row_pay[row_support[t]])
                .fold(T::infinity(), T::min);
            if row_best - row_worst <= target_eps {
                let small = MixedStrategy::from_counts(w);
                let row = small
                    .lift(row_support, m)
                    .expect("support indices validated by caller");
                let col = MixedStrategy::from_counts(z);
                return SearchResult {
                    profile: Some(StrategyProfile::new(row, col)),
                    enumerated,
                };
            }
        }
    }
    SearchResult {
        profile: None,
        enumerated,
    }
}
