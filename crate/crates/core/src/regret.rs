//! Regret certificates for strategy profiles.

use crate::error::Result;
use crate::game::BimatrixGame;
use crate::scalar::Scalar;
use crate::strategy::StrategyProfile;

/// Best-response and worst-in-support payoffs of both players, and the
/// smallest ε for which the profile is an ε-WSNE and an ε-NE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretReport<T> {
    pub row_best: T,
    pub row_worst_support: T,
    pub row_regret: T,
    pub col_best: T,
    pub col_worst_support: T,
    pub col_regret: T,
    pub wsne_epsilon: T,
    pub ne_epsilon: T,
}

/// Computes the exact regret certificate of `p` in `game`.
///
/// No tolerance is applied to the result; callers compare it against their
/// own threshold.
pub fn wsne_report<T: Scalar>(game: &BimatrixGame<T>, p: &StrategyProfile<T>) -> Result<RegretReport<T>> {
    let row_pay = game.pure_row_payoffs(&p.col)?;
    let col_pay = game.pure_col_payoffs(&p.row)?;

    let row_best = row_pay.iter().copied().fold(T::neg_infinity(), T::max);
    let col_best = col_pay.iter().copied().fold(T::neg_infinity(), T::max);
    let row_worst_support = p
        .row
        .support()
        .into_iter()
        .map(|i| row_pay[i])
        .fold(T::infinity(), T::min);
    let col_worst_support = p
        .col
        .support()
        .into_iter()
        .map(|j| col_pay[j])
        .fold(T::infinity(), T::min);

    let row_regret = (row_best - row_worst_support).max(T::zero());
    let col_regret = (col_best - col_worst_support).max(T::zero());

    let rpay = p.row.probs().dot(&row_pay);
    let cpay = col_pay.dot(p.col.probs());
    let ne_epsilon = (row_best - rpay).max(col_best - cpay).max(T::zero());

    Ok(RegretReport {
        row_best,
        row_worst_support,
        row_regret,
        col_best,
        col_worst_support,
        col_regret,
        wsne_epsilon: row_regret.max(col_regret),
        ne_epsilon,
    })
}
