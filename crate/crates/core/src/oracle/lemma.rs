//! Checks that every equilibrium of a row-restricted subgame pays both
//! players more than 1/2.

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::oracle::support::{exact_nash_support_enumeration, NashCertificate, MAX_ENUMERATION_DIM};
use crate::scalar::Scalar;
use crate::wsne::subgame::restrict_rows;

const MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SubgameLemmaReport<T> {
    /// At least one equilibrium was found and none of them is a witness.
    pub holds: bool,
    /// Number of exact equilibria of the subgame that were checked.
    pub equilibria: usize,
    /// Equilibria (in subgame coordinates) paying some player at most `1/2 - 1e-6`.
    pub witnesses: Vec<NashCertificate<T>>,
}

/// Enumerates the exact equilibria of the subgame on `row_support` and
/// checks that both expected payoffs exceed `1/2 - 1e-6` in each.
pub fn check_subgame_payoff_lemma<T: Scalar>(
    game: &BimatrixGame<T>,
    row_support: &[usize],
) -> Result<SubgameLemmaReport<T>> {
    let sub = restrict_rows(game, row_support)?;
    let (s, n) = sub.game.dims();
    if s > MAX_ENUMERATION_DIM || n > MAX_ENUMERATION_DIM {
        return Err(Error::SizeGuard(format!("{s}x{n} subgame is too large to enumerate")));
    }
    let eqs = exact_nash_support_enumeration(&sub.game, s.min(n))?;
    let bound = T::lit(0.5 - MARGIN);
    let equilibria = eqs.len();
    let witnesses: Vec<_> = eqs
        .into_iter()
        .filter(|e| !(e.row_payoff > bound && e.col_payoff > bound))
        .collect();
    Ok(SubgameLemmaReport {
        holds: equilibria > 0 && witnesses.is_empty(),
        equilibria,
        witnesses,
    })
}
