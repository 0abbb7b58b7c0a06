use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::scalar::Scalar;
use crate::strategy::MixedStrategy;

/// The game in which the row player may only use a subset of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgame<T> {
    pub game: BimatrixGame<T>,
    /// `row_index_map[t]` is the original row behind subgame row `t`.
    pub row_index_map: Vec<usize>,
    original_rows: usize,
}

impl<T: Scalar> Subgame<T> {
    /// Pads a subgame row strategy with zeros at the excluded rows.
    pub fn lift_row(&self, x: &MixedStrategy<T>) -> Result<MixedStrategy<T>> {
        x.lift(&self.row_index_map, self.original_rows)
    }
}

/// Restricts `game` to `rows`, kept in the given order.
pub fn restrict_rows<T: Scalar>(game: &BimatrixGame<T>, rows: &[usize]) -> Result<Subgame<T>> {
    if rows.is_empty() {
        return Err(Error::InvalidIndexSet("row set is empty".into()));
    }
    if let Some(bad) = rows.iter().find(|&&i| i >= game.rows()) {
        return Err(Error::InvalidIndexSet(format!("row {bad} out of range {}", game.rows())));
    }
    Ok(Subgame {
        game: game.select_rows(rows),
        row_index_map: rows.to_vec(),
        original_rows: game.rows(),
    })
}
