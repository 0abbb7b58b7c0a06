//! JSON file formats for games and strategy profiles.

use std::fs;
use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{matrix_from_rows, BimatrixGame};
use crate::strategy::{MixedStrategy, StrategyProfile};

/// `{ "rows": m, "cols": n, "R": [[...]], "C": [[...]] }`, row-major.
///
/// Payoffs may lie outside `[0, 1]`; callers normalize before solving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "R")]
    pub r: Vec<Vec<f64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<f64>>,
}

impl GameFile {
    pub fn from_game(game: &BimatrixGame<f64>) -> Self {
        let rows_of = |a: &Array2<f64>| a.outer_iter().map(|r| r.to_vec()).collect();
        Self {
            rows: game.rows(),
            cols: game.cols(),
            r: rows_of(game.row_payoffs()),
            c: rows_of(game.col_payoffs()),
        }
    }

    /// Checks the declared dimensions and finiteness, returning `(R, C)`.
    pub fn matrices(&self) -> Result<(Array2<f64>, Array2<f64>)> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::EmptyGame);
        }
        let mut out = Vec::with_capacity(2);
        for (name, m) in [("R", &self.r), ("C", &self.c)] {
            if m.len() != self.rows || m.iter().any(|row| row.len() != self.cols) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{name} of shape {}x{}", self.rows, self.cols),
                    actual: format!(
                        "{} rows of lengths {:?}",
                        m.len(),
                        m.iter().map(Vec::len).collect::<Vec<_>>()
                    ),
                });
            }
            let a = matrix_from_rows(m)?;
            if let Some(((row, col), _)) = a.indexed_iter().find(|(_, v)| !v.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
            out.push(a);
        }
        let c = out.pop().unwrap();
        let r = out.pop().unwrap();
        Ok((r, c))
    }

    /// The game, when every payoff already lies in `[0, 1]`.
    pub fn to_game(&self) -> Result<BimatrixGame<f64>> {
        let (r, c) = self.matrices()?;
        BimatrixGame::new(r, c)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        file.matrices()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite numbers serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&read_text(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_json())
    }
}

/// `{ "x": [...], "y": [...] }`. Extra fields are ignored, so a solver report
/// can be read back as a profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileFile {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ProfileFile {
    pub fn from_profile(p: &StrategyProfile<f64>) -> Self {
        Self {
            x: p.row.to_vec(),
            y: p.col.to_vec(),
        }
    }

    pub fn to_profile(&self) -> Result<StrategyProfile<f64>> {
        Ok(StrategyProfile::new(
            MixedStrategy::new(self.x.clone())?,
            MixedStrategy::new(self.y.clone())?,
        ))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&read_text(path)?)
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
