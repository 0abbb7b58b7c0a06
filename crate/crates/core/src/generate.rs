//! Seeded random game families.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::scalar::Scalar;

/// Lower end of the payoff range used by [`GameKind::Force3c`].
pub const FORCE_SEARCH_FLOOR: f64 = 0.55;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameKind {
    /// Independent uniform payoffs on `[0, 1]`.
    Uniform,
    /// `C = 1 - R` with `R` uniform.
    ZeroSum,
    /// Every payoff equal to one uniform draw.
    Constant,
    /// Every payoff uniform on `[0.55, 1]`. Both zero-sum values exceed 1/2
    /// and no row mixture holds the column player to 1/2, so the algorithm
    /// always reaches the search case.
    Force3c,
}

impl GameKind {
    pub const ALL: [GameKind; 4] = [GameKind::Uniform, GameKind::ZeroSum, GameKind::Constant, GameKind::Force3c];

    pub fn name(self) -> &'static str {
        match self {
            GameKind::Uniform => "uniform",
            GameKind::ZeroSum => "zero-sum",
            GameKind::Constant => "constant",
            GameKind::Force3c => "force-3c",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GameKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown game kind {s:?}")))
    }
}

/// A game of the given family drawn from a ChaCha8 stream seeded by `seed`.
pub fn generate<T: Scalar>(kind: GameKind, m: usize, n: usize, seed: u64) -> Result<BimatrixGame<T>> {
    generate_with(kind, m, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn generate_with<T: Scalar, R: Rng + ?Sized>(
    kind: GameKind,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<BimatrixGame<T>> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGame);
    }
    let mut draw = |lo: f64| Array2::from_shape_fn((m, n), |_| T::lit(rng.gen_range(lo..=1.0)));
    match kind {
        GameKind::Uniform => {
            let r = draw(0.0);
            let c = draw(0.0);
            BimatrixGame::new(r, c)
        }
        GameKind::ZeroSum => BimatrixGame::constant_sum(draw(0.0)),
        GameKind::Constant => constant_game(m, n, T::lit(rng.gen_range(0.0..=1.0))),
        GameKind::Force3c => {
            let r = draw(FORCE_SEARCH_FLOOR);
            let c = draw(FORCE_SEARCH_FLOOR);
            BimatrixGame::new(r, c)
        }
    }
}

/// Both players receive `value` everywhere.
pub fn constant_game<T: Scalar>(m: usize, n: usize, value: T) -> Result<BimatrixGame<T>> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGame);
    }
    BimatrixGame::new(Array2::from_elem((m, n), value), Array2::from_elem((m, n), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::SolverConfig;
    use crate::wsne::{approximate_wsne, Branch};

    #[test]
    fn deterministic() {
        for kind in GameKind::ALL {
            let a: BimatrixGame<f64> = generate(kind, 3, 4, 11).unwrap();
            let b: BimatrixGame<f64> = generate(kind, 3, 4, 11).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.dims(), (3, 4));
        }
        let a: BimatrixGame<f64> = generate(GameKind::Uniform, 3, 3, 1).unwrap();
        let b: BimatrixGame<f64> = generate(GameKind::Uniform, 3, 3, 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn family_shapes() {
        let z: BimatrixGame<f64> = generate(GameKind::ZeroSum, 3, 3, 5).unwrap();
        for (r, c) in z.row_payoffs().iter().zip(z.col_payoffs()) {
            assert_eq!(r + c, 1.0);
        }
        let k: BimatrixGame<f64> = generate(GameKind::Constant, 2, 5, 5).unwrap();
        let v = k.row_payoffs()[[0, 0]];
        assert!(k.row_payoffs().iter().chain(k.col_payoffs()).all(|x| *x == v));
        let f: BimatrixGame<f64> = generate(GameKind::Force3c, 4, 4, 5).unwrap();
        assert!(f.row_payoffs().iter().chain(f.col_payoffs()).all(|x| *x >= FORCE_SEARCH_FLOOR));
    }

    #[test]
    fn force_3c_reaches_search() {
        let g: BimatrixGame<f64> = generate(GameKind::Force3c, 4, 4, 7).unwrap();
        let out = approximate_wsne(&g, 0.5, &SolverConfig::default()).unwrap();
        assert!(matches!(out.branch, Branch::RowSearch | Branch::ColSearch));
    }

    #[test]
    fn constant_point_three_is_low() {
        let g = constant_game(3, 3, 0.3).unwrap();
        let out = approximate_wsne(&g, 0.5, &SolverConfig::default()).unwrap();
        assert_eq!(out.branch, Branch::RowLow);
    }

    #[test]
    fn names_round_trip() {
        for kind in GameKind::ALL {
            assert_eq!(kind.name().parse::<GameKind>().unwrap(), kind);
        }
        assert!("bogus".parse::<GameKind>().is_err());
    }
}
