//! Well-supported approximate Nash equilibria for bimatrix games.
//!
//! The core routines are generic over the floating point type through
//! [`Scalar`]; the aliases below fix it to `f64`, which is what the
//! command-line tool and the test suites use.

pub mod error;
pub mod game;
pub mod generate;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod query;
pub mod regret;
pub mod scalar;
pub mod strategy;
pub mod wsne;

pub use error::{Error, Result};
pub use game::{normalize, BimatrixGame, NormalizationRecord};
pub use lp::{find_low_threat_mixture, solve_zero_sum, SolverConfig, ZeroSumSolution};
pub use regret::{wsne_report, RegretReport};
pub use scalar::Scalar;
pub use strategy::{MixedStrategy, StrategyProfile};
pub use wsne::{approximate_wsne, approximate_wsne_with, AlgorithmOutcome, Branch, WsneOptions};

pub type Game = BimatrixGame<f64>;
pub type Strategy = MixedStrategy<f64>;
pub type Profile = StrategyProfile<f64>;
pub type Report = RegretReport<f64>;
pub type Outcome = AlgorithmOutcome<f64>;
pub type Config = SolverConfig<f64>;

pub type Game32 = BimatrixGame<f32>;
pub type Profile32 = StrategyProfile<f32>;
