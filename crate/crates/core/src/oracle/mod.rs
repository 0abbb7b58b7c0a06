//! Brute-force validators: exact equilibria by support enumeration, the
//! best regret on a k-uniform grid, and the subgame payoff check. These are
//! independent of the LP-based solvers they are used to test.

pub mod grid;
pub mod lemma;
pub mod support;

pub use grid::min_wsne_epsilon_over_grid;
pub use lemma::{check_subgame_payoff_lemma, SubgameLemmaReport};
pub use support::{exact_nash_support_enumeration, NashCertificate};
