//! The (1/2 + δ)-WSNE algorithm built on two zero-sum games.
//!
//! Both zero-sum games `(R, -R)` and `(-C, C)` are solved first. The player
//! whose zero-sum value is larger drives a three-way case split: low payoffs
//! (the two zero-sum strategies already form a 1/2-WSNE), low threat (a
//! linear feasibility system yields a 1/2-WSNE), or high payoffs (a κ-uniform
//! profile on the subgame of the driving player's support is found by
//! exhaustive search). The column-driven case is run as the row-driven case
//! on the transposed game.

pub mod grid;
pub mod search;
pub mod subgame;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::lp::{min_threat_mixture, solve_zero_sum, SolverConfig, ZeroSumSolution};
use crate::regret::wsne_report;
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};

pub use grid::{enumerate_k_uniform, k_uniform_count, kappa, Compositions};
pub use search::{search_k_uniform_counted, search_k_uniform_wsne, SearchResult};
pub use subgame::{restrict_rows, Subgame};

/// Which case of the algorithm produced the output.
///
/// `3x` cases are driven by the row player's zero-sum value, `4x` by the
/// column player's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "3a")]
    RowLow,
    #[serde(rename = "3b")]
    RowLowThreat,
    #[serde(rename = "3c")]
    RowSearch,
    #[serde(rename = "4a")]
    ColLow,
    #[serde(rename = "4b")]
    ColLowThreat,
    #[serde(rename = "4c")]
    ColSearch,
    /// `1/2 + δ > 1`: any pure profile qualifies.
    #[serde(rename = "3a-degenerate")]
    Degenerate,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::RowLow => "3a",
            Branch::RowLowThreat => "3b",
            Branch::RowSearch => "3c",
            Branch::ColLow => "4a",
            Branch::ColLowThreat => "4b",
            Branch::ColSearch => "4c",
            Branch::Degenerate => "3a-degenerate",
        }
    }

    pub fn case(self) -> Case {
        match self {
            Branch::RowLow | Branch::ColLow | Branch::Degenerate => Case::Low,
            Branch::RowLowThreat | Branch::ColLowThreat => Case::LowThreat,
            Branch::RowSearch | Branch::ColSearch => Case::Search,
        }
    }

    pub fn is_row_driven(self) -> bool {
        matches!(
            self,
            Branch::RowLow | Branch::RowLowThreat | Branch::RowSearch | Branch::Degenerate
        )
    }

    /// The same case driven by the other player.
    pub fn mirrored(self) -> Branch {
        match self {
            Branch::RowLow => Branch::ColLow,
            Branch::RowLowThreat => Branch::ColLowThreat,
            Branch::RowSearch => Branch::ColSearch,
            Branch::ColLow => Branch::RowLow,
            Branch::ColLowThreat => Branch::RowLowThreat,
            Branch::ColSearch => Branch::RowSearch,
            Branch::Degenerate => Branch::Degenerate,
        }
    }

    pub(crate) fn from_case(case: Case, row_driven: bool) -> Branch {
        match (case, row_driven) {
            (Case::Low, true) => Branch::RowLow,
            (Case::LowThreat, true) => Branch::RowLowThreat,
            (Case::Search, true) => Branch::RowSearch,
            (Case::Low, false) => Branch::ColLow,
            (Case::LowThreat, false) => Branch::ColLowThreat,
            (Case::Search, false) => Branch::ColSearch,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Low,
    LowThreat,
    Search,
}

/// Equilibria of both zero-sum games, in the original game's orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumPair<T> {
    /// Max-min row strategy of `(R, -R)`.
    pub x_star: MixedStrategy<T>,
    /// Min-max column strategy of `(R, -R)`.
    pub y_star: MixedStrategy<T>,
    /// `rpay(x*, y*)`.
    pub row_value: T,
    /// Row strategy of `(-C, C)`, minimizing the column player's payoff.
    pub x_hat: MixedStrategy<T>,
    /// Column strategy of `(-C, C)`, maximizing the column player's payoff.
    pub y_hat: MixedStrategy<T>,
    /// `cpay(x̂, ŷ)`.
    pub col_value: T,
}

impl<T: Scalar> ZeroSumPair<T> {
    pub fn solve(game: &BimatrixGame<T>, cfg: &SolverConfig<T>) -> Result<Self> {
        let row = solve_zero_sum(game.row_payoffs(), cfg)?;
        let col_t = game.col_payoffs().t().to_owned();
        let col = solve_zero_sum(&col_t, cfg)?;
        Ok(Self::from_solutions(row, col))
    }

    /// `row` solves `(R, -R)`; `col` solves the zero-sum game with row-player
    /// matrix `C^T`, so its `x` lives on columns and its `y` on rows.
    pub fn from_solutions(row: ZeroSumSolution<T>, col: ZeroSumSolution<T>) -> Self {
        Self {
            x_star: row.x,
            y_star: row.y,
            row_value: row.value,
            x_hat: col.y,
            y_hat: col.x,
            col_value: col.value,
        }
    }

    /// The same pair seen in the transposed game `(C^T, R^T)`.
    pub fn transposed(&self) -> Self {
        Self {
            x_star: self.y_hat.clone(),
            y_star: self.x_hat.clone(),
            row_value: self.col_value,
            x_hat: self.y_star.clone(),
            y_hat: self.x_star.clone(),
            col_value: self.row_value,
        }
    }

    /// Whether the row player's value drives the case split. Values within
    /// `tie_tol` of each other count as a tie, which goes to the row player.
    pub fn row_drives(&self, tie_tol: T) -> bool {
        self.row_value >= self.col_value - tie_tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<T> {
    pub zero_sum: Option<ZeroSumPair<T>>,
    /// Smallest achievable `max_j cpay(x', e_j)` over the driving support
    /// (mirrored for column-driven runs), when the low-threat system was tried.
    pub min_threat: Option<T>,
    pub kappa: Option<usize>,
    pub profiles_enumerated: u64,
    /// The restricted search failed and the unrestricted pass ran.
    pub used_full_search: bool,
}

impl<T> Default for Diagnostics<T> {
    fn default() -> Self {
        Self {
            zero_sum: None,
            min_threat: None,
            kappa: None,
            profiles_enumerated: 0,
            used_full_search: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmOutcome<T> {
    pub profile: StrategyProfile<T>,
    pub branch: Branch,
    /// WSNE regret of `profile` on the full game.
    pub certified_epsilon: T,
    pub diagnostics: Diagnostics<T>,
}

impl<T: Scalar> AlgorithmOutcome<T> {
    /// Whether the certified regret meets `1/2 + δ` within `tol`.
    pub fn within_guarantee(&self, delta: T, tol: T) -> bool {
        self.certified_epsilon <= T::lit(0.5) + delta + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WsneOptions<T> {
    pub delta: T,
    /// Replaces κ(δ) in the exhaustive search.
    pub kappa_override: Option<usize>,
    pub solver: SolverConfig<T>,
}

impl<T: Scalar> WsneOptions<T> {
    pub fn new(delta: T) -> Self {
        Self {
            delta,
            kappa_override: None,
            solver: SolverConfig::default(),
        }
    }

    pub fn search_kappa(&self) -> Result<usize> {
        match self.kappa_override {
            Some(0) => Err(Error::InvalidParameter("kappa override must be positive".into())),
            Some(k) => Ok(k),
            None => kappa(self.delta),
        }
    }
}

/// Computes a (1/2 + δ)-WSNE of `game`.
pub fn approximate_wsne<T: Scalar>(
    game: &BimatrixGame<T>,
    delta: T,
    cfg: &SolverConfig<T>,
) -> Result<AlgorithmOutcome<T>> {
    let opts = WsneOptions {
        solver: *cfg,
        ..WsneOptions::new(delta)
    };
    approximate_wsne_with(game, &opts)
}

pub fn approximate_wsne_with<T: Scalar>(
    game: &BimatrixGame<T>,
    opts: &WsneOptions<T>,
) -> Result<AlgorithmOutcome<T>> {
    let delta = opts.delta;
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
    }
    opts.solver.validate()?;
    let half = T::lit(0.5);

    if half + delta > T::one() {
        let profile = StrategyProfile::pure(game.rows(), game.cols(), 0, 0);
        let certified_epsilon = wsne_report(game, &profile)?.wsne_epsilon;
        return Ok(AlgorithmOutcome {
            profile,
            branch: Branch::Degenerate,
            certified_epsilon,
            diagnostics: Diagnostics::default(),
        });
    }

    let pair = ZeroSumPair::solve(game, &opts.solver)?;
    let row_driven = pair.row_drives(opts.solver.feasibility_tol);

    let (profile, case, mut diagnostics) = if row_driven {
        row_driven_case(game, &pair, opts)?
    } else {
        let (p, case, diag) = row_driven_case(&game.transposed(), &pair.transposed(), opts)?;
        (p.swapped(), case, diag)
    };
    diagnostics.zero_sum = Some(pair);

    let certified_epsilon = wsne_report(game, &profile)?.wsne_epsilon;
    Ok(AlgorithmOutcome {
        profile,
        branch: Branch::from_case(case, row_driven),
        certified_epsilon,
        diagnostics,
    })
}

/// The case split for a game whose row player's zero-sum value is at least
/// the column player's.
fn row_driven_case<T: Scalar>(
    game: &BimatrixGame<T>,
    pair: &ZeroSumPair<T>,
    opts: &WsneOptions<T>,
) -> Result<(StrategyProfile<T>, Case, Diagnostics<T>)> {
    let half = T::lit(0.5);
    let mut diag = Diagnostics::default();

    if pair.row_value <= half + opts.solver.feasibility_tol {
        let profile = StrategyProfile::new(pair.x_hat.clone(), pair.y_star.clone());
        return Ok((profile, Case::Low, diag));
    }

    let support = pair.x_star.support();
    let (x_low, threat) = min_threat_mixture(game.col_payoffs(), &support, &opts.solver)?;
    diag.min_threat = Some(threat);
    if threat <= half + opts.solver.feasibility_tol {
        let profile = StrategyProfile::new(x_low, pair.y_star.clone());
        return Ok((profile, Case::LowThreat, diag));
    }

    let k = opts.search_kappa()?;
    diag.kappa = Some(k);
    let target = half + opts.delta;
    let restricted = search_k_uniform_counted(game, &support, k, target);
    diag.profiles_enumerated = restricted.enumerated;
    if let Some(p) = restricted.profile {
        return Ok((p, Case::Search, diag));
    }

    let all_rows: Vec<usize> = (0..game.rows()).collect();
    let full = search_k_uniform_counted(game, &all_rows, k, target);
    diag.profiles_enumerated += full.enumerated;
    diag.used_full_search = true;
    match full.profile {
        Some(p) => Ok((p, Case::Search, diag)),
        None => Err(Error::SearchExhausted {
            target: target.as_f64(),
        }),
    }
}
