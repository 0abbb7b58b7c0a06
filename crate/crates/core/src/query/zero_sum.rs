//! Zero-sum equilibria computed through payoff queries.

use ndarray::{Array1, Array2};
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{solve_zero_sum, SolverConfig};
use crate::query::oracle::{PartialGame, PayoffOracle, Transposed};
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};

/// How a zero-sum game is solved from queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroSumSolver {
    /// Query every cell and solve the linear program.
    ExactFull,
    /// Multiplicative-weights self-play on sampled rows and columns.
    SampledMwu,
}

/// Which zero-sum game of the bimatrix game to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `(R, -R)`.
    RowGame,
    /// `(-C, C)`.
    ColumnGame,
}

pub const DEFAULT_MWU_BUDGET_CONSTANT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSumQueryConfig<T> {
    pub solver: ZeroSumSolver,
    /// `c_q` in the MWU query budget `c_q · N · ln N / ε⁴`, `N = max(m, n)`.
    pub mwu_budget_constant: f64,
    pub lp: SolverConfig<T>,
}

impl<T: Scalar> ZeroSumQueryConfig<T> {
    pub fn new(solver: ZeroSumSolver) -> Self {
        Self {
            solver,
            mwu_budget_constant: DEFAULT_MWU_BUDGET_CONSTANT,
            lp: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueriedZeroSum<T> {
    /// In the orientation of the bimatrix game: `row` lives on rows.
    pub profile: StrategyProfile<T>,
    /// Payoff of the maximizing player (row player for `RowGame`, column
    /// player for `ColumnGame`) at `profile`, from queried entries.
    pub value: T,
    /// WSNE regret of `profile` in the zero-sum game. Exact: it only needs the
    /// rows and columns in the supports, which are always queried.
    pub achieved_epsilon: T,
    /// The achieved regret exceeds the requested ε.
    pub low_confidence: bool,
    pub queries: u64,
}

/// Solves one of the two zero-sum games of the oracle's game.
pub fn zero_sum_wsne_via_queries<T: Scalar, O: PayoffOracle<T>>(
    oracle: &mut O,
    orientation: Orientation,
    eps: f64,
    seed: u64,
    cfg: &ZeroSumQueryConfig<T>,
) -> Result<QueriedZeroSum<T>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {eps} not in (0, 1]")));
    }
    let (m, n) = oracle.dims();
    if m == 0 || n == 0 {
        return Err(Error::EmptyGame);
    }
    match orientation {
        Orientation::RowGame => solve_oriented(oracle, eps, seed, cfg),
        Orientation::ColumnGame => {
            let res = solve_oriented(&mut Transposed(&mut *oracle), eps, seed, cfg)?;
            Ok(QueriedZeroSum {
                profile: res.profile.swapped(),
                ..res
            })
        }
    }
}

/// Solves `(M, -M)` where `M` is the first payoff of the oracle.
fn solve_oriented<T: Scalar, O: PayoffOracle<T>>(
    oracle: &mut O,
    eps: f64,
    seed: u64,
    cfg: &ZeroSumQueryConfig<T>,
) -> Result<QueriedZeroSum<T>> {
    let (m, n) = oracle.dims();
    let mut seen = PartialGame::new(m, n);
    let mut queries = 0u64;
    let profile = match cfg.solver {
        ZeroSumSolver::ExactFull => {
            let rows: Vec<usize> = (0..m).collect();
            seen.fill_rows(oracle, &rows);
            queries = (m * n) as u64;
            let (payoff, _) = seen.rows_block(&rows)?;
            let sol = solve_zero_sum(&payoff, &cfg.lp)?;
            StrategyProfile::new(sol.x, sol.y)
        }
        ZeroSumSolver::SampledMwu => mwu(oracle, &mut seen, &mut queries, eps, seed, cfg.mwu_budget_constant)?,
    };
    let (value, achieved) = evaluate(&seen, &profile)?;
    Ok(QueriedZeroSum {
        profile,
        value,
        achieved_epsilon: achieved,
        low_confidence: achieved.as_f64() > eps,
        queries,
    })
}

/// Row payoffs `M y` on every row and column payoffs `x^T M` on every column.
fn payoff_vectors<T: Scalar>(seen: &PartialGame<T>, p: &StrategyProfile<T>) -> Result<(Array1<T>, Array1<T>)> {
    let (m, n) = seen.dims();
    let mut my = Array1::zeros(m);
    let mut xm = Array1::zeros(n);
    for j in p.col.support() {
        let w = p.col.get(j);
        for i in 0..m {
            my[i] = my[i] + w * seen.get(i, j)?.0;
        }
    }
    for i in p.row.support() {
        let w = p.row.get(i);
        for j in 0..n {
            xm[j] = xm[j] + w * seen.get(i, j)?.0;
        }
    }
    Ok((my, xm))
}

fn regrets<T: Scalar>(p: &StrategyProfile<T>, my: &Array1<T>, xm: &Array1<T>) -> T {
    let row_best = my.iter().copied().fold(T::neg_infinity(), T::max);
    let row_worst = p.row.support().into_iter().map(|i| my[i]).fold(T::infinity(), T::min);
    // the column player minimizes x^T M
    let col_best = xm.iter().copied().fold(T::infinity(), T::min);
    let col_worst = p.col.support().into_iter().map(|j| xm[j]).fold(T::neg_infinity(), T::max);
    (row_best - row_worst).max(col_worst - col_best).max(T::zero())
}

/// (value, WSNE regret) of `p` in `(M, -M)`.
fn evaluate<T: Scalar>(seen: &PartialGame<T>, p: &StrategyProfile<T>) -> Result<(T, T)> {
    let (my, xm) = payoff_vectors(seen, p)?;
    let value = p.row.probs().dot(&my);
    Ok((value, regrets(p, &my, &xm)))
}

fn softmax(logits: &[f64]) -> Vec<f64> {
    let hi = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    logits.iter().map(|l| (l - hi).exp()).collect()
}

fn restrict<T: Scalar>(s: &MixedStrategy<T>, keep: impl Fn(usize) -> bool) -> MixedStrategy<T> {
    let w: Vec<T> = (0..s.dim()).map(|i| if keep(i) { s.get(i) } else { T::zero() }).collect();
    MixedStrategy::from_weights(&w).unwrap_or_else(|_| s.clone())
}

fn mwu<T: Scalar, O: PayoffOracle<T>>(
    oracle: &mut O,
    seen: &mut PartialGame<T>,
    queries: &mut u64,
    eps: f64,
    seed: u64,
    budget_constant: f64,
) -> Result<StrategyProfile<T>> {
    if !(budget_constant > 0.0 && budget_constant.is_finite()) {
        return Err(Error::InvalidParameter(format!("budget constant {budget_constant} must be positive")));
    }
    let (m, n) = oracle.dims();
    let big = m.max(n) as f64;
    let budget = (budget_constant * big * big.ln().max(1.0) / eps.powi(4)).ceil() as u64;
    let rounds = (budget / (m + n) as u64).max(1);
    let eta = (8.0 * big.max(2.0).ln() / rounds as f64).sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row_logits = vec![0.0; m];
    let mut col_logits = vec![0.0; n];
    let mut row_counts = vec![0u32; m];
    let mut col_counts = vec![0u32; n];

    for _ in 0..rounds {
        let i = WeightedIndex::new(softmax(&row_logits)).expect("finite weights").sample(&mut rng);
        let j = WeightedIndex::new(softmax(&col_logits)).expect("finite weights").sample(&mut rng);
        let cost = (0..n).filter(|&c| !seen.is_known(i, c)).count()
            + (0..m).filter(|&r| r != i && !seen.is_known(r, j)).count();
        if *queries + cost as u64 > budget {
            break;
        }
        *queries += cost as u64;
        seen.fill_rows(oracle, &[i]);
        seen.fill_cols(oracle, &[j]);
        row_counts[i] += 1;
        col_counts[j] += 1;
        for r in 0..m {
            row_logits[r] += eta * seen.get(r, j)?.0.as_f64();
        }
        for c in 0..n {
            col_logits[c] -= eta * seen.get(i, c)?.0.as_f64();
        }
    }
    if row_counts.iter().all(|c| *c == 0) {
        return Err(Error::InvalidParameter(format!(
            "query budget {budget} too small for a single round"
        )));
    }

    // Prune the empirical strategies to near-best responses and keep the
    // candidate with the smallest regret.
    let sampled = StrategyProfile::new(
        MixedStrategy::from_counts(&row_counts),
        MixedStrategy::from_counts(&col_counts),
    );
    let mut best = sampled.clone();
    let mut best_eps = evaluate(seen, &best)?.1;
    for frac in [0.125, 0.25, 0.5, 1.0] {
        let tau = T::lit(eps * frac);
        let mut p = sampled.clone();
        for _ in 0..3 {
            let (my, xm) = payoff_vectors(seen, &p)?;
            let row_best = my.iter().copied().fold(T::neg_infinity(), T::max);
            let col_best = xm.iter().copied().fold(T::infinity(), T::min);
            let row = restrict(&p.row, |r| my[r] >= row_best - tau);
            let col = restrict(&p.col, |c| xm[c] <= col_best + tau);
            p = StrategyProfile::new(row, col);
            let e = evaluate(seen, &p)?.1;
            if e < best_eps {
                best_eps = e;
                best = p.clone();
            }
        }
    }
    Ok(best)
}

/// `(value, regret)` of `p` in `(M, -M)` for a fully known `M`.
pub fn zero_sum_regret<T: Scalar>(payoff: &Array2<T>, p: &StrategyProfile<T>) -> (T, T) {
    let my = payoff.dot(p.col.probs());
    let xm = p.row.probs().dot(payoff);
    (p.row.probs().dot(&my), regrets(p, &my, &xm))
}
