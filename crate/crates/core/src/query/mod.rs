//! The payoff-query model and the query-efficient variant of the algorithm.
//!
//! The game is hidden behind a [`PayoffOracle`]. Both zero-sum games are
//! solved through a pluggable [`ZeroSumSolver`], the driving player's
//! zero-sum strategy is replaced by a sampled k-uniform strategy, and only the
//! rows in its support are queried. The three cases then run on that subgame.

pub mod oracle;
pub mod sampling;
pub mod zero_sum;

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lp::min_threat_mixture;
use crate::regret::wsne_report;
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};
use crate::wsne::{kappa, Branch, Case, Compositions, ZeroSumPair};

pub use oracle::{
    build_queried_subgame, query_full_game, CountingOracle, MatrixOracle, PartialGame, PayoffOracle, Phase,
    QueryStats, Transposed,
};
pub use sampling::{sample_counts, sample_k_uniform, sample_k_uniform_with, sampling_size, DEFAULT_SAMPLING_CONSTANT};
pub use zero_sum::{
    zero_sum_regret, zero_sum_wsne_via_queries, Orientation, QueriedZeroSum, ZeroSumQueryConfig, ZeroSumSolver,
};

pub const DEFAULT_ATTEMPTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryOptions<T> {
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub zero_sum: ZeroSumQueryConfig<T>,
    /// `c_s` in [`sampling_size`].
    pub sampling_constant: f64,
    pub kappa_override: Option<usize>,
    /// Sampling attempts before an exhausted search is reported as failure.
    pub attempts: usize,
    /// Query the whole game afterwards and certify the output.
    pub audit: bool,
}

impl<T: Scalar> QueryOptions<T> {
    pub fn new(epsilon: f64, delta: f64, seed: u64, solver: ZeroSumSolver) -> Self {
        Self {
            epsilon,
            delta,
            seed,
            zero_sum: ZeroSumQueryConfig::new(solver),
            sampling_constant: DEFAULT_SAMPLING_CONSTANT,
            kappa_override: None,
            attempts: DEFAULT_ATTEMPTS,
            audit: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon {} not in (0, 1)", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta {} not in (0, 1)", self.delta)));
        }
        if self.attempts == 0 {
            return Err(Error::InvalidParameter("attempts must be positive".into()));
        }
        if self.kappa_override == Some(0) {
            return Err(Error::InvalidParameter("kappa override must be positive".into()));
        }
        self.zero_sum.lp.validate()
    }

    fn search_kappa(&self) -> Result<usize> {
        match self.kappa_override {
            Some(k) => Ok(k),
            None => kappa(T::lit(self.delta)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryDiagnostics<T> {
    /// Zero-sum strategies and value estimates, in the game's orientation.
    pub zero_sum: Option<ZeroSumPair<T>>,
    /// Achieved WSNE regret of the `(R, -R)` and `(-C, C)` solutions.
    pub zero_sum_epsilon: Option<(T, T)>,
    /// Some zero-sum solution missed the requested ε.
    pub low_confidence: bool,
    pub sample_size: Option<usize>,
    /// `(x*_s, y*_s)` of the last attempt, in the game's orientation. For
    /// column-driven runs the roles are mirrored: the sampled column strategy
    /// comes from `ŷ` and defines the queried subgame.
    pub sampled: Option<StrategyProfile<T>>,
    /// Strategies of the driving player whose payoff rows (or columns) were
    /// queried in the last attempt.
    pub subgame_support: Vec<usize>,
    pub min_threat: Option<T>,
    pub kappa: Option<usize>,
    pub profiles_enumerated: u64,
    pub attempts: usize,
}

impl<T> Default for QueryDiagnostics<T> {
    fn default() -> Self {
        Self {
            zero_sum: None,
            zero_sum_epsilon: None,
            low_confidence: false,
            sample_size: None,
            sampled: None,
            subgame_support: Vec::new(),
            min_threat: None,
            kappa: None,
            profiles_enumerated: 0,
            attempts: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryOutcome<T> {
    pub profile: StrategyProfile<T>,
    pub branch: Branch,
    /// True WSNE regret, when the run was audited.
    pub audited_epsilon: Option<T>,
    /// Queries spent by this run.
    pub stats: QueryStats,
    pub diagnostics: QueryDiagnostics<T>,
}

/// Runs the query-efficient algorithm against `oracle`, charging every query
/// to the phase it belongs to.
pub fn approximate_wsne_query<T: Scalar, O: PayoffOracle<T>>(
    oracle: &mut CountingOracle<T, O>,
    opts: &QueryOptions<T>,
) -> Result<QueryOutcome<T>> {
    opts.validate()?;
    let (m, n) = oracle.dims();
    if m == 0 || n == 0 {
        return Err(Error::EmptyGame);
    }
    let start = oracle.counts();
    let mut seeds = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut diag = QueryDiagnostics::default();

    let (profile, branch) = if 0.5 + opts.delta > 1.0 {
        (StrategyProfile::pure(m, n, 0, 0), Branch::Degenerate)
    } else {
        oracle.set_phase(Phase::ZeroSumRow);
        let row = zero_sum_wsne_via_queries(oracle, Orientation::RowGame, opts.epsilon, seeds.gen(), &opts.zero_sum)?;
        oracle.set_phase(Phase::ZeroSumCol);
        let col =
            zero_sum_wsne_via_queries(oracle, Orientation::ColumnGame, opts.epsilon, seeds.gen(), &opts.zero_sum)?;
        diag.zero_sum_epsilon = Some((row.achieved_epsilon, col.achieved_epsilon));
        diag.low_confidence = row.low_confidence || col.low_confidence;
        let pair = ZeroSumPair {
            x_star: row.profile.row,
            y_star: row.profile.col,
            row_value: row.value,
            x_hat: col.profile.row,
            y_hat: col.profile.col,
            col_value: col.value,
        };
        let row_driven = pair.row_drives(opts.zero_sum.lp.feasibility_tol);
        let k = sampling_size(m.max(n), opts.epsilon, opts.sampling_constant)?;
        diag.sample_size = Some(k);
        oracle.set_phase(Phase::Subgame);

        let mut found = None;
        for attempt in 1..=opts.attempts {
            diag.attempts = attempt;
            let mut rng = ChaCha8Rng::seed_from_u64(seeds.gen());
            let res = if row_driven {
                sampled_case(oracle, &pair, k, opts, &mut rng)?
            } else {
                sampled_case(&mut Transposed(&mut *oracle), &pair.transposed(), k, opts, &mut rng)?
            };
            diag.sampled = Some(if row_driven { res.sampled.clone() } else { res.sampled.clone().swapped() });
            diag.subgame_support = res.support;
            diag.min_threat = res.min_threat;
            diag.kappa = res.kappa.or(diag.kappa);
            diag.profiles_enumerated += res.enumerated;
            if let Some((p, case)) = res.outcome {
                let p = if row_driven { p } else { p.swapped() };
                found = Some((p, Branch::from_case(case, row_driven)));
                break;
            }
        }
        diag.zero_sum = Some(pair);
        found.ok_or(Error::ProbabilisticFailure {
            attempts: opts.attempts,
        })?
    };

    let audited_epsilon = if opts.audit {
        oracle.set_phase(Phase::Audit);
        let game = query_full_game(oracle)?;
        Some(wsne_report(&game, &profile)?.wsne_epsilon)
    } else {
        None
    };

    Ok(QueryOutcome {
        profile,
        branch,
        audited_epsilon,
        stats: oracle.counts() - start,
        diagnostics: diag,
    })
}

struct SampledCase<T> {
    outcome: Option<(StrategyProfile<T>, Case)>,
    sampled: StrategyProfile<T>,
    support: Vec<usize>,
    min_threat: Option<T>,
    kappa: Option<usize>,
    enumerated: u64,
}

/// One sampling attempt of the row-driven case split. `outcome` is `None`
/// when the search finds nothing for this sample.
fn sampled_case<T: Scalar, O: PayoffOracle<T>, R: Rng>(
    oracle: &mut O,
    pair: &ZeroSumPair<T>,
    k: usize,
    opts: &QueryOptions<T>,
    rng: &mut R,
) -> Result<SampledCase<T>> {
    let half = T::lit(0.5);
    let tol = opts.zero_sum.lp.feasibility_tol;
    let m = oracle.dims().0;

    let x_s = sample_k_uniform_with(&pair.x_star, k, rng);
    let y_s = sample_k_uniform_with(&pair.y_star, k, rng);
    let support = x_s.support();
    let (partial, _) = build_queried_subgame(oracle, &support)?;
    let mut res = SampledCase {
        outcome: None,
        sampled: StrategyProfile::new(x_s, y_s.clone()),
        support: support.clone(),
        min_threat: None,
        kappa: None,
        enumerated: 0,
    };

    if pair.row_value <= half + tol {
        res.outcome = Some((StrategyProfile::new(pair.x_hat.clone(), pair.y_star.clone()), Case::Low));
        return Ok(res);
    }

    let (r_s, c_s) = partial.rows_block(&support)?;
    let local: Vec<usize> = (0..support.len()).collect();
    let (x_small, threat) = min_threat_mixture(&c_s, &local, &opts.zero_sum.lp)?;
    res.min_threat = Some(threat);
    if threat <= half + tol {
        let x_low = x_small.lift(&support, m)?;
        res.outcome = Some((StrategyProfile::new(x_low, y_s), Case::LowThreat));
        return Ok(res);
    }

    let kappa = opts.search_kappa()?;
    res.kappa = Some(kappa);
    let threshold = T::lit(0.5 - 3.0 * opts.epsilon - opts.delta);
    let (found, enumerated) = search_subgame(&r_s, &c_s, kappa, threshold);
    res.enumerated = enumerated;
    if let Some((w, z)) = found {
        let row = MixedStrategy::from_counts(&w).lift(&support, m)?;
        let col = MixedStrategy::from_counts(&z);
        res.outcome = Some((StrategyProfile::new(row, col), Case::Search));
    }
    Ok(res)
}

/// First κ-uniform `(w, z)` on the subgame `(r_s, c_s)` where every row in
/// `supp(w)` earns at least `threshold` against `z` and every column in
/// `supp(z)` earns at least `threshold` against `w`.
fn search_subgame<T: Scalar>(
    r_s: &Array2<T>,
    c_s: &Array2<T>,
    kappa: usize,
    threshold: T,
) -> (Option<(Vec<u32>, Vec<u32>)>, u64) {
    let (s, n) = r_s.dim();
    let k = T::from_usize_lossy(kappa);
    let mut enumerated = 0u64;
    let mut col_pay = Array1::<T>::zeros(n);
    let mut rows_iter = Compositions::new(s, kappa);
    while let Some(w) = rows_iter.next_ref() {
        col_pay.fill(T::zero());
        for (t, &cnt) in w.iter().enumerate() {
            if cnt > 0 {
                col_pay.scaled_add(T::from_u32(cnt).unwrap() / k, &c_s.row(t));
            }
        }
        let mut cols_iter = Compositions::new(n, kappa);
        while let Some(z) = cols_iter.next_ref() {
            enumerated += 1;
            let cols_ok = z.iter().enumerate().all(|(j, &cnt)| cnt == 0 || col_pay[j] >= threshold);
            if !cols_ok {
                continue;
            }
            let rows_ok = w.iter().enumerate().filter(|(_, &cnt)| cnt > 0).all(|(t, _)| {
                let pay = z
                    .iter()
                    .enumerate()
                    .filter(|(_, &cnt)| cnt > 0)
                    .map(|(j, &cnt)| T::from_u32(cnt).unwrap() / k * r_s[[t, j]])
                    .sum::<T>();
                pay >= threshold
            });
            if rows_ok {
                return (Some((w.to_vec(), z.to_vec())), enumerated);
            }
        }
    }
    (None, enumerated)
}
