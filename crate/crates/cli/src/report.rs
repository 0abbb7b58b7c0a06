//! Structured output of the subcommands. Every report carries the profile as
//! `x` and `y`, so it can be passed back to `verify`.

use std::fmt::Write;

use serde::Serialize;

use wsne_core::query::{QueryOptions, QueryOutcome, QueryStats, ZeroSumSolver};
use wsne_core::{Branch, Outcome, Report};

#[derive(Serialize)]
pub struct SolveReport {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub branch: Branch,
    pub certified_epsilon: f64,
    pub delta: f64,
    pub guarantee: f64,
    pub row_value: Option<f64>,
    pub col_value: Option<f64>,
    pub kappa: Option<usize>,
    pub profiles_enumerated: u64,
    pub normalized: bool,
}

impl SolveReport {
    pub fn new(out: &Outcome, delta: f64, normalized: bool) -> Self {
        let zs = out.diagnostics.zero_sum.as_ref();
        Self {
            x: out.profile.row.to_vec(),
            y: out.profile.col.to_vec(),
            branch: out.branch,
            certified_epsilon: out.certified_epsilon,
            delta,
            guarantee: 0.5 + delta,
            row_value: zs.map(|z| z.row_value),
            col_value: zs.map(|z| z.col_value),
            kappa: out.diagnostics.kappa,
            profiles_enumerated: out.diagnostics.profiles_enumerated,
            normalized,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "branch: {}", self.branch).unwrap();
        writeln!(s, "certified epsilon: {}", self.certified_epsilon).unwrap();
        writeln!(s, "guarantee: {}", self.guarantee).unwrap();
        if let (Some(r), Some(c)) = (self.row_value, self.col_value) {
            writeln!(s, "zero-sum values: row {r}, column {c}").unwrap();
        }
        writeln!(s, "x: {:?}", self.x).unwrap();
        writeln!(s, "y: {:?}", self.y).unwrap();
        if self.normalized {
            writeln!(s, "(payoffs were rescaled to [0, 1])").unwrap();
        }
        s
    }
}

#[derive(Serialize)]
pub struct QueryReport {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub branch: Branch,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub zs_solver: ZeroSumSolver,
    /// `min(1, 1/2 + 3ε + δ)`.
    pub guarantee: f64,
    pub audited_epsilon: Option<f64>,
    pub queries: QueryStats,
    pub sample_size: Option<usize>,
    pub subgame_support: Vec<usize>,
    pub attempts: usize,
    pub low_confidence: bool,
    pub normalized: bool,
}

impl QueryReport {
    pub fn new(out: &QueryOutcome<f64>, opts: &QueryOptions<f64>, normalized: bool) -> Self {
        Self {
            x: out.profile.row.to_vec(),
            y: out.profile.col.to_vec(),
            branch: out.branch,
            epsilon: opts.epsilon,
            delta: opts.delta,
            seed: opts.seed,
            zs_solver: opts.zero_sum.solver,
            guarantee: (0.5 + 3.0 * opts.epsilon + opts.delta).min(1.0),
            audited_epsilon: out.audited_epsilon,
            queries: out.stats,
            sample_size: out.diagnostics.sample_size,
            subgame_support: out.diagnostics.subgame_support.clone(),
            attempts: out.diagnostics.attempts,
            low_confidence: out.diagnostics.low_confidence,
            normalized,
        }
    }

    pub fn to_text(&self) -> String {
        let q = &self.queries;
        let mut s = String::new();
        writeln!(s, "branch: {}", self.branch).unwrap();
        match self.audited_epsilon {
            Some(e) => writeln!(s, "audited epsilon: {e}").unwrap(),
            None => writeln!(s, "audited epsilon: (not audited)").unwrap(),
        }
        writeln!(s, "guarantee: {}", self.guarantee).unwrap();
        writeln!(
            s,
            "queries: {} total ({} zero-sum R, {} zero-sum C, {} subgame, {} audit)",
            q.total, q.phase_zero_sum_r, q.phase_zero_sum_c, q.phase_subgame, q.phase_audit
        )
        .unwrap();
        writeln!(s, "x: {:?}", self.x).unwrap();
        writeln!(s, "y: {:?}", self.y).unwrap();
        if self.low_confidence {
            writeln!(s, "warning: a zero-sum solution missed the requested epsilon").unwrap();
        }
        s
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub row_best: f64,
    pub row_worst_support: f64,
    pub row_regret: f64,
    pub col_best: f64,
    pub col_worst_support: f64,
    pub col_regret: f64,
    pub wsne_epsilon: f64,
    pub ne_epsilon: f64,
    pub guarantee: Option<f64>,
    pub normalized: bool,
}

impl VerifyReport {
    pub fn new(r: &Report, delta: Option<f64>, normalized: bool) -> Self {
        Self {
            row_best: r.row_best,
            row_worst_support: r.row_worst_support,
            row_regret: r.row_regret,
            col_best: r.col_best,
            col_worst_support: r.col_worst_support,
            col_regret: r.col_regret,
            wsne_epsilon: r.wsne_epsilon,
            ne_epsilon: r.ne_epsilon,
            guarantee: delta.map(|d| 0.5 + d),
            normalized,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "wsne epsilon: {}", self.wsne_epsilon).unwrap();
        writeln!(s, "ne epsilon: {}", self.ne_epsilon).unwrap();
        writeln!(s, "row regret: {} (best {}, worst in support {})", self.row_regret, self.row_best, self.row_worst_support).unwrap();
        writeln!(s, "column regret: {} (best {}, worst in support {})", self.col_regret, self.col_best, self.col_worst_support).unwrap();
        s
    }
}
