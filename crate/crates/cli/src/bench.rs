//! `wsne bench`: a seeded corpus solved in parallel, one CSV row per instance.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use wsne_core::generate::{generate, GameKind};
use wsne_core::query::{approximate_wsne_query, CountingOracle, MatrixOracle, QueryOptions};
use wsne_core::{approximate_wsne_with, Error, Game, WsneOptions};

use crate::{KindArg, SolverArg};

/// Offset separating an instance's run seed from its game seed.
const RUN_SEED_OFFSET: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Comma-separated sizes, each `N` (square) or `MxN`.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<Size>,
    /// Instances per size.
    #[arg(long)]
    count: usize,
    #[arg(long)]
    delta: f64,
    /// Switches to the query model with this sampling accuracy.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = SolverArg::Exact)]
    zs_solver: SolverArg,
    /// Query-model runs also query the whole game and certify the output.
    #[arg(long)]
    audit: bool,
    #[arg(long)]
    kappa_override: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Leave `wall_time_ms` empty so that reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy)]
struct Size(usize, usize);

impl FromStr for Size {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad size {s:?}: {e}"));
        let (m, n) = match s.split_once(['x', 'X']) {
            Some((m, n)) => (parse(m)?, parse(n)?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if m == 0 || n == 0 {
            return Err(format!("size {s:?} must be positive"));
        }
        Ok(Size(m, n))
    }
}

#[derive(Debug, Serialize)]
struct BenchRecord {
    instance_id: usize,
    m: usize,
    n: usize,
    delta: f64,
    epsilon: Option<f64>,
    branch: String,
    certified_epsilon: Option<f64>,
    wall_time_ms: Option<f64>,
    queries_total: Option<u64>,
    queries_zero_sum_r: Option<u64>,
    queries_zero_sum_c: Option<u64>,
    queries_subgame: Option<u64>,
    queries_audit: Option<u64>,
    seed: u64,
    mode: &'static str,
}

struct Instance {
    id: usize,
    m: usize,
    n: usize,
    seed: u64,
}

pub fn run(a: BenchArgs) -> Result<ExitCode> {
    if a.count == 0 {
        bail!("--count must be positive");
    }
    let kind = GameKind::from(a.kind);
    let mut master = ChaCha8Rng::seed_from_u64(a.seed);
    let mut instances = Vec::new();
    for size in &a.sizes {
        for _ in 0..a.count {
            instances.push(Instance {
                id: instances.len(),
                m: size.0,
                n: size.1,
                seed: master.gen(),
            });
        }
    }

    let records: Vec<BenchRecord> = instances
        .par_iter()
        .map(|inst| solve_instance(&a, kind, inst))
        .collect::<Result<_>>()?;

    let mut breached = 0usize;
    let sink: Box<dyn Write> = match &a.csv {
        Some(path) => Box::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    for rec in &records {
        let limit = match a.epsilon {
            None => 0.5 + a.delta,
            Some(e) => (0.5 + 3.0 * e + a.delta).min(1.0),
        };
        if rec.certified_epsilon.is_some_and(|c| c > limit + a.tolerance) {
            breached += 1;
        }
        writer.serialize(rec)?;
    }
    writer.flush()?;
    if breached > 0 {
        eprintln!("{breached} instance(s) missed their guarantee");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn solve_instance(a: &BenchArgs, kind: GameKind, inst: &Instance) -> Result<BenchRecord> {
    let game: Game = generate(kind, inst.m, inst.n, inst.seed)?;
    let start = Instant::now();
    let mut rec = BenchRecord {
        instance_id: inst.id,
        m: inst.m,
        n: inst.n,
        delta: a.delta,
        epsilon: a.epsilon,
        branch: String::new(),
        certified_epsilon: None,
        wall_time_ms: None,
        queries_total: None,
        queries_zero_sum_r: None,
        queries_zero_sum_c: None,
        queries_subgame: None,
        queries_audit: None,
        seed: inst.seed,
        mode: if a.epsilon.is_some() { "query" } else { "full" },
    };
    match a.epsilon {
        None => {
            let opts = WsneOptions {
                kappa_override: a.kappa_override,
                ..WsneOptions::new(a.delta)
            };
            let out = approximate_wsne_with(&game, &opts).with_context(|| format!("instance {}", inst.id))?;
            rec.branch = out.branch.to_string();
            rec.certified_epsilon = Some(out.certified_epsilon);
        }
        Some(eps) => {
            let opts = QueryOptions {
                kappa_override: a.kappa_override,
                audit: a.audit,
                ..QueryOptions::new(eps, a.delta, inst.seed.wrapping_add(RUN_SEED_OFFSET), a.zs_solver.into())
            };
            let mut oracle = CountingOracle::new(MatrixOracle::new(game));
            match approximate_wsne_query(&mut oracle, &opts) {
                Ok(out) => {
                    rec.branch = out.branch.to_string();
                    rec.certified_epsilon = out.audited_epsilon;
                    rec.queries_total = Some(out.stats.total);
                    rec.queries_zero_sum_r = Some(out.stats.phase_zero_sum_r);
                    rec.queries_zero_sum_c = Some(out.stats.phase_zero_sum_c);
                    rec.queries_subgame = Some(out.stats.phase_subgame);
                    rec.queries_audit = Some(out.stats.phase_audit);
                }
                Err(Error::ProbabilisticFailure { .. }) => {
                    rec.branch = "failed".into();
                    rec.queries_total = Some(oracle.counts().total);
                }
                Err(e) => return Err(e).with_context(|| format!("instance {}", inst.id)),
            }
        }
    }
    if !a.no_timing {
        rec.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(rec)
}
