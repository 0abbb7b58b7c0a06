//! `wsne`: generate games, compute well-supported approximate equilibria,
//! verify profiles and run benchmark sweeps.
//!
//! Exit codes: 0 on success, 1 on malformed input or invalid flags, 2 when an
//! output misses its guarantee.

mod bench;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wsne_core::generate::{constant_game, generate, GameKind};
use wsne_core::io::{GameFile, ProfileFile};
use wsne_core::query::{approximate_wsne_query, CountingOracle, MatrixOracle, QueryOptions, ZeroSumSolver};
use wsne_core::wsne::k_uniform_count;
use wsne_core::{approximate_wsne_with, normalize, wsne_report, Game, WsneOptions};

use report::{QueryReport, SolveReport, VerifyReport};

/// Estimated search size above which `solve` warns.
const SEARCH_WARNING: u128 = 100_000_000;

#[derive(Parser)]
#[command(name = "wsne", version, about = "Well-supported approximate Nash equilibria for bimatrix games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random game as JSON.
    Generate(GenerateArgs),
    /// Run the full-information algorithm on a game file.
    Solve(SolveArgs),
    /// Run the query-model algorithm against a game file used as an oracle.
    SolveQuery(SolveQueryArgs),
    /// Recompute the regrets of a profile file.
    Verify(VerifyArgs),
    /// Solve a seeded corpus and emit one CSV row per instance.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Payoff of a constant game; drawn from the seed when absent.
    #[arg(long)]
    value: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GameInput {
    #[arg(long)]
    game: PathBuf,
    /// Rescale each payoff matrix to [0, 1] even when it already lies there.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: GameInput,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    kappa_override: Option<usize>,
    /// Slack allowed when checking the guarantee.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveQueryArgs {
    #[command(flatten)]
    input: GameInput,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SolverArg::Exact)]
    zs_solver: SolverArg,
    /// Query the whole game afterwards and certify the output.
    #[arg(long)]
    audit: bool,
    #[arg(long)]
    kappa_override: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: GameInput,
    /// Profile JSON with fields `x` and `y`; solver reports qualify.
    #[arg(long)]
    profile: PathBuf,
    /// Also check the profile against `1/2 + delta`.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum KindArg {
    Uniform,
    ZeroSum,
    Constant,
    #[value(name = "force-3c")]
    Force3c,
}

impl From<KindArg> for GameKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Uniform => GameKind::Uniform,
            KindArg::ZeroSum => GameKind::ZeroSum,
            KindArg::Constant => GameKind::Constant,
            KindArg::Force3c => GameKind::Force3c,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum SolverArg {
    Exact,
    Mwu,
}

impl From<SolverArg> for ZeroSumSolver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Exact => ZeroSumSolver::ExactFull,
            SolverArg::Mwu => ZeroSumSolver::SampledMwu,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Solve(a) => cmd_solve(a),
        Command::SolveQuery(a) => cmd_solve_query(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => bench::run(a),
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

/// Reads a game file, rescaling to `[0, 1]` when asked or when needed.
fn load_game(input: &GameInput) -> Result<(Game, bool)> {
    let file = GameFile::read(&input.game)?;
    let (r, c) = file.matrices()?;
    let in_range = r.iter().chain(c.iter()).all(|v| (0.0..=1.0).contains(v));
    if in_range && !input.normalize {
        return Ok((Game::new(r, c)?, false));
    }
    let (game, _) = normalize(&r, &c)?;
    Ok((game, true))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn cmd_generate(a: GenerateArgs) -> Result<ExitCode> {
    let kind = GameKind::from(a.kind);
    let game: Game = match (kind, a.value) {
        (GameKind::Constant, Some(v)) => {
            if !(0.0..=1.0).contains(&v) {
                bail!("constant value {v} not in [0, 1]");
            }
            constant_game(a.rows, a.cols, v)?
        }
        (_, Some(_)) => bail!("--value only applies to constant games"),
        _ => generate(kind, a.rows, a.cols, a.seed)?,
    };
    let mut text = GameFile::from_game(&game).to_json();
    text.push('\n');
    emit(&text, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(a: SolveArgs) -> Result<ExitCode> {
    let (game, normalized) = load_game(&a.input)?;
    let opts = WsneOptions {
        kappa_override: a.kappa_override,
        ..WsneOptions::new(a.delta)
    };
    if 0.5 + a.delta <= 1.0 {
        let k = opts.search_kappa()?;
        let estimate = k_uniform_count(game.rows(), k).saturating_mul(k_uniform_count(game.cols(), k));
        if estimate > SEARCH_WARNING {
            eprintln!("warning: the search case may examine up to {estimate} profiles (kappa = {k})");
        }
    }
    let out = approximate_wsne_with(&game, &opts)?;
    let report = SolveReport::new(&out, a.delta, normalized);
    let ok = out.within_guarantee(a.delta, a.tolerance);
    emit(&if a.json { to_json(&report)? } else { report.to_text() }, None)?;
    if !ok {
        eprintln!("guarantee breached: epsilon {} > {}", out.certified_epsilon, 0.5 + a.delta);
    }
    Ok(verdict(ok))
}

fn cmd_solve_query(a: SolveQueryArgs) -> Result<ExitCode> {
    let (game, normalized) = load_game(&a.input)?;
    let opts = QueryOptions {
        kappa_override: a.kappa_override,
        audit: a.audit,
        ..QueryOptions::new(a.epsilon, a.delta, a.seed, a.zs_solver.into())
    };
    let mut oracle = CountingOracle::new(MatrixOracle::new(game));
    let out = approximate_wsne_query(&mut oracle, &opts)?;
    let report = QueryReport::new(&out, &opts, normalized);
    emit(&if a.json { to_json(&report)? } else { report.to_text() }, None)?;
    let ok = match out.audited_epsilon {
        Some(e) => e <= report.guarantee + a.tolerance,
        None => true,
    };
    if !ok {
        eprintln!("guarantee breached: audited epsilon above {}", report.guarantee);
    }
    Ok(verdict(ok))
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let (game, normalized) = load_game(&a.input)?;
    let profile = ProfileFile::read(&a.profile)?.to_profile()?;
    if profile.row.dim() != game.rows() || profile.col.dim() != game.cols() {
        bail!(
            "profile is {}x{} but the game is {}x{}",
            profile.row.dim(),
            profile.col.dim(),
            game.rows(),
            game.cols()
        );
    }
    if let Some(d) = a.delta {
        if !(d > 0.0 && d < 1.0) {
            bail!("delta {d} not in (0, 1)");
        }
    }
    let rep = wsne_report(&game, &profile)?;
    let report = VerifyReport::new(&rep, a.delta, normalized);
    emit(&if a.json { to_json(&report)? } else { report.to_text() }, None)?;
    let ok = a.delta.is_none_or(|d| rep.wsne_epsilon <= 0.5 + d + a.tolerance);
    Ok(verdict(ok))
}
