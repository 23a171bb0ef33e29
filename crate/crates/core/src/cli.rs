//! Command-line front end. The binary parses [`Cli`] and hands it to [`run`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{self, io as graph_io};
use crate::oracles::{self, ExactValue, MomentQuery, OccupancySpec};
use crate::report;
use crate::second_moment;

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "SPARSE_MAXCUT_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "sparse-maxcut",
    version,
    about = "Max-Cut bounds for sparse random graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute x_u and x_l and, given c, the Max-Cut and Ising intervals.
    Bounds(BoundsArgs),
    /// Tabulate W(x, beta) against 2w(x) over a beta grid as CSV.
    Scan(ScanArgs),
    /// Exact occupancy and moment oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Local-flip search on configuration-model graphs.
    Simulate(SimulateArgs),
    /// Greedy extension of a bipartite set to a cut of a cubic graph.
    Cubic(CubicArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Average degree parameter for the interval output.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Bisection tolerance for x_u.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Bisection tolerance for x_l.
    #[arg(long, default_value_t = 1e-5)]
    pub tol_x: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, default_value_t = 0.01)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 0.49)]
    pub beta_max: f64,
    #[arg(long, default_value_t = 97)]
    pub steps: usize,
    /// Output CSV path; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// P[E_i >= F_i in every bin].
    K2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu1: usize,
        #[arg(long)]
        mu2: usize,
    },
    /// P[E2 - E4 >= |E1 - E3| in every bin].
    K4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu1: usize,
        #[arg(long)]
        mu2: usize,
        #[arg(long)]
        mu3: usize,
        #[arg(long)]
        mu4: usize,
    },
    /// Multinomial vs. conditioned-Poisson occupancy probability.
    Poisson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu: usize,
        /// Comma-separated occupancies.
        #[arg(long, value_delimiter = ',')]
        t: Vec<usize>,
    },
    /// Exact first moment, with a Monte Carlo estimate when --samples > 0.
    Moment1(MomentArgs),
    /// Exact second moment of balanced cuts, with optional Monte Carlo.
    Moment2(MomentArgs),
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub zn: usize,
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("set").required(true).args(["bipartite", "bruteforce"]))]
pub struct CubicArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// File of whitespace-separated vertices inducing a bipartite subgraph.
    #[arg(long)]
    pub bipartite: Option<PathBuf>,
    /// Use a largest induced bipartite set found by exhaustive search.
    #[arg(long)]
    pub bruteforce: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Worker count from [`WORKERS_ENV`], if set.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::domain(format!(
                "{WORKERS_ENV}={s:?} is not a positive integer"
            ))),
            Ok(k) => Ok(Some(k)),
        },
    }
}

/// Runs one command, writing its output to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    match cli.command {
        Command::Bounds(a) => {
            let r = report::bounds(a.c, a.tol, a.tol_x)?;
            emit(out, &serde_json::to_value(r).expect("serializable"))
        }
        Command::Scan(a) => {
            let rows = second_moment::scan(a.x, a.beta_min, a.beta_max, a.steps)?;
            match a.out {
                Some(path) => {
                    let file = std::fs::File::create(&path)?;
                    report::write_scan_csv(std::io::BufWriter::new(file), &rows)
                }
                None => report::write_scan_csv(out, &rows),
            }
        }
        Command::Oracle(o) => emit(out, &oracle(o)?),
        Command::Simulate(a) => {
            let r = graph::empirical_x(a.n, a.c, a.trials, a.seed)?;
            emit(out, &serde_json::to_value(r).expect("serializable"))
        }
        Command::Cubic(a) => emit(out, &cubic(a)?),
    }
}

fn emit<W: Write>(out: &mut W, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn oracle(cmd: OracleCommand) -> Result<Value> {
    Ok(match cmd {
        OracleCommand::K2 { n, mu1, mu2 } => {
            let k = oracles::k2_exact(&OccupancySpec::new(n, vec![mu1, mu2]))?;
            json!({ "n": n, "mu": [mu1, mu2], "k": ExactValue::from(&k) })
        }
        OracleCommand::K4 {
            n,
            mu1,
            mu2,
            mu3,
            mu4,
        } => {
            let k = oracles::k4_exact(&OccupancySpec::new(n, vec![mu1, mu2, mu3, mu4]))?;
            json!({ "n": n, "mu": [mu1, mu2, mu3, mu4], "k": ExactValue::from(&k) })
        }
        OracleCommand::Poisson { n, mu, t } => {
            let p = oracles::poissonization_identity(n, mu, &t)?;
            json!({
                "n": n,
                "mu": mu,
                "t": t,
                "lhs": ExactValue::from(&p.lhs),
                "rhs": ExactValue::from(&p.rhs),
                "equal": p.lhs == p.rhs,
            })
        }
        OracleCommand::Moment1(a) => {
            let q = MomentQuery::new(a.n, a.m, a.zn);
            let e = oracles::first_moment_exact(&q)?;
            let mc = if a.samples > 0 {
                Some(oracles::first_moment_mc(&q, a.samples, a.seed)?)
            } else {
                None
            };
            json!({
                "query": q,
                "exact": ExactValue::from(&e.total),
                "exact_balanced": ExactValue::from(&e.balanced),
                "mc": mc,
                "z_score": mc.map(|m| m.z_score(ExactValue::from(&e.total).decimal)),
                "seed": a.seed,
            })
        }
        OracleCommand::Moment2(a) => {
            let q = MomentQuery::new(a.n, a.m, a.zn);
            let s = oracles::second_moment_exact(&q)?;
            let first = oracles::first_moment_exact(&q)?.balanced;
            let mc = if a.samples > 0 {
                Some(oracles::second_moment_mc(&q, a.samples, a.seed)?)
            } else {
                None
            };
            json!({
                "query": q,
                "exact": ExactValue::from(&s),
                "first_moment_balanced": ExactValue::from(&first),
                "dominates_square": s >= &first * &first,
                "mc": mc,
                "z_score": mc.map(|m| m.z_score(ExactValue::from(&s).decimal)),
                "seed": a.seed,
            })
        }
    })
}

fn cubic(a: CubicArgs) -> Result<Value> {
    let g = graph_io::read_graph(&a.graph)?;
    let set = match &a.bipartite {
        Some(path) => graph_io::parse_vertex_set(&std::fs::read_to_string(path)?)?,
        None => graph::max_induced_bipartite_bruteforce(&g)?,
    };
    let cut = graph::cubic_extend_coloring(&g, &set, a.seed)?;
    let uncolored = g.n() - set.len();
    let bound = 3 * g.n() / 2 - uncolored.min(3 * g.n() / 2);
    Ok(json!({
        "n": g.n(),
        "m": g.m(),
        "bipartite_set": set,
        "uncolored": uncolored,
        "value": cut.value,
        "lower_bound": bound,
        "side": cut.side.iter().map(|&s| s as u8).collect::<Vec<_>>(),
        "seed": a.seed,
    }))
}

/// JSON body reported on failure.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() } })
}
