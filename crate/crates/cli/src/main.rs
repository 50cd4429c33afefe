use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bcinc::eval::{run_dynamic, HarnessConfig};
use bcinc::generate::dorogovtsev_mendes;
use bcinc::io::{read_edge_list, write_edge_list};
use bcinc::rk::{prepare_params, rk_estimate};
use bcinc::{brandes_exact, Error, Graph, NodeId, SamplingParams};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const DEFAULT_REMOVAL_FRACTION: f64 = 0.01;

/// Approximate betweenness centrality on dynamic graphs.
#[derive(Parser)]
#[command(name = "bcinc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a Dorogovtsev-Mendes graph as an edge list.
    Generate {
        #[arg(long)]
        nodes: usize,
        /// Gaussian weights with mean 1 and standard deviation 0.1.
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact scores.
    Exact {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sampled scores with an (epsilon, delta) guarantee.
    Approx {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Remove edges, then put them back in batches and track the scores.
    Dynamic {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Upper bound on the fraction of edges removed [default: 0.01, raised if too small].
        #[arg(long)]
        removal_fraction: Option<f64>,
        #[arg(long, default_value_t = 8)]
        batch_size: usize,
        #[arg(long, default_value_t = 4)]
        batches: usize,
        /// Largest graph compared against exact scores.
        #[arg(long, default_value_t = 2000)]
        oracle_ceiling: usize,
        /// Also time a fresh static run after each batch.
        #[arg(long)]
        compare_restart: bool,
        /// Per-batch CSV report; scores go next to it as `<stem>.batch-<k>.csv`.
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    input: PathBuf,
    /// Read the third column as edge weight.
    #[arg(long)]
    weighted: bool,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compute shortest-path dags on all cores. Results do not change.
    #[arg(long)]
    parallel: bool,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::OutOfUnitInterval(..) => Failure::Usage(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Generate {
            nodes,
            weighted,
            seed,
            output,
        } => {
            if nodes < 3 {
                return Err(Failure::Usage(format!("--nodes must be at least 3, got {nodes}")));
            }
            let g = dorogovtsev_mendes(nodes, weighted, seed)?;
            write_edge_list(sink(output.as_deref())?, &g)?;
        }
        Command::Exact { graph, output } => {
            let (g, ids) = load(&graph)?;
            let scores = brandes_exact(&g)?;
            write_scores(sink(output.as_deref())?, &ids, &scores)?;
        }
        Command::Approx {
            graph,
            sampling,
            output,
        } => {
            sampling.validate()?;
            let (g, ids) = load(&graph)?;
            let start = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
            let params = prepare_params(&g, sampling.epsilon, sampling.delta, SamplingParams::DEFAULT_C, &mut rng)?;
            let scores = rk_estimate(&g, &params, &mut rng)?;
            let seconds = start.elapsed().as_secs_f64();
            write_scores(sink(output.as_deref())?, &ids, &scores.scores())?;
            eprintln!(
                "{}",
                json!({ "samples": scores.sample_count(), "vd_estimate": params.vd_estimate, "seconds": seconds })
            );
        }
        Command::Dynamic {
            graph,
            sampling,
            removal_fraction,
            batch_size,
            batches,
            oracle_ceiling,
            compare_restart,
            output,
        } => {
            sampling.validate()?;
            if batch_size == 0 || batches == 0 {
                return Err(Failure::Usage("--batch-size and --batches must be positive".into()));
            }
            if let Some(f) = removal_fraction {
                if !(f > 0.0 && f < 1.0) {
                    return Err(Failure::Usage(format!("--removal-fraction must be in (0, 1), got {f}")));
                }
            }
            let (g, ids) = load(&graph)?;
            let fraction = removal_fraction_for(&g, removal_fraction, batch_size * batches)?;
            let cfg = HarnessConfig {
                epsilon: sampling.epsilon,
                delta: sampling.delta,
                seed: sampling.seed,
                removal_fraction: fraction,
                batch_size,
                batch_count: batches,
                oracle_ceiling,
                compare_restart,
                parallel: sampling.parallel,
            };
            let result = run_dynamic(&g, &cfg)?;
            write_report(&output, &ids, &result)?;
        }
    }
    Ok(())
}

impl SamplingArgs {
    fn validate(&self) -> CliResult {
        for (name, x) in [("--epsilon", self.epsilon), ("--delta", self.delta)] {
            if !(x > 0.0 && x < 1.0) {
                return Err(Failure::Usage(format!("{name} must be in (0, 1), got {x}")));
            }
        }
        Ok(())
    }
}

/// Reads the edge list and keeps its largest connected component.
fn load(args: &GraphArgs) -> CliResult<(Graph, Vec<NodeId>)> {
    let g = read_edge_list(&args.input, args.weighted)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))?;
    if g.node_count() < 2 {
        return Err(Failure::Input(format!("{}: need at least one edge", args.input.display())));
    }
    if g.is_connected() {
        let ids = (0..g.node_count()).collect();
        return Ok((g, ids));
    }
    let (sub, ids) = g.largest_component();
    eprintln!(
        "warning: graph is disconnected, using its largest component ({} of {} nodes)",
        sub.node_count(),
        g.node_count()
    );
    Ok((sub, ids))
}

fn removal_fraction_for(g: &Graph, given: Option<f64>, wanted: usize) -> CliResult<f64> {
    let m = g.edge_count() as f64;
    match given {
        Some(f) => Ok(f),
        None if DEFAULT_REMOVAL_FRACTION * m >= wanted as f64 => Ok(DEFAULT_REMOVAL_FRACTION),
        None => {
            // half an edge of headroom so rounding cannot push the budget below `wanted`
            let f = (wanted as f64 + 0.5) / m;
            if f >= 1.0 {
                return Err(Failure::Usage(format!(
                    "{wanted} removals requested but the graph has only {m} edges"
                )));
            }
            eprintln!("warning: removal fraction raised from {DEFAULT_REMOVAL_FRACTION} to {f:.4} to cover {wanted} edges");
            Ok(f)
        }
    }
}

fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_scores(mut out: impl Write, ids: &[NodeId], scores: &[f64]) -> io::Result<()> {
    writeln!(out, "node,score")?;
    for (v, s) in scores.iter().enumerate() {
        writeln!(out, "{},{s:.9}", ids[v])?;
    }
    out.flush()
}

fn batch_scores_path(report: &Path, batch: usize) -> PathBuf {
    let stem = report.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    report.with_file_name(format!("{stem}.batch-{batch}.csv"))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.9}")).unwrap_or_default()
}

fn write_report(path: &Path, ids: &[NodeId], run: &bcinc::eval::HarnessRun) -> CliResult {
    let mut csv = BufWriter::new(File::create(path)?);
    writeln!(csv, "batch,update_seconds,restart_seconds,max_abs_err,mean_abs_err,max_rank_err")?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for rec in &run.records {
        let acc = rec.accuracy.as_ref();
        let max_abs = acc.map(|a| a.max_abs_error);
        let mean_abs = acc.map(|a| a.mean_abs_error);
        let max_rank = acc.map(|a| a.max_rank_error);
        writeln!(
            csv,
            "{},{:.6},{},{},{},{}",
            rec.batch,
            rec.update_seconds,
            rec.restart_seconds.map(|s| format!("{s:.6}")).unwrap_or_default(),
            opt(max_abs),
            opt(mean_abs),
            opt(max_rank),
        )?;
        let scores_path = batch_scores_path(path, rec.batch);
        write_scores(BufWriter::new(File::create(&scores_path)?), ids, &rec.scores)?;
        let summary = json!({
            "batch": rec.batch,
            "applied": rec.report.applied,
            "resampled": rec.report.resampled.len(),
            "affected_nodes": rec.report.stats.affected_nodes,
            "samples": run.sample_count,
            "update_seconds": rec.update_seconds,
            "restart_seconds": rec.restart_seconds,
            "max_abs_err": max_abs,
            "mean_abs_err": mean_abs,
            "max_rank_err": max_rank,
            "scores": scores_path.display().to_string(),
        });
        writeln!(out, "{summary}")?;
    }
    csv.flush()?;
    Ok(())
}
