//! Evaluation harness: simulated edge dynamics and accuracy metrics.

use std::collections::VecDeque;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brandes::brandes_exact;
use crate::dynamic::{BatchReport, DynamicBc, DynamicConfig};
use crate::error::{Error, Result};
use crate::graph::{EdgeUpdate, Graph, NodeId};
use crate::rk::rk_initialize_with;

/// Retries per removed edge before giving up on keeping the graph connected.
pub const REMOVAL_RETRIES: usize = 50;

/// A graph with some edges taken out, to be put back in batches.
#[derive(Clone, Debug)]
pub struct DynamicsScenario {
    /// Graph after the removals; the dynamic state starts from here.
    pub reduced: Graph,
    /// Removed edges, partitioned into `batch_count` batches of `batch_size`.
    pub batches: Vec<Vec<EdgeUpdate>>,
    pub removal_fraction: f64,
    pub batch_size: usize,
    pub batch_count: usize,
    pub seed: u64,
}

impl DynamicsScenario {
    /// Removes `batch_size * batch_count` random edges from `base` without ever
    /// disconnecting it. `removal_fraction * m` must cover that many edges.
    pub fn build(
        base: &Graph,
        removal_fraction: f64,
        batch_size: usize,
        batch_count: usize,
        seed: u64,
    ) -> Result<Self> {
        if batch_size == 0 || batch_count == 0 {
            return Err(Error::InvalidArgument(
                "batch size and batch count must be positive".into(),
            ));
        }
        if !(removal_fraction > 0.0 && removal_fraction < 1.0) {
            return Err(Error::OutOfUnitInterval("removal fraction", removal_fraction));
        }
        let wanted = batch_size * batch_count;
        let budget = removal_fraction * base.edge_count() as f64;
        if budget < wanted as f64 {
            return Err(Error::InvalidArgument(format!(
                "removal fraction {removal_fraction} of {} edges covers {budget:.1} edges, \
                 {wanted} needed for {batch_count} batches of {batch_size}",
                base.edge_count()
            )));
        }
        base.ensure_connected()?;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = base.clone();
        let mut candidates: Vec<(NodeId, NodeId, f64)> = base.edges().collect();
        let mut removed = Vec::with_capacity(wanted);
        while removed.len() < wanted {
            let mut attempts = 0;
            loop {
                if candidates.is_empty() || attempts == REMOVAL_RETRIES {
                    return Err(Error::InvalidArgument(format!(
                        "could only remove {} of {wanted} edges without disconnecting the graph",
                        removed.len()
                    )));
                }
                attempts += 1;
                let idx = rng.gen_range(0..candidates.len());
                let (u, v, w) = candidates.swap_remove(idx);
                g.remove_edge(u, v)?;
                if still_joined(&g, u, v) {
                    removed.push(EdgeUpdate::weighted(u, v, w));
                    break;
                }
                // a bridge stays a bridge as more edges go, so drop it for good
                g.add_edge(u, v, w)?;
            }
        }
        let batches = removed.chunks(batch_size).map(<[EdgeUpdate]>::to_vec).collect();
        Ok(Self {
            reduced: g,
            batches,
            removal_fraction,
            batch_size,
            batch_count,
            seed,
        })
    }
}

fn still_joined(g: &Graph, u: NodeId, v: NodeId) -> bool {
    let mut seen = vec![false; g.node_count()];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    while let Some(x) = queue.pop_front() {
        if x == v {
            return true;
        }
        for nb in g.neighbors(x) {
            if !seen[nb.id()] {
                seen[nb.id()] = true;
                queue.push_back(nb.id());
            }
        }
    }
    false
}

/// 1-based rank of each node: descending score, ties by ascending id.
pub fn ranks(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<NodeId> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut rank = vec![0; scores.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i + 1;
    }
    rank
}

/// Nodes by descending score, ties by ascending id.
pub fn top_k(scores: &[f64], k: usize) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order.truncate(k);
    order
}

#[derive(Clone, Debug, PartialEq)]
pub struct AccuracyReport {
    pub abs_errors: Vec<f64>,
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    /// `max(rho, 1/rho)` with `rho` = estimated rank / true rank.
    pub rank_errors: Vec<f64>,
    pub max_rank_error: f64,
    /// Wall-clock seconds per named phase, filled in by the harness.
    pub timings: Vec<(&'static str, f64)>,
}

pub fn compute_accuracy(exact: &[f64], approx: &[f64]) -> Result<AccuracyReport> {
    if exact.len() != approx.len() {
        return Err(Error::LengthMismatch(exact.len(), approx.len()));
    }
    let abs_errors: Vec<f64> = exact.iter().zip(approx).map(|(a, b)| (a - b).abs()).collect();
    let max_abs_error = abs_errors.iter().copied().fold(0.0, f64::max);
    let mean_abs_error = if abs_errors.is_empty() {
        0.0
    } else {
        abs_errors.iter().sum::<f64>() / abs_errors.len() as f64
    };
    let (true_rank, est_rank) = (ranks(exact), ranks(approx));
    let rank_errors: Vec<f64> = true_rank
        .iter()
        .zip(&est_rank)
        .map(|(&t, &e)| {
            let rho = e as f64 / t as f64;
            rho.max(1.0 / rho)
        })
        .collect();
    let max_rank_error = rank_errors.iter().copied().fold(1.0, f64::max);
    Ok(AccuracyReport {
        abs_errors,
        max_abs_error,
        mean_abs_error,
        rank_errors,
        max_rank_error,
        timings: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub removal_fraction: f64,
    pub batch_size: usize,
    pub batch_count: usize,
    /// Accuracy against the exact scores is only computed up to this many nodes.
    pub oracle_ceiling: usize,
    /// Also time a from-scratch static run after every batch.
    pub compare_restart: bool,
    pub parallel: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.05,
            delta: 0.1,
            seed: 0,
            removal_fraction: 0.01,
            batch_size: 8,
            batch_count: 4,
            oracle_ceiling: 2000,
            compare_restart: false,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatchRecord {
    /// 1-based.
    pub batch: usize,
    pub update_seconds: f64,
    pub restart_seconds: Option<f64>,
    pub accuracy: Option<AccuracyReport>,
    pub scores: Vec<f64>,
    pub report: BatchReport,
}

#[derive(Debug)]
pub struct HarnessRun {
    pub init_seconds: f64,
    pub sample_count: usize,
    pub records: Vec<BatchRecord>,
    pub final_graph: Graph,
}

/// Removes edges, initializes on the reduced graph, then replays the removed
/// edges batch by batch, measuring each update.
pub fn run_dynamic(base: &Graph, cfg: &HarnessConfig) -> Result<HarnessRun> {
    let scenario = DynamicsScenario::build(
        base,
        cfg.removal_fraction,
        cfg.batch_size,
        cfg.batch_count,
        cfg.seed,
    )?;
    let dyn_cfg = DynamicConfig {
        parallel: cfg.parallel,
        ..DynamicConfig::new(cfg.epsilon, cfg.delta, cfg.seed)
    };
    let start = Instant::now();
    let mut state = DynamicBc::with_config(scenario.reduced, &dyn_cfg)?;
    let init_seconds = start.elapsed().as_secs_f64();
    let with_oracle = base.node_count() <= cfg.oracle_ceiling;

    let mut records = Vec::with_capacity(scenario.batches.len());
    for (i, batch) in scenario.batches.iter().enumerate() {
        let start = Instant::now();
        let report = state.update_batch(batch)?;
        let update_seconds = start.elapsed().as_secs_f64();

        let restart_seconds = if cfg.compare_restart {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (i as u64 + 1));
            let start = Instant::now();
            let fresh = rk_initialize_with(state.graph(), state.params(), &mut rng, cfg.parallel)?;
            let secs = start.elapsed().as_secs_f64();
            drop(fresh);
            Some(secs)
        } else {
            None
        };

        let scores = state.scores().scores();
        let accuracy = if with_oracle {
            let exact = brandes_exact(state.graph())?;
            let mut acc = compute_accuracy(&exact, &scores)?;
            acc.timings.push(("update", update_seconds));
            if let Some(s) = restart_seconds {
                acc.timings.push(("restart", s));
            }
            Some(acc)
        } else {
            None
        };
        records.push(BatchRecord {
            batch: i + 1,
            update_seconds,
            restart_seconds,
            accuracy,
            scores,
            report,
        });
    }
    Ok(HarnessRun {
        init_seconds,
        sample_count: state.sample_count(),
        records,
        final_graph: state.graph().clone(),
    })
}
