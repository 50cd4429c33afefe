//! Randomized repair trials compared against recomputation from scratch.

use std::collections::BTreeSet;

use bcinc::{
    compute_extended_sssp, EdgeUpdate, Graph, NodeId, SsspDag, UnweightedUpdater, WeightedUpdater,
};
use rand::Rng;

use super::{random_connected, random_non_edge};

/// Random legal batch: new edges, plus weight decreases when weighted.
pub fn random_batch<R: Rng>(g: &Graph, size: usize, rng: &mut R) -> Vec<EdgeUpdate> {
    let mut batch = Vec::new();
    let existing: Vec<_> = g.edges().filter(|e| e.2 > 1.0).collect();
    for _ in 0..size {
        if g.is_weighted() && !existing.is_empty() && rng.gen_bool(0.3) {
            let (u, v, w) = existing[rng.gen_range(0..existing.len())];
            let lower = if w.fract() == 0.0 {
                rng.gen_range(1..w as u32) as f64
            } else {
                w * rng.gen_range(0.5..0.95)
            };
            batch.push(EdgeUpdate::weighted(u, v, lower));
        } else if let Some((u, v)) = random_non_edge(g, rng) {
            let w = if g.is_weighted() { rng.gen_range(1..=5) as f64 } else { 1.0 };
            batch.push(EdgeUpdate::weighted(u, v, w));
        }
    }
    batch
}

fn changed_nodes(before: &SsspDag, after: &SsspDag, g_before: &Graph, g_after: &Graph) -> BTreeSet<NodeId> {
    (0..g_after.node_count())
        .filter(|&v| {
            before.dist(v) != after.dist(v)
                || before.sigma(v) != after.sigma(v)
                || before.pred_set(g_before, v) != after.pred_set(g_after, v)
        })
        .collect()
}

/// Outcome of one repair call. Each field is `None` when the check passed.
#[derive(Debug, Default)]
pub struct TrialOutcome {
    pub mismatch: Option<String>,
    pub locality: Option<String>,
    pub witness: Option<String>,
    pub colors: Option<String>,
}

impl TrialOutcome {
    pub fn ok(&self) -> bool {
        self.mismatch.is_none() && self.locality.is_none() && self.witness.is_none() && self.colors.is_none()
    }
}

/// One fuzz trial: random connected graph with up to `max_n` nodes, two
/// consecutive random batches of 1..=64 updates through one long-lived updater.
pub fn repair_trial<R: Rng>(weighted: bool, max_n: usize, rng: &mut R) -> Vec<TrialOutcome> {
    let n = rng.gen_range(2..=max_n);
    let mut g = random_connected(n, rng.gen_range(0..=n), weighted, 6, rng);
    let s = rng.gen_range(0..n);
    let mut dag = compute_extended_sssp(&g, s).unwrap();
    let mut uw = UnweightedUpdater::new(n);
    let mut ww = WeightedUpdater::new(n);
    let mut out = Vec::new();
    for _ in 0..2 {
        let mut o = TrialOutcome::default();
        let before = dag.clone();
        let g_before = g.clone();
        let raw = random_batch(&g, rng.gen_range(1..=64), rng);
        let batch = g.apply_batch(&raw).unwrap();
        let stats = if weighted {
            ww.update(&g, &mut dag, &batch).unwrap()
        } else {
            uw.update(&g, &mut dag, &batch).unwrap()
        };
        let fresh = compute_extended_sssp(&g, s).unwrap();
        o.mismatch = dag.diff(&fresh, &g);
        if o.mismatch.is_none() && dag.d_max() != fresh.d_max() {
            o.mismatch = Some(format!("d_max {} vs {}", dag.d_max(), fresh.d_max()));
        }

        let written: BTreeSet<NodeId> = if weighted { ww.written().collect() } else { uw.written().collect() };
        let affected = changed_nodes(&before, &fresh, &g_before, &g);
        let endpoints: BTreeSet<NodeId> = batch.iter().flat_map(|e| [e.u, e.v]).collect();
        if !affected.is_subset(&written) {
            o.locality = Some(format!("changed nodes {affected:?} not all written {written:?}"));
        } else if let Some(v) = written.iter().find(|v| !affected.contains(v) && !endpoints.contains(v)) {
            o.locality = Some(format!("node {v} written outside A and the batch endpoints"));
        }
        if weighted {
            if stats.dequeue_count < stats.affected_nodes {
                o.witness = Some(format!("{} dequeues for {} finalized", stats.dequeue_count, stats.affected_nodes));
            }
        } else {
            if !uw.all_white() {
                o.colors = Some("non-white node after the call".into());
            }
            // n_v: batch edges whose far endpoint gets seeded
            let targeting = batch.iter().filter(|e| before.dist(e.u) != before.dist(e.v)).count();
            let bound = stats.affected_nodes + batch.len() + targeting;
            if stats.dequeue_count > bound {
                o.witness = Some(format!("{} dequeues > bound {bound}", stats.dequeue_count));
            }
        }
        out.push(o);
    }
    out
}
