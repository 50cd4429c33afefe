//! Batch repair of an [`SsspDag`] after edge insertions and weight decreases.
//!
//! Both repairs share one shape: seed a queue from the batch edges that improve
//! (or tie) a distance, then settle nodes in distance order, rebuilding each
//! settled node's count from its neighbors and pushing neighbors that the new
//! distance reaches at least as cheaply as before.
//!
//! * [`UnweightedUpdater`] replaces the priority queue by one FIFO per hop level
//!   and uses white/gray/black coloring so that every affected node not targeted
//!   by the batch is queued once. Cost is `O(|batch| + ||A|| + d_max)`.
//! * [`WeightedUpdater`] uses a binary heap with lazy deletion. Cost is
//!   `O(|batch| log |batch| + ||A|| log ||A||)`.
//!
//! Here `A` is the set of nodes whose distance or path count changes and
//! `||A||` adds their incident edges. The graph passed in must already contain
//! the batch.
//!
//! Updaters keep their scratch buffers between calls, so one updater can repair
//! many dags over the same graph without touching `O(n)` memory per call.

use std::ops::AddAssign;

use crate::count::PathCount;
use crate::error::{Error, Result};
use crate::graph::{EdgeUpdate, Graph, NodeId};
use crate::sssp::{is_pred_edge, MinQueue, SsspDag, TOLERANCE};

/// Work counters for one repair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AffectedStats {
    /// Nodes settled at a new (distance, count); these are the nodes written.
    pub affected_nodes: usize,
    /// Sum of degrees of the settled nodes.
    pub touched_edges: usize,
    /// Queue extractions, including skipped stale or already-settled entries.
    pub dequeue_count: usize,
    pub batch_size: usize,
}

impl AddAssign for AffectedStats {
    fn add_assign(&mut self, rhs: Self) {
        self.affected_nodes += rhs.affected_nodes;
        self.touched_edges += rhs.touched_edges;
        self.dequeue_count += rhs.dequeue_count;
        self.batch_size += rhs.batch_size;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeColor {
    White,
    Gray,
    Black,
}

/// Checks that every batch edge is present in the already-mutated graph with the
/// stated weight.
fn check_batch(g: &Graph, dag: &SsspDag, batch: &[EdgeUpdate]) -> Result<()> {
    if dag.node_count() != g.node_count() {
        return Err(Error::LengthMismatch(dag.node_count(), g.node_count()));
    }
    for e in batch {
        let n = g.node_count();
        if e.u >= n || e.v >= n {
            return Err(Error::NodeOutOfRange {
                node: e.u.max(e.v),
                n,
            });
        }
        if e.u == e.v {
            return Err(Error::SelfLoop(e.u));
        }
        match g.weight(e.u, e.v) {
            Some(w) if (w - e.weight).abs() <= TOLERANCE => {}
            Some(w) => {
                return Err(Error::MalformedBatch(format!(
                    "edge {{{},{}}} has weight {w} in the graph, batch says {}",
                    e.u, e.v, e.weight
                )))
            }
            None => return Err(Error::MissingEdge { u: e.u, v: e.v }),
        }
    }
    Ok(())
}

/// Level-queue repair for unweighted graphs.
#[derive(Debug, Default)]
pub struct UnweightedUpdater {
    color: Vec<NodeColor>,
    queues: Vec<Vec<u32>>,
    /// Every node that entered a queue during the current call.
    queued: Vec<u32>,
    written: Vec<u32>,
}

impl UnweightedUpdater {
    pub fn new(n: usize) -> Self {
        Self {
            color: vec![NodeColor::White; n],
            ..Self::default()
        }
    }

    /// Nodes whose entries the last call rewrote, in settle order.
    pub fn written(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.written.iter().map(|&v| v as NodeId)
    }

    pub fn all_white(&self) -> bool {
        self.color.iter().all(|&c| c == NodeColor::White)
    }

    /// Repairs `dag` after `batch` was inserted into `g`.
    pub fn update(
        &mut self,
        g: &Graph,
        dag: &mut SsspDag,
        batch: &[EdgeUpdate],
    ) -> Result<AffectedStats> {
        if g.is_weighted() {
            return Err(Error::WrongMode {
                expected: "unweighted",
            });
        }
        check_batch(g, dag, batch)?;
        Ok(self.update_unchecked(g, dag, batch))
    }

    pub(crate) fn update_unchecked(
        &mut self,
        g: &Graph,
        dag: &mut SsspDag,
        batch: &[EdgeUpdate],
    ) -> AffectedStats {
        let mut stats = AffectedStats {
            batch_size: batch.len(),
            ..AffectedStats::default()
        };
        self.written.clear();
        if batch.is_empty() {
            return stats;
        }
        if self.color.len() != g.node_count() {
            self.color = vec![NodeColor::White; g.node_count()];
        }
        let top = dag.d_max as usize;
        if self.queues.len() < top + 2 {
            self.queues.resize_with(top + 2, Vec::new);
        }

        for e in batch {
            let (du, dv) = (dag.dist[e.u], dag.dist[e.v]);
            if du < dv {
                self.queues[du as usize + 1].push(e.v as u32);
                self.queued.push(e.v as u32);
            }
            if dv < du {
                self.queues[dv as usize + 1].push(e.u as u32);
                self.queued.push(e.u as u32);
            }
        }

        for k in 1..=top {
            let level = k as f64;
            let mut i = 0;
            while i < self.queues[k].len() {
                let w = self.queues[k][i] as NodeId;
                i += 1;
                stats.dequeue_count += 1;
                if self.color[w] == NodeColor::Black {
                    continue;
                }
                self.color[w] = NodeColor::Black;
                let old = dag.dist[w] as usize;
                dag.levels[old] -= 1;
                dag.levels[k] += 1;
                dag.dist[w] = level;

                let mut sigma = PathCount::ZERO;
                for nb in g.neighbors(w) {
                    let z = nb.id();
                    if dag.dist[z] + 1.0 == level {
                        dag.sigma.add_into(z, &mut sigma);
                    }
                    if self.color[z] == NodeColor::White && dag.dist[z] >= level + 1.0 {
                        self.color[z] = NodeColor::Gray;
                        self.queues[k + 1].push(z as u32);
                        self.queued.push(z as u32);
                    }
                }
                dag.sigma.set(w, sigma);
                stats.affected_nodes += 1;
                stats.touched_edges += g.degree(w);
                self.written.push(w as u32);
            }
            self.queues[k].clear();
        }

        for &v in &self.queued {
            self.color[v as usize] = NodeColor::White;
        }
        self.queued.clear();

        while dag.d_max > 0.0 && dag.levels[dag.d_max as usize] == 0 {
            dag.d_max -= 1.0;
        }
        dag.levels.truncate(dag.d_max as usize + 1);
        stats
    }
}

/// Priority-queue repair for weighted graphs.
#[derive(Debug, Default)]
pub struct WeightedUpdater {
    queue: MinQueue,
    /// Best priority offered so far in this call; infinite when never queued.
    prio: Vec<f64>,
    settled: Vec<bool>,
    offered: Vec<u32>,
    written: Vec<u32>,
}

impl WeightedUpdater {
    pub fn new(n: usize) -> Self {
        Self {
            prio: vec![f64::INFINITY; n],
            settled: vec![false; n],
            ..Self::default()
        }
    }

    pub fn written(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.written.iter().map(|&v| v as NodeId)
    }

    pub fn update(
        &mut self,
        g: &Graph,
        dag: &mut SsspDag,
        batch: &[EdgeUpdate],
    ) -> Result<AffectedStats> {
        if !g.is_weighted() {
            return Err(Error::WrongMode {
                expected: "weighted",
            });
        }
        check_batch(g, dag, batch)?;
        Ok(self.update_unchecked(g, dag, batch))
    }

    /// Offers priority `p` to `z` if it does not worsen `z`'s distance.
    #[inline]
    fn relax(&mut self, dag: &SsspDag, z: NodeId, p: f64) {
        if self.settled[z] || dag.dist[z] < p - TOLERANCE {
            return;
        }
        if self.prio[z].is_infinite() {
            self.offered.push(z as u32);
        } else if self.prio[z] <= p {
            return;
        }
        self.prio[z] = p;
        self.queue.push(z, p);
    }

    pub(crate) fn update_unchecked(
        &mut self,
        g: &Graph,
        dag: &mut SsspDag,
        batch: &[EdgeUpdate],
    ) -> AffectedStats {
        let mut stats = AffectedStats {
            batch_size: batch.len(),
            ..AffectedStats::default()
        };
        self.written.clear();
        if batch.is_empty() {
            return stats;
        }
        if self.prio.len() != g.node_count() {
            self.prio = vec![f64::INFINITY; g.node_count()];
            self.settled = vec![false; g.node_count()];
        }

        for e in batch {
            self.relax(dag, e.v, dag.dist[e.u] + e.weight);
            self.relax(dag, e.u, dag.dist[e.v] + e.weight);
        }

        let mut max_moved = false;
        while let Some((w, p)) = self.queue.pop() {
            stats.dequeue_count += 1;
            if self.settled[w] || p > self.prio[w] {
                continue;
            }
            self.settled[w] = true;
            if dag.dist[w] >= dag.d_max - TOLERANCE {
                max_moved = true;
            }
            dag.dist[w] = p;

            let mut sigma = PathCount::ZERO;
            for nb in g.neighbors(w) {
                let z = nb.id();
                if is_pred_edge(dag.dist[z], nb.weight, p) {
                    dag.sigma.add_into(z, &mut sigma);
                }
                self.relax(dag, z, p + nb.weight);
            }
            dag.sigma.set(w, sigma);
            stats.affected_nodes += 1;
            stats.touched_edges += g.degree(w);
            self.written.push(w as u32);
        }

        for &v in &self.offered {
            self.prio[v as usize] = f64::INFINITY;
        }
        self.offered.clear();
        for &v in &self.written {
            self.settled[v as usize] = false;
        }
        if max_moved {
            dag.recompute_d_max();
        }
        stats
    }
}

/// One-shot unweighted repair. Prefer a long-lived [`UnweightedUpdater`] when
/// repairing many dags.
pub fn update_sssp_unweighted(
    g: &Graph,
    dag: &mut SsspDag,
    batch: &[EdgeUpdate],
) -> Result<AffectedStats> {
    UnweightedUpdater::new(g.node_count()).update(g, dag, batch)
}

/// One-shot weighted repair.
pub fn update_sssp_weighted(
    g: &Graph,
    dag: &mut SsspDag,
    batch: &[EdgeUpdate],
) -> Result<AffectedStats> {
    WeightedUpdater::new(g.node_count()).update(g, dag, batch)
}
