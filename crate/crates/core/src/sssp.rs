//! Single-source shortest paths extended with path counts and predecessors.
//!
//! BFS on unweighted graphs, Dijkstra on weighted ones. Predecessor sets are not
//! materialized: `z` is a predecessor of `v` iff `{z, v}` is an edge and
//! `d(v) = d(z) + w(z, v)`, which is read straight off the distances and the
//! graph the dag belongs to.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::count::{PathCount, SigmaStore};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Absolute tolerance for comparing weighted distances.
pub const TOLERANCE: f64 = 1e-9;

#[inline]
pub(crate) fn is_pred_edge(d_pred: f64, w: f64, d_succ: f64) -> bool {
    (d_pred + w - d_succ).abs() <= TOLERANCE
}

/// Shortest-path state from one source.
#[derive(Clone, Debug)]
pub struct SsspDag {
    source: NodeId,
    pub(crate) dist: Vec<f64>,
    pub(crate) sigma: SigmaStore,
    pub(crate) d_max: f64,
    /// Nodes per hop level (unweighted only, empty otherwise).
    pub(crate) levels: Vec<u32>,
}

impl SsspDag {
    #[inline]
    pub fn source(&self) -> NodeId {
        self.source
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.dist.len()
    }

    #[inline]
    pub fn dist(&self, v: NodeId) -> f64 {
        self.dist[v]
    }

    pub fn dists(&self) -> &[f64] {
        &self.dist
    }

    #[inline]
    pub fn sigma(&self, v: NodeId) -> PathCount {
        self.sigma.get(v)
    }

    pub fn sigmas(&self) -> &SigmaStore {
        &self.sigma
    }

    /// Largest distance from the source.
    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    /// Predecessors of `v` in adjacency order. `g` must be the graph this dag is
    /// valid for.
    pub fn preds<'a>(&'a self, g: &'a Graph, v: NodeId) -> impl Iterator<Item = NodeId> + 'a {
        let dv = self.dist[v];
        g.neighbors(v)
            .iter()
            .filter(move |nb| is_pred_edge(self.dist[nb.id()], nb.weight, dv))
            .map(|nb| nb.id())
    }

    /// Predecessors of `v`, sorted.
    pub fn pred_set(&self, g: &Graph, v: NodeId) -> Vec<NodeId> {
        let mut p: Vec<NodeId> = self.preds(g, v).collect();
        p.sort_unstable();
        p
    }

    /// Describes the first field where `self` and `other` disagree: distances
    /// within [`TOLERANCE`], counts and predecessor sets exactly.
    pub fn diff(&self, other: &SsspDag, g: &Graph) -> Option<String> {
        if self.source != other.source {
            return Some(format!("source {} vs {}", self.source, other.source));
        }
        if self.node_count() != other.node_count() {
            return Some("node count".into());
        }
        if (self.d_max - other.d_max).abs() > TOLERANCE {
            return Some(format!("d_max {} vs {}", self.d_max, other.d_max));
        }
        for v in 0..self.node_count() {
            if (self.dist[v] - other.dist[v]).abs() > TOLERANCE {
                return Some(format!("dist[{v}] {} vs {}", self.dist[v], other.dist[v]));
            }
            if self.sigma(v) != other.sigma(v) {
                return Some(format!("sigma[{v}] {} vs {}", self.sigma(v), other.sigma(v)));
            }
            let (a, b) = (self.pred_set(g, v), other.pred_set(g, v));
            if a != b {
                return Some(format!("preds[{v}] {a:?} vs {b:?}"));
            }
        }
        None
    }

    /// Checks the structural invariants against `g`.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let s = self.source;
        if self.dist[s] != 0.0 || self.sigma(s) != PathCount::ONE {
            return Err("source must have d = 0 and sigma = 1".into());
        }
        let mut max = 0.0f64;
        for v in 0..self.node_count() {
            if !self.dist[v].is_finite() {
                return Err(format!("node {v} unreachable"));
            }
            max = max.max(self.dist[v]);
            // no edge may shortcut a distance
            for nb in g.neighbors(v) {
                if self.dist[nb.id()] + nb.weight < self.dist[v] - TOLERANCE {
                    return Err(format!("edge {{{},{v}}} shortcuts d[{v}]", nb.id()));
                }
            }
            if v == s {
                continue;
            }
            let mut acc = PathCount::ZERO;
            for z in self.preds(g, v) {
                self.sigma.add_into(z, &mut acc);
            }
            if acc != self.sigma(v) {
                return Err(format!("sigma[{v}] = {} but preds sum to {acc}", self.sigma(v)));
            }
        }
        if (max - self.d_max).abs() > TOLERANCE {
            return Err(format!("d_max {} but max distance {max}", self.d_max));
        }
        Ok(())
    }

    pub(crate) fn rebuild_levels(&mut self) {
        self.levels.clear();
        self.levels.resize(self.d_max as usize + 1, 0);
        for &d in &self.dist {
            self.levels[d as usize] += 1;
        }
    }

    pub(crate) fn recompute_d_max(&mut self) {
        self.d_max = self.dist.iter().copied().fold(0.0, f64::max);
    }
}

#[derive(Clone, Copy)]
struct MinItem {
    key: f64,
    node: u32,
}

impl PartialEq for MinItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for MinItem {}
impl PartialOrd for MinItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MinItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Min-heap keyed by tentative distance.
#[derive(Default, Debug)]
pub(crate) struct MinQueue(BinaryHeap<MinItem>);

impl MinQueue {
    #[inline]
    pub fn push(&mut self, node: NodeId, key: f64) {
        self.0.push(MinItem {
            key,
            node: node as u32,
        });
    }
    #[inline]
    pub fn pop(&mut self) -> Option<(NodeId, f64)> {
        self.0.pop().map(|it| (it.node as NodeId, it.key))
    }
    pub fn clear(&mut self) {
        self.0.clear();
    }
}

impl std::fmt::Debug for MinItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.node, self.key)
    }
}

/// Distances, path counts and (implicit) predecessors from `s`.
///
/// Fails if some node is unreachable from `s`.
pub fn compute_extended_sssp(g: &Graph, s: NodeId) -> Result<SsspDag> {
    let n = g.node_count();
    if s >= n {
        return Err(Error::NodeOutOfRange { node: s, n });
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = SigmaStore::zeros(n);
    dist[s] = 0.0;
    sigma.set(s, PathCount::ONE);

    if g.is_weighted() {
        dijkstra(g, s, &mut dist, &mut sigma);
    } else {
        bfs(g, s, &mut dist, &mut sigma);
    }

    if let Some(unreachable) = dist.iter().position(|d| d.is_infinite()) {
        return Err(Error::Disconnected {
            from: s,
            unreachable,
        });
    }
    let mut dag = SsspDag {
        source: s,
        dist,
        sigma,
        d_max: 0.0,
        levels: Vec::new(),
    };
    dag.recompute_d_max();
    if !g.is_weighted() {
        dag.rebuild_levels();
    }
    Ok(dag)
}

fn bfs(g: &Graph, s: NodeId, dist: &mut [f64], sigma: &mut SigmaStore) {
    let mut order: Vec<u32> = Vec::with_capacity(g.node_count());
    order.push(s as u32);
    let mut head = 0;
    while head < order.len() {
        let v = order[head] as NodeId;
        head += 1;
        let next = dist[v] + 1.0;
        let sv = sigma.get(v);
        for nb in g.neighbors(v) {
            let z = nb.id();
            if dist[z].is_infinite() {
                dist[z] = next;
                order.push(z as u32);
            }
            if dist[z] == next {
                let mut acc = sigma.get(z);
                acc += &sv;
                sigma.set(z, acc);
            }
        }
    }
}

fn dijkstra(g: &Graph, s: NodeId, dist: &mut [f64], sigma: &mut SigmaStore) {
    let mut settled = vec![false; g.node_count()];
    let mut queue = MinQueue::default();
    queue.push(s, 0.0);
    while let Some((v, key)) = queue.pop() {
        if settled[v] || key > dist[v] {
            continue;
        }
        settled[v] = true;
        let sv = sigma.get(v);
        for nb in g.neighbors(v) {
            let z = nb.id();
            if settled[z] {
                continue;
            }
            let nd = dist[v] + nb.weight;
            if nd < dist[z] - TOLERANCE {
                dist[z] = nd;
                sigma.set(z, sv.clone());
                queue.push(z, nd);
            } else if (nd - dist[z]).abs() <= TOLERANCE {
                let mut acc = sigma.get(z);
                acc += &sv;
                sigma.set(z, acc);
            }
        }
    }
}
