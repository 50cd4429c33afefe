//! Static path-sampling approximation.
//!
//! `r` ordered node pairs are drawn uniformly; for each, one shortest path is
//! drawn uniformly among all shortest paths between the pair, and every internal
//! node of that path gets `1/r` added to its score. With `r` chosen from the
//! vertex-diameter bound, all scores are within `epsilon` of the exact values
//! with probability at least `1 - delta`.
//!
//! Randomness is consumed in a fixed order: the vertex-diameter source node
//! (unweighted graphs only), then all `r` pairs, then the `r` paths in entry
//! order. The per-pair shortest-path computations draw nothing, which is what
//! lets them run in parallel without changing the result.

use rand::Rng;

use crate::count::PathCount;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sssp::{compute_extended_sssp, SsspDag};

/// Inputs of the sample-size bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingParams {
    pub epsilon: f64,
    pub delta: f64,
    /// Universal constant of the bound.
    pub c: f64,
    pub vd_estimate: usize,
}

impl SamplingParams {
    pub const DEFAULT_C: f64 = 0.5;

    pub fn new(epsilon: f64, delta: f64, vd_estimate: usize) -> Result<Self> {
        let p = Self {
            epsilon,
            delta,
            c: Self::DEFAULT_C,
            vd_estimate,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_c(mut self, c: f64) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::OutOfUnitInterval("epsilon", self.epsilon));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::OutOfUnitInterval("delta", self.delta));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::InvalidArgument(format!("c must be positive, got {}", self.c)));
        }
        Ok(())
    }

    pub fn sample_size(&self) -> Result<usize> {
        compute_sample_size(self)
    }
}

/// `r = ceil((c / eps^2) * (floor(log2(VD - 2)) + 1 + ln(1 / delta)))`.
///
/// For `VD <= 2` the logarithm is undefined and taken as 0; such graphs have no
/// internal path nodes, so any `r` keeps the guarantee.
pub fn compute_sample_size(p: &SamplingParams) -> Result<usize> {
    p.validate()?;
    let log_term = if p.vd_estimate >= 3 {
        ((p.vd_estimate - 2) as u64).ilog2() as f64
    } else {
        0.0
    };
    let r = (p.c / (p.epsilon * p.epsilon)) * (log_term + 1.0 + (1.0 / p.delta).ln());
    Ok((r.ceil() as usize).max(1))
}

/// Upper bound on the vertex diameter from a BFS rooted at `s`: the two largest
/// distances (to distinct nodes) plus one. Weighted graphs get `n`.
pub fn estimate_vd_from(g: &Graph, s: NodeId) -> Result<usize> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, got: n });
    }
    if g.is_weighted() {
        g.ensure_connected()?;
        return Ok(n);
    }
    let dag = compute_extended_sssp(g, s)?;
    let (mut d1, mut d2) = (0.0f64, 0.0f64);
    for &d in dag.dists() {
        if d > d1 {
            d2 = d1;
            d1 = d;
        } else if d > d2 {
            d2 = d;
        }
    }
    Ok(d1 as usize + d2 as usize + 1)
}

/// [`estimate_vd_from`] with a random root (no draw on weighted graphs).
pub fn estimate_vd<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<usize> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, got: n });
    }
    if g.is_weighted() {
        return estimate_vd_from(g, 0);
    }
    let s = rng.gen_range(0..n);
    estimate_vd_from(g, s)
}

/// Estimates the vertex diameter of `g` and builds the sampling parameters.
pub fn prepare_params<R: Rng + ?Sized>(
    g: &Graph,
    epsilon: f64,
    delta: f64,
    c: f64,
    rng: &mut R,
) -> Result<SamplingParams> {
    // validate before drawing anything
    SamplingParams::new(epsilon, delta, 2)?.with_c(c)?;
    let vd = estimate_vd(g, rng)?;
    SamplingParams::new(epsilon, delta, vd)?.with_c(c)
}

/// Uniform ordered pair `s != t`.
pub fn sample_node_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (NodeId, NodeId) {
    assert!(n >= 2, "need at least two nodes to sample a pair");
    let s = rng.gen_range(0..n);
    let mut t = rng.gen_range(0..n - 1);
    if t >= s {
        t += 1;
    }
    (s, t)
}

fn pick_pred<R: Rng + ?Sized>(g: &Graph, dag: &SsspDag, v: NodeId, rng: &mut R) -> NodeId {
    let sigmas = dag.sigmas();
    if let Some(total) = sigmas.get_small(v) {
        let mut x = rng.gen_range(0..total);
        for z in dag.preds(g, v) {
            let sz = sigmas.get_small(z).expect("predecessor count exceeds successor count");
            if x < sz {
                return z;
            }
            x -= sz;
        }
    } else {
        let mut x = dag.sigma(v).sample_below(rng);
        for z in dag.preds(g, v) {
            let sz = dag.sigma(z);
            if x < sz {
                return z;
            }
            x.checked_sub_assign(&sz);
        }
    }
    panic!("path counts at node {v} do not match its predecessors");
}

/// Draws one shortest path from the dag's source to `t`, uniformly among all of
/// them, by walking predecessors back from `t` and picking `z` with probability
/// `sigma(z) / sigma(v)`. Returns the internal nodes in target-to-source order.
pub fn sample_shortest_path<R: Rng + ?Sized>(
    g: &Graph,
    dag: &SsspDag,
    t: NodeId,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    let s = dag.source();
    if t >= dag.node_count() {
        return Err(Error::NodeOutOfRange {
            node: t,
            n: dag.node_count(),
        });
    }
    if t == s {
        return Err(Error::InvalidArgument("target equals source".into()));
    }
    let mut path = Vec::new();
    let mut v = t;
    loop {
        let z = pick_pred(g, dag, v, rng);
        if z == s {
            return Ok(path);
        }
        path.push(z);
        v = z;
    }
}

/// Per-node count of sampled paths each node is internal to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreVector {
    counts: Vec<u64>,
    r: usize,
}

impl ScoreVector {
    pub fn new(n: usize, r: usize) -> Self {
        Self {
            counts: vec![0; n],
            r,
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn sample_count(&self) -> usize {
        self.r
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn score(&self, v: NodeId) -> f64 {
        self.counts[v] as f64 / self.r as f64
    }

    pub fn scores(&self) -> Vec<f64> {
        (0..self.len()).map(|v| self.score(v)).collect()
    }

    /// Nodes by descending score, ties by ascending id.
    pub fn ranking(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| self.counts[b].cmp(&self.counts[a]).then(a.cmp(&b)));
        ids
    }

    pub(crate) fn credit(&mut self, path: &[NodeId]) {
        for &v in path {
            self.counts[v] += 1;
        }
    }

    pub(crate) fn debit(&mut self, path: &[NodeId]) {
        for &v in path {
            self.counts[v] -= 1;
        }
    }
}

/// One sampled pair with its stored path and the state needed to repair it.
#[derive(Clone, Debug)]
pub struct PoolEntry {
    pub(crate) source: NodeId,
    pub(crate) target: NodeId,
    pub(crate) path: Vec<NodeId>,
    pub(crate) d_old: f64,
    pub(crate) sigma_old: PathCount,
    pub(crate) dag: SsspDag,
}

impl PoolEntry {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn target(&self) -> NodeId {
        self.target
    }

    /// Internal nodes of the stored path, target to source.
    pub fn path(&self) -> &[NodeId] {
        &self.path
    }

    /// Cached distance between the pair.
    pub fn cached_distance(&self) -> f64 {
        self.d_old
    }

    /// Cached number of shortest paths between the pair.
    pub fn cached_sigma(&self) -> &PathCount {
        &self.sigma_old
    }

    pub fn dag(&self) -> &SsspDag {
        &self.dag
    }
}

#[derive(Clone, Debug, Default)]
pub struct SamplePool {
    pub(crate) entries: Vec<PoolEntry>,
}

impl SamplePool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PoolEntry] {
        &self.entries
    }

    /// Recounts path membership from the stored paths.
    pub fn membership_counts(&self, n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n];
        for e in &self.entries {
            for &v in &e.path {
                counts[v] += 1;
            }
        }
        counts
    }
}

fn compute_dags(g: &Graph, pairs: &[(NodeId, NodeId)], parallel: bool) -> Result<Vec<SsspDag>> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return pairs
            .par_iter()
            .map(|&(s, _)| compute_extended_sssp(g, s))
            .collect();
    }
    let _ = parallel;
    pairs.iter().map(|&(s, _)| compute_extended_sssp(g, s)).collect()
}

/// Builds a pool from explicit pairs. Used by [`rk_initialize`]; also handy to
/// pin the sampled pairs in tests.
pub fn pool_from_pairs<R: Rng + ?Sized>(
    g: &Graph,
    pairs: &[(NodeId, NodeId)],
    rng: &mut R,
    parallel: bool,
) -> Result<(SamplePool, ScoreVector)> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("pool needs at least one pair".into()));
    }
    let n = g.node_count();
    for &(s, t) in pairs {
        if s >= n || t >= n {
            return Err(Error::NodeOutOfRange { node: s.max(t), n });
        }
        if s == t {
            return Err(Error::InvalidArgument(format!("pair ({s}, {t}) has equal endpoints")));
        }
    }
    let dags = compute_dags(g, pairs, parallel)?;
    let mut scores = ScoreVector::new(n, pairs.len());
    let mut entries = Vec::with_capacity(pairs.len());
    for (&(s, t), dag) in pairs.iter().zip(dags) {
        let path = sample_shortest_path(g, &dag, t, rng)?;
        scores.credit(&path);
        entries.push(PoolEntry {
            source: s,
            target: t,
            path,
            d_old: dag.dist(t),
            sigma_old: dag.sigma(t),
            dag,
        });
    }
    Ok((SamplePool { entries }, scores))
}

fn draw_pairs<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    (0..r).map(|_| sample_node_pair(n, rng)).collect()
}

/// Samples `r` paths and keeps the per-sample shortest-path dags so they can be
/// repaired later.
pub fn rk_initialize<R: Rng + ?Sized>(
    g: &Graph,
    params: &SamplingParams,
    rng: &mut R,
) -> Result<(SamplePool, ScoreVector)> {
    rk_initialize_with(g, params, rng, false)
}

pub fn rk_initialize_with<R: Rng + ?Sized>(
    g: &Graph,
    params: &SamplingParams,
    rng: &mut R,
    parallel: bool,
) -> Result<(SamplePool, ScoreVector)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, got: n });
    }
    g.ensure_connected()?;
    let r = compute_sample_size(params)?;
    let pairs = draw_pairs(n, r, rng);
    pool_from_pairs(g, &pairs, rng, parallel)
}

/// Static estimate without keeping the dags. Consumes randomness exactly like
/// [`rk_initialize`], so both give the same scores for the same generator state.
pub fn rk_estimate<R: Rng + ?Sized>(
    g: &Graph,
    params: &SamplingParams,
    rng: &mut R,
) -> Result<ScoreVector> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, got: n });
    }
    g.ensure_connected()?;
    let r = compute_sample_size(params)?;
    let pairs = draw_pairs(n, r, rng);
    let mut scores = ScoreVector::new(n, r);
    for &(s, t) in &pairs {
        let dag = compute_extended_sssp(g, s)?;
        scores.credit(&sample_shortest_path(g, &dag, t, rng)?);
    }
    Ok(scores)
}
