//! Incrementally maintained approximation under batches of insertions and
//! weight decreases.
//!
//! After a batch every stored dag is repaired in place. A stored path is kept
//! when its pair's distance and path count are both unchanged, since then the
//! set of shortest paths between the pair is unchanged too; otherwise a fresh
//! uniform path is drawn and the scores are patched by one count per internal
//! node. The sample count `r` is fixed at initialization: on a connected graph
//! that only gains edges the vertex-diameter bound cannot grow.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeUpdate, Graph, NodeId};
use crate::rk::{
    pool_from_pairs, prepare_params, rk_initialize_with, sample_shortest_path, PoolEntry,
    SamplePool, SamplingParams, ScoreVector,
};
use crate::sssp::TOLERANCE;
use crate::sssp_inc::{AffectedStats, UnweightedUpdater, WeightedUpdater};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Level-queue repair.
    Unweighted,
    /// Priority-queue repair.
    Weighted,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub c: f64,
    pub seed: u64,
    /// Compute and repair dags on the rayon pool. Results are identical to the
    /// sequential mode.
    pub parallel: bool,
}

impl DynamicConfig {
    pub fn new(epsilon: f64, delta: f64, seed: u64) -> Self {
        Self {
            epsilon,
            delta,
            c: SamplingParams::DEFAULT_C,
            seed,
            parallel: false,
        }
    }
}

/// Outcome of one [`DynamicBc::update_batch`] call.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BatchReport {
    /// Updates left after normalization.
    pub applied: usize,
    /// Pool entries whose path was redrawn, in ascending entry order.
    pub resampled: Vec<usize>,
    /// Repair work summed over all dags.
    pub stats: AffectedStats,
}

pub struct DynamicBc {
    graph: Graph,
    pool: SamplePool,
    scores: ScoreVector,
    params: SamplingParams,
    mode: Mode,
    rng: ChaCha8Rng,
    parallel: bool,
    unweighted: UnweightedUpdater,
    weighted: WeightedUpdater,
}

impl DynamicBc {
    /// Runs the static sampler on `g` and keeps everything needed for updates.
    pub fn new(g: Graph, epsilon: f64, delta: f64, seed: u64) -> Result<Self> {
        Self::with_config(g, &DynamicConfig::new(epsilon, delta, seed))
    }

    pub fn with_config(g: Graph, cfg: &DynamicConfig) -> Result<Self> {
        g.ensure_connected()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let params = prepare_params(&g, cfg.epsilon, cfg.delta, cfg.c, &mut rng)?;
        let (pool, scores) = rk_initialize_with(&g, &params, &mut rng, cfg.parallel)?;
        Ok(Self::assemble(g, pool, scores, params, rng, cfg.parallel))
    }

    /// Builds the state from explicit sampled pairs instead of random ones.
    pub fn from_pairs(
        g: Graph,
        params: SamplingParams,
        pairs: &[(NodeId, NodeId)],
        seed: u64,
    ) -> Result<Self> {
        g.ensure_connected()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pool, scores) = pool_from_pairs(&g, pairs, &mut rng, false)?;
        Ok(Self::assemble(g, pool, scores, params, rng, false))
    }

    fn assemble(
        graph: Graph,
        pool: SamplePool,
        scores: ScoreVector,
        params: SamplingParams,
        rng: ChaCha8Rng,
        parallel: bool,
    ) -> Self {
        let n = graph.node_count();
        let mode = if graph.is_weighted() {
            Mode::Weighted
        } else {
            Mode::Unweighted
        };
        Self {
            graph,
            pool,
            scores,
            params,
            mode,
            rng,
            parallel,
            unweighted: UnweightedUpdater::new(if mode == Mode::Unweighted { n } else { 0 }),
            weighted: WeightedUpdater::new(if mode == Mode::Weighted { n } else { 0 }),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pool(&self) -> &SamplePool {
        &self.pool
    }

    pub fn params(&self) -> &SamplingParams {
        &self.params
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn sample_count(&self) -> usize {
        self.pool.len()
    }

    pub fn set_parallel(&mut self, parallel: bool) {
        self.parallel = parallel;
    }

    /// Snapshot of the current scores.
    pub fn scores(&self) -> ScoreVector {
        self.scores.clone()
    }

    pub fn score_vector(&self) -> &ScoreVector {
        &self.scores
    }

    pub fn ranking(&self) -> Vec<NodeId> {
        self.scores.ranking()
    }

    /// Applies a batch of insertions / weight decreases and updates the scores.
    /// The batch is validated as a whole first; on error nothing changes.
    pub fn update_batch(&mut self, batch: &[EdgeUpdate]) -> Result<BatchReport> {
        let effective = self.graph.apply_batch(batch)?;
        let mut report = BatchReport {
            applied: effective.len(),
            ..BatchReport::default()
        };
        if effective.is_empty() {
            return Ok(report);
        }

        if self.parallel && cfg!(feature = "parallel") {
            report.stats = self.repair_all_parallel(&effective);
            for i in 0..self.pool.entries.len() {
                if self.refresh_entry(i)? {
                    report.resampled.push(i);
                }
            }
        } else {
            for i in 0..self.pool.entries.len() {
                let dag = &mut self.pool.entries[i].dag;
                report.stats += match self.mode {
                    Mode::Unweighted => self.unweighted.update_unchecked(&self.graph, dag, &effective),
                    Mode::Weighted => self.weighted.update_unchecked(&self.graph, dag, &effective),
                };
                if self.refresh_entry(i)? {
                    report.resampled.push(i);
                }
            }
        }
        Ok(report)
    }

    #[cfg(feature = "parallel")]
    fn repair_all_parallel(&mut self, batch: &[EdgeUpdate]) -> AffectedStats {
        use rayon::prelude::*;
        let g = &self.graph;
        let n = g.node_count();
        match self.mode {
            Mode::Unweighted => self
                .pool
                .entries
                .par_iter_mut()
                .map_init(
                    || UnweightedUpdater::new(n),
                    |up, e| up.update_unchecked(g, &mut e.dag, batch),
                )
                .reduce(AffectedStats::default, |mut a, b| {
                    a += b;
                    a
                }),
            Mode::Weighted => self
                .pool
                .entries
                .par_iter_mut()
                .map_init(
                    || WeightedUpdater::new(n),
                    |up, e| up.update_unchecked(g, &mut e.dag, batch),
                )
                .reduce(AffectedStats::default, |mut a, b| {
                    a += b;
                    a
                }),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn repair_all_parallel(&mut self, _batch: &[EdgeUpdate]) -> AffectedStats {
        unreachable!("parallel feature disabled")
    }

    /// Resamples entry `i` if its pair's shortest paths changed. Returns whether
    /// it did.
    fn refresh_entry(&mut self, i: usize) -> Result<bool> {
        let entry: &mut PoolEntry = &mut self.pool.entries[i];
        let t = entry.target;
        let d = entry.dag.dist(t);
        let sigma = entry.dag.sigma(t);
        let closer = match self.mode {
            Mode::Unweighted => d < entry.d_old,
            Mode::Weighted => d < entry.d_old - TOLERANCE,
        };
        if !closer && sigma == entry.sigma_old {
            return Ok(false);
        }
        self.scores.debit(&entry.path);
        entry.path = sample_shortest_path(&self.graph, &entry.dag, t, &mut self.rng)?;
        self.scores.credit(&entry.path);
        entry.d_old = d;
        entry.sigma_old = sigma;
        Ok(true)
    }

    /// Checks that the score counts equal the pool's path memberships and that
    /// every entry's cache and stored path agree with its dag.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let n = self.graph.node_count();
        if self.scores.sample_count() != self.pool.len() {
            return Err("sample count differs from pool size".into());
        }
        if self.pool.membership_counts(n) != self.scores.counts() {
            return Err("score counts differ from pool membership".into());
        }
        for (i, e) in self.pool.entries.iter().enumerate() {
            let dag = &e.dag;
            if dag.source() != e.source || e.source == e.target {
                return Err(format!("entry {i}: bad endpoints"));
            }
            if (dag.dist(e.target) - e.d_old).abs() > TOLERANCE || dag.sigma(e.target) != e.sigma_old {
                return Err(format!("entry {i}: cached (d, sigma) out of date"));
            }
            // the stored path must follow predecessor links from t back to s
            let mut prev = e.target;
            for &v in e.path.iter().chain(std::iter::once(&e.source)) {
                if !dag.preds(&self.graph, prev).any(|z| z == v) {
                    return Err(format!("entry {i}: {v} is not a predecessor of {prev}"));
                }
                prev = v;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for DynamicBc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DynamicBc")
            .field("nodes", &self.graph.node_count())
            .field("edges", &self.graph.edge_count())
            .field("samples", &self.pool.len())
            .field("mode", &self.mode)
            .finish()
    }
}

/// Rejects anything that is not a connected graph with at least two nodes.
pub fn check_input(g: &Graph) -> Result<()> {
    if g.node_count() < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            got: g.node_count(),
        });
    }
    g.ensure_connected()
}
