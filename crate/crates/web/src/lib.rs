//! Browser demo: grow a Dorogovtsev-Mendes graph, keep sampled betweenness
//! scores up to date while random edges arrive, and check them against the
//! exact values.

use bcinc::eval::{compute_accuracy, top_k};
use bcinc::generate::dorogovtsev_mendes;
use bcinc::{brandes_exact, DynamicBc, EdgeUpdate, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Demo {
    state: DynamicBc,
    rng: ChaCha8Rng,
    last_resampled: usize,
    last_inserted: Vec<u32>,
}

#[wasm_bindgen]
impl Demo {
    /// Generates the graph and runs the initial sampling.
    #[wasm_bindgen(constructor)]
    pub fn new(nodes: usize, weighted: bool, seed: u64, epsilon: f64, delta: f64) -> Result<Demo, JsError> {
        let g = dorogovtsev_mendes(nodes, weighted, seed)?;
        let state = DynamicBc::new(g, epsilon, delta, seed)?;
        Ok(Demo {
            state,
            rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(1)),
            last_resampled: 0,
            last_inserted: Vec::new(),
        })
    }

    /// Inserts `count` random new edges as one batch. Returns how many sampled
    /// paths had to be redrawn.
    pub fn insert_random_edges(&mut self, count: usize) -> Result<usize, JsError> {
        let batch = random_insertions(self.state.graph(), count, &mut self.rng);
        let report = self.state.update_batch(&batch)?;
        self.last_inserted = batch.iter().flat_map(|e| [e.u as u32, e.v as u32]).collect();
        self.last_resampled = report.resampled.len();
        Ok(self.last_resampled)
    }

    /// `[max_abs_error, mean_abs_error, max_rank_error]` against exact scores.
    pub fn compare_exact(&self) -> Result<Vec<f64>, JsError> {
        let exact = brandes_exact(self.state.graph())?;
        let acc = compute_accuracy(&exact, &self.scores())?;
        Ok(vec![acc.max_abs_error, acc.mean_abs_error, acc.max_rank_error])
    }

    pub fn exact_scores(&self) -> Result<Vec<f64>, JsError> {
        Ok(brandes_exact(self.state.graph())?)
    }

    pub fn scores(&self) -> Vec<f64> {
        self.state.score_vector().scores()
    }

    pub fn top(&self, k: usize) -> Vec<u32> {
        top_k(&self.scores(), k).into_iter().map(|v| v as u32).collect()
    }

    /// Flat `[u0, v0, u1, v1, ...]`.
    pub fn edges(&self) -> Vec<u32> {
        self.state.graph().edges().flat_map(|(u, v, _)| [u as u32, v as u32]).collect()
    }

    /// Endpoints of the last inserted batch, flat like [`Demo::edges`].
    pub fn last_inserted(&self) -> Vec<u32> {
        self.last_inserted.clone()
    }

    pub fn node_count(&self) -> usize {
        self.state.graph().node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.state.graph().edge_count()
    }

    pub fn sample_count(&self) -> usize {
        self.state.sample_count()
    }

    pub fn epsilon(&self) -> f64 {
        self.state.params().epsilon
    }
}

fn random_insertions(g: &Graph, count: usize, rng: &mut ChaCha8Rng) -> Vec<EdgeUpdate> {
    let n = g.node_count();
    let room = n * (n - 1) / 2 - g.edge_count();
    let mut batch: Vec<EdgeUpdate> = Vec::with_capacity(count.min(room));
    while batch.len() < count.min(room) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let fresh = !batch.iter().any(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u));
        if u != v && !g.contains_edge(u, v) && fresh {
            let w = if g.is_weighted() { rng.gen_range(0.8..1.2) } else { 1.0 };
            batch.push(EdgeUpdate::weighted(u, v, w));
        }
    }
    batch
}
