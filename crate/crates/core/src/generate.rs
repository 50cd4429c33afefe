//! Dorogovtsev-Mendes synthetic graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Gaussian edge weights, redrawn until strictly positive.
#[derive(Clone, Copy, Debug)]
pub struct PositiveGaussian(Normal<f64>);

impl PositiveGaussian {
    pub fn new(mean: f64, std_dev: f64) -> Self {
        Self(Normal::new(mean, std_dev).expect("valid normal parameters"))
    }
}

impl Default for PositiveGaussian {
    fn default() -> Self {
        Self::new(1.0, 0.1)
    }
}

impl Distribution<f64> for PositiveGaussian {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let w = self.0.sample(rng);
            if w > 0.0 {
                return w;
            }
        }
    }
}

/// Starts from a triangle; every new node picks a uniformly random existing edge
/// and connects to both of its endpoints. The result is connected with
/// `m = 2n - 3`.
pub fn dorogovtsev_mendes(n: usize, weighted: bool, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    dorogovtsev_mendes_with(n, weighted, &mut rng)
}

pub fn dorogovtsev_mendes_with<R: Rng + ?Sized>(
    n: usize,
    weighted: bool,
    rng: &mut R,
) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooFewNodes { required: 3, got: n });
    }
    let weights = PositiveGaussian::default();
    let draw = |rng: &mut R| if weighted { weights.sample(rng) } else { 1.0 };

    let mut g = Graph::new(n, weighted);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(2 * n - 3);
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        let w = draw(rng);
        g.add_edge(u, v, w)?;
        edges.push((u, v));
    }
    for k in 3..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        for end in [a, b] {
            let w = draw(rng);
            g.add_edge(end, k, w)?;
            edges.push((end, k));
        }
    }
    Ok(g)
}
