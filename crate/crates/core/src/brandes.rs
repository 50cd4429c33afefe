//! Exact betweenness by dependency accumulation.
//!
//! Scores are normalized over ordered pairs: `c(v) = 1/(n(n-1)) * sum over
//! s != v != t of sigma_st(v) / sigma_st`.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::sssp::{is_pred_edge, MinQueue, TOLERANCE};

/// Exact normalized betweenness of every node. Requires a connected graph.
pub fn brandes_exact(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    g.ensure_connected()?;
    let mut bc = vec![0.0; n];
    if n < 3 {
        return Ok(bc);
    }
    let mut scratch = Scratch::new(n);
    for s in 0..n {
        scratch.accumulate(g, s, &mut bc);
    }
    let norm = 1.0 / (n as f64 * (n as f64 - 1.0));
    for x in &mut bc {
        *x *= norm;
    }
    Ok(bc)
}

struct Scratch {
    dist: Vec<f64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
    settled: Vec<bool>,
    queue: VecDeque<NodeId>,
    heap: MinQueue,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            settled: vec![false; n],
            queue: VecDeque::new(),
            heap: MinQueue::default(),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: NodeId, bc: &mut [f64]) {
        self.dist.fill(f64::INFINITY);
        self.sigma.fill(0.0);
        self.delta.fill(0.0);
        self.order.clear();
        self.dist[s] = 0.0;
        self.sigma[s] = 1.0;

        if g.is_weighted() {
            self.settled.fill(false);
            self.heap.clear();
            self.heap.push(s, 0.0);
            while let Some((v, key)) = self.heap.pop() {
                if self.settled[v] || key > self.dist[v] {
                    continue;
                }
                self.settled[v] = true;
                self.order.push(v);
                for nb in g.neighbors(v) {
                    let z = nb.id();
                    if self.settled[z] {
                        continue;
                    }
                    let nd = self.dist[v] + nb.weight;
                    if nd < self.dist[z] - TOLERANCE {
                        self.dist[z] = nd;
                        self.sigma[z] = self.sigma[v];
                        self.heap.push(z, nd);
                    } else if (nd - self.dist[z]).abs() <= TOLERANCE {
                        self.sigma[z] += self.sigma[v];
                    }
                }
            }
        } else {
            self.queue.push_back(s);
            while let Some(v) = self.queue.pop_front() {
                self.order.push(v);
                for nb in g.neighbors(v) {
                    let z = nb.id();
                    if self.dist[z].is_infinite() {
                        self.dist[z] = self.dist[v] + 1.0;
                        self.queue.push_back(z);
                    }
                    if self.dist[z] == self.dist[v] + 1.0 {
                        self.sigma[z] += self.sigma[v];
                    }
                }
            }
        }

        for &w in self.order.iter().rev() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for nb in g.neighbors(w) {
                let z = nb.id();
                if is_pred_edge(self.dist[z], nb.weight, self.dist[w]) {
                    self.delta[z] += self.sigma[z] * coeff;
                }
            }
            if w != s {
                bc[w] += self.delta[w];
            }
        }
    }
}
