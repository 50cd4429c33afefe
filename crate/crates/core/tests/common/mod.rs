//! Independent oracles shared by the integration tests. Nothing here calls into
//! the shortest-path or sampling code under test.

#![allow(dead_code)]

pub mod fuzz;

use std::collections::{BTreeSet, VecDeque};

use bcinc::{Graph, NodeId};
use rand::seq::SliceRandom;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Random connected graph: a random spanning tree plus `extra` random edges.
/// Weighted graphs get integer weights in `1..=max_w` so path lengths are exact.
pub fn random_connected<R: Rng>(n: usize, extra: usize, weighted: bool, max_w: u32, rng: &mut R) -> Graph {
    let mut g = Graph::new(n, weighted);
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let w = |rng: &mut R| if weighted { rng.gen_range(1..=max_w) as f64 } else { 1.0 };
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let ww = w(rng);
        g.add_edge(order[i], parent, ww).unwrap();
    }
    let max_edges = n * (n - 1) / 2;
    let mut added = 0;
    while added < extra && g.edge_count() < max_edges {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.contains_edge(u, v) {
            let ww = w(rng);
            g.add_edge(u, v, ww).unwrap();
            added += 1;
        }
    }
    g
}

/// Random graph that may be disconnected.
pub fn random_graph<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n, false);
    let max_edges = n * n.saturating_sub(1) / 2;
    while g.edge_count() < m.min(max_edges) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.contains_edge(u, v) {
            g.add_edge(u, v, 1.0).unwrap();
        }
    }
    g
}

/// Random absent pair, if the graph is not complete.
pub fn random_non_edge<R: Rng>(g: &Graph, rng: &mut R) -> Option<(NodeId, NodeId)> {
    let n = g.node_count();
    if g.edge_count() == n * (n - 1) / 2 {
        return None;
    }
    loop {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.contains_edge(u, v) {
            return Some((u, v));
        }
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }
    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }
}

pub fn connected_by_union_find(g: &Graph) -> bool {
    let n = g.node_count();
    let mut uf = UnionFind::new(n);
    for (u, v, _) in g.edges() {
        uf.union(u, v);
    }
    (0..n).map(|v| uf.find(v)).collect::<BTreeSet<_>>().len() <= 1
}

/// Every simple path from `s`, as node sequences including both endpoints.
fn simple_paths_from(g: &Graph, s: NodeId) -> Vec<(Vec<NodeId>, f64)> {
    fn dfs(g: &Graph, path: &mut Vec<NodeId>, on: &mut [bool], len: f64, out: &mut Vec<(Vec<NodeId>, f64)>) {
        out.push((path.clone(), len));
        let v = *path.last().unwrap();
        for nb in g.neighbors(v) {
            let z = nb.id();
            if !on[z] {
                on[z] = true;
                path.push(z);
                dfs(g, path, on, len + nb.weight, out);
                path.pop();
                on[z] = false;
            }
        }
    }
    let mut on = vec![false; g.node_count()];
    on[s] = true;
    let mut out = Vec::new();
    dfs(g, &mut vec![s], &mut on, 0.0, &mut out);
    out
}

/// All shortest `s`-`t` paths for every `t`, by enumerating simple paths.
/// Exponential; only for tiny graphs with exact (integer) weights.
pub fn brute_shortest_paths(g: &Graph, s: NodeId) -> Vec<(f64, Vec<Vec<NodeId>>)> {
    let n = g.node_count();
    let mut best: Vec<(f64, Vec<Vec<NodeId>>)> = vec![(f64::INFINITY, Vec::new()); n];
    for (path, len) in simple_paths_from(g, s) {
        let t = *path.last().unwrap();
        if len < best[t].0 {
            best[t] = (len, vec![path]);
        } else if len == best[t].0 {
            best[t].1.push(path);
        }
    }
    for entry in &mut best {
        entry.1.sort();
    }
    best
}

pub struct BruteSssp {
    pub dist: Vec<f64>,
    pub sigma: Vec<u64>,
    pub preds: Vec<Vec<NodeId>>,
}

pub fn brute_sssp(g: &Graph, s: NodeId) -> BruteSssp {
    let all = brute_shortest_paths(g, s);
    let mut out = BruteSssp {
        dist: Vec::new(),
        sigma: Vec::new(),
        preds: Vec::new(),
    };
    for (d, paths) in all {
        out.dist.push(d);
        out.sigma.push(paths.len() as u64);
        let preds: BTreeSet<NodeId> = paths
            .iter()
            .filter(|p| p.len() >= 2)
            .map(|p| p[p.len() - 2])
            .collect();
        out.preds.push(preds.into_iter().collect());
    }
    out
}

/// Normalized betweenness from full shortest-path enumeration.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut bc = vec![0.0; n];
    if n < 3 {
        return bc;
    }
    for s in 0..n {
        let all = brute_shortest_paths(g, s);
        for (t, (_, paths)) in all.iter().enumerate() {
            if t == s {
                continue;
            }
            let total = paths.len() as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                bc[v] += through / total;
            }
        }
    }
    let norm = (n * (n - 1)) as f64;
    bc.iter().map(|x| x / norm).collect()
}

/// Hop distances between all pairs via plain BFS.
pub fn all_pairs_hops(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for nb in g.neighbors(v) {
                    if d[nb.id()] == usize::MAX {
                        d[nb.id()] = d[v] + 1;
                        q.push_back(nb.id());
                    }
                }
            }
            d
        })
        .collect()
}

/// Exact vertex diameter of a connected unweighted graph: hop diameter + 1.
pub fn exact_vd(g: &Graph) -> usize {
    all_pairs_hops(g)
        .iter()
        .flat_map(|row| row.iter().copied())
        .max()
        .unwrap_or(0)
        + 1
}

/// Pearson chi-square statistic and whether it passes at significance `alpha`.
pub fn chi_square(observed: &[u64], expected_p: &[f64], alpha: f64) -> (f64, f64, bool) {
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected_p)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    let critical = ChiSquared::new(df).unwrap().inverse_cdf(1.0 - alpha);
    (stat, critical, stat <= critical)
}
