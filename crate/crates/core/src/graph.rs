//! Undirected simple graphs with insertion-only dynamics.
//!
//! Nodes are dense `0..n` ids. Unweighted graphs report weight `1.0` on every
//! edge, so the shortest-path code can treat both kinds uniformly.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// One adjacency entry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub node: u32,
    pub weight: f64,
}

impl Neighbor {
    #[inline]
    pub fn id(&self) -> NodeId {
        self.node as NodeId
    }
}

/// An edge insertion, or a weight decrease when the edge already exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeUpdate {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

impl EdgeUpdate {
    /// Unit-weight insertion.
    pub fn insert(u: NodeId, v: NodeId) -> Self {
        Self { u, v, weight: 1.0 }
    }

    pub fn weighted(u: NodeId, v: NodeId, weight: f64) -> Self {
        Self { u, v, weight }
    }
}

/// What [`Graph::insert_edge`] did.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Applied {
    Inserted,
    Decreased { previous: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<Neighbor>>,
    weighted: bool,
    m: usize,
}

impl Graph {
    pub fn new(n: usize, weighted: bool) -> Self {
        assert!(n <= u32::MAX as usize, "node count exceeds u32 ids");
        Self {
            adj: vec![Vec::new(); n],
            weighted,
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges and self-loops are rejected.
    pub fn from_edges<I>(n: usize, weighted: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut g = Self::new(n, weighted);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Convenience for unweighted graphs.
    pub fn from_pairs<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_edges(n, false, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[Neighbor] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        if u >= self.node_count() || v >= self.node_count() {
            return None;
        }
        // scan the shorter list
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a]
            .iter()
            .find(|nb| nb.id() == b)
            .map(|nb| nb.weight)
    }

    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.weight(u, v).is_some()
    }

    /// Iterates every edge once as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbs)| {
            nbs.iter()
                .filter(move |nb| nb.id() > u)
                .map(move |nb| (u, nb.id(), nb.weight))
        })
    }

    fn check_endpoints(&self, u: NodeId, v: NodeId) -> Result<()> {
        let n = self.node_count();
        for node in [u, v] {
            if node >= n {
                return Err(Error::NodeOutOfRange { node, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    fn check_weight(&self, w: f64) -> Result<()> {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidWeight(w));
        }
        if !self.weighted && w != 1.0 {
            return Err(Error::InvalidArgument(format!(
                "unweighted graph accepts only unit weights, got {w}"
            )));
        }
        Ok(())
    }

    /// Adds a fresh edge. Used for construction; an existing edge is an error.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: f64) -> Result<()> {
        self.check_endpoints(u, v)?;
        self.check_weight(w)?;
        if self.contains_edge(u, v) {
            return Err(Error::DuplicateEdge { u, v });
        }
        self.push_edge(u, v, w);
        Ok(())
    }

    fn push_edge(&mut self, u: NodeId, v: NodeId, w: f64) {
        self.adj[u].push(Neighbor {
            node: v as u32,
            weight: w,
        });
        self.adj[v].push(Neighbor {
            node: u as u32,
            weight: w,
        });
        self.m += 1;
    }

    fn set_weight(&mut self, u: NodeId, v: NodeId, w: f64) {
        for (a, b) in [(u, v), (v, u)] {
            if let Some(nb) = self.adj[a].iter_mut().find(|nb| nb.id() == b) {
                nb.weight = w;
            }
        }
    }

    /// Validates an update without applying it. Returns the current weight of the
    /// edge, if present.
    pub fn check_update(&self, upd: &EdgeUpdate) -> Result<Option<f64>> {
        self.check_endpoints(upd.u, upd.v)?;
        self.check_weight(upd.weight)?;
        let current = self.weight(upd.u, upd.v);
        if let Some(cur) = current {
            if upd.weight >= cur {
                return Err(Error::UnsupportedDynamic {
                    u: upd.u,
                    v: upd.v,
                    current: cur,
                    requested: upd.weight,
                });
            }
        }
        Ok(current)
    }

    /// Inserts an absent edge or decreases the weight of an existing one.
    pub fn insert_edge(&mut self, upd: &EdgeUpdate) -> Result<Applied> {
        match self.check_update(upd)? {
            None => {
                self.push_edge(upd.u, upd.v, upd.weight);
                Ok(Applied::Inserted)
            }
            Some(previous) => {
                self.set_weight(upd.u, upd.v, upd.weight);
                Ok(Applied::Decreased { previous })
            }
        }
    }

    /// Validates a batch against the current graph and normalizes it: duplicate
    /// edges are merged keeping the smallest weight, and updates that would leave
    /// an existing edge's weight unchanged are dropped. Weight increases are
    /// rejected. Nothing is mutated.
    pub fn normalize_batch(&self, batch: &[EdgeUpdate]) -> Result<Vec<EdgeUpdate>> {
        let mut merged: Vec<EdgeUpdate> = Vec::with_capacity(batch.len());
        let mut index: HashMap<(NodeId, NodeId), usize> = HashMap::with_capacity(batch.len());
        for upd in batch {
            self.check_endpoints(upd.u, upd.v)?;
            self.check_weight(upd.weight)?;
            let key = (upd.u.min(upd.v), upd.u.max(upd.v));
            match index.get(&key) {
                Some(&i) => merged[i].weight = merged[i].weight.min(upd.weight),
                None => {
                    index.insert(key, merged.len());
                    merged.push(*upd);
                }
            }
        }
        let mut out = Vec::with_capacity(merged.len());
        for upd in merged {
            match self.weight(upd.u, upd.v) {
                Some(cur) if upd.weight == cur => {}
                Some(cur) if upd.weight > cur => {
                    return Err(Error::UnsupportedDynamic {
                        u: upd.u,
                        v: upd.v,
                        current: cur,
                        requested: upd.weight,
                    })
                }
                _ => out.push(upd),
            }
        }
        Ok(out)
    }

    /// Normalizes `batch` and applies all of it. Returns the effective updates.
    /// On error the graph is left untouched.
    pub fn apply_batch(&mut self, batch: &[EdgeUpdate]) -> Result<Vec<EdgeUpdate>> {
        let effective = self.normalize_batch(batch)?;
        for upd in &effective {
            self.insert_edge(upd)?;
        }
        Ok(effective)
    }

    /// Removes an edge and returns its weight. Only the dynamics simulation uses this;
    /// the incremental algorithms never see a deletion.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<f64> {
        self.check_endpoints(u, v)?;
        let pos = self.adj[u]
            .iter()
            .position(|nb| nb.id() == v)
            .ok_or(Error::MissingEdge { u, v })?;
        let w = self.adj[u].remove(pos).weight;
        if let Some(pos) = self.adj[v].iter().position(|nb| nb.id() == u) {
            self.adj[v].remove(pos);
        }
        self.m -= 1;
        Ok(w)
    }

    /// BFS reachability labels; `None` for nodes not reached from `from`.
    fn reach(&self, from: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            for nb in &self.adj[v] {
                if !seen[nb.id()] {
                    seen[nb.id()] = true;
                    queue.push_back(nb.id());
                }
            }
        }
        seen
    }

    /// First node not reachable from `from`, if any.
    pub fn first_unreachable(&self, from: NodeId) -> Option<NodeId> {
        if self.node_count() == 0 {
            return None;
        }
        self.reach(from).iter().position(|&r| !r)
    }

    /// True iff the graph has a single connected component. The empty graph counts
    /// as connected.
    pub fn is_connected(&self) -> bool {
        self.first_unreachable(0).is_none()
    }

    pub(crate) fn ensure_connected(&self) -> Result<()> {
        match self.first_unreachable(0) {
            None => Ok(()),
            Some(unreachable) => Err(Error::Disconnected {
                from: 0,
                unreachable,
            }),
        }
    }

    /// Connected component labels, numbered in order of their smallest node.
    pub fn components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for nb in &self.adj[v] {
                    if label[nb.id()] == usize::MAX {
                        label[nb.id()] = next;
                        queue.push_back(nb.id());
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Extracts the largest connected component (ties: the one with the smallest
    /// node). Returns the relabelled graph and the original id of each new node.
    pub fn largest_component(&self) -> (Graph, Vec<NodeId>) {
        let label = self.components();
        let count = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        let Some(best) = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))) else {
            return (Graph::new(0, self.weighted), Vec::new());
        };
        let old_ids: Vec<NodeId> = (0..self.node_count()).filter(|&v| label[v] == best).collect();
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(old_ids.len(), self.weighted);
        for (u, v, w) in self.edges() {
            if label[u] == best {
                g.push_edge(new_id[u], new_id[v], w);
            }
        }
        (g, old_ids)
    }
}
