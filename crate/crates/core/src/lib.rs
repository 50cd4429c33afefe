//! Approximate betweenness centrality, kept up to date under edge insertions
//! and weight decreases.
//!
//! The static estimator samples `r` shortest paths between uniformly drawn node
//! pairs; `r` comes from a vertex-diameter bound and guarantees every score is
//! within `epsilon` of the exact value with probability `1 - delta`. The dynamic
//! state ([`DynamicBc`]) stores the shortest-path dag of every sample, repairs
//! the dags after each batch of edge updates, and redraws only those paths
//! whose pair's set of shortest paths changed.
//!
//! ```
//! use bcinc::{generate::dorogovtsev_mendes, DynamicBc, EdgeUpdate};
//!
//! let g = dorogovtsev_mendes(200, false, 1).unwrap();
//! let mut bc = DynamicBc::new(g, 0.1, 0.1, 7).unwrap();
//! bc.update_batch(&[EdgeUpdate::insert(0, 150)]).unwrap();
//! let top = bc.ranking()[0];
//! assert!(bc.scores().score(top) > 0.0);
//! ```

pub mod brandes;
pub mod count;
pub mod dynamic;
pub mod error;
pub mod eval;
pub mod generate;
pub mod graph;
pub mod io;
pub mod rk;
pub mod sssp;
pub mod sssp_inc;

pub use brandes::brandes_exact;
pub use count::PathCount;
pub use dynamic::{BatchReport, DynamicBc, DynamicConfig, Mode};
pub use error::{Error, Result};
pub use graph::{EdgeUpdate, Graph, NodeId};
pub use rk::{
    compute_sample_size, estimate_vd, estimate_vd_from, rk_estimate, rk_initialize,
    sample_node_pair, sample_shortest_path, SamplePool, SamplingParams, ScoreVector,
};
pub use sssp::{compute_extended_sssp, SsspDag, TOLERANCE};
pub use sssp_inc::{
    update_sssp_unweighted, update_sssp_weighted, AffectedStats, UnweightedUpdater,
    WeightedUpdater,
};
