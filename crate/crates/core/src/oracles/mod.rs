//! Brute-force reference computations.
//!
//! These work directly on node indices with global knowledge of the graph
//! and share no code with the agent protocols, so the two can be compared.

mod centrality;
mod triangles;
mod truss;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use centrality::{oracle_centrality, oracle_lcc, CentralityVector, LccFormula, LccVector};
pub use triangles::{oracle_triangles, TriangleTally};
pub use truss::{h_index, oracle_truss, oracle_truss_hindex};

/// Exact non-negative rational.
pub type Rational = Ratio<u64>;

/// Undirected edge between node indices, stored with the smaller index first.
pub type NodeEdge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrussError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(u32),
}

/// Trussness of every edge. Generic over the edge key so the same type
/// carries oracle output (node-index edges) and protocol output (agent-ID
/// edges).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrussLabeling<K: Ord = NodeEdge> {
    pub per_edge: BTreeMap<K, u32>,
}

impl<K: Ord + Clone> TrussLabeling<K> {
    /// Largest trussness of any edge, or 2 for an edgeless labelling.
    pub fn t_max(&self) -> u32 {
        self.per_edge.values().copied().max().unwrap_or(2)
    }

    /// Edges of the k-truss: every edge whose trussness is at least `k`.
    /// Empty when `k > t_max`.
    pub fn k_truss(&self, k: u32) -> Result<BTreeSet<K>, TrussError> {
        if k < 2 {
            return Err(TrussError::KTooSmall(k));
        }
        Ok(self
            .per_edge
            .iter()
            .filter(|(_, &t)| t >= k)
            .map(|(e, _)| e.clone())
            .collect())
    }

    /// Re-keys the labelling, e.g. from agent-ID pairs to node pairs.
    pub fn map_keys<J: Ord>(&self, mut f: impl FnMut(&K) -> J) -> TrussLabeling<J> {
        TrussLabeling {
            per_edge: self.per_edge.iter().map(|(k, &t)| (f(k), t)).collect(),
        }
    }
}

/// Converts an exact rational to `f64` for reporting.
pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
