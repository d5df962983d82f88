use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::NodeEdge;
use crate::graph::PortGraph;

/// Per-node triangle counts `T(v)`, per-edge support and the total `T(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleTally {
    pub per_node: Vec<u64>,
    pub per_edge: BTreeMap<NodeEdge, u64>,
    pub total: u64,
}

/// Enumerates every triangle `u < v < w` once.
pub fn oracle_triangles(graph: &PortGraph) -> TriangleTally {
    let n = graph.node_count();
    let mut per_node = vec![0u64; n];
    let mut per_edge: BTreeMap<NodeEdge, u64> = graph.edges().into_iter().map(|e| (e, 0)).collect();
    let mut total = 0;
    for u in 0..n {
        for &v in graph.neighbors(u).iter().filter(|&&v| v > u) {
            for &w in graph.neighbors(v).iter().filter(|&&w| w > v) {
                if !graph.has_edge(u, w) {
                    continue;
                }
                total += 1;
                for x in [u, v, w] {
                    per_node[x] += 1;
                }
                for e in [(u, v), (u, w), (v, w)] {
                    *per_edge.get_mut(&e).expect("edge of a triangle") += 1;
                }
            }
        }
    }
    TriangleTally {
        per_node,
        per_edge,
        total,
    }
}
