use serde::{Deserialize, Serialize};

use super::{oracle_triangles, Rational};
use crate::graph::PortGraph;

/// Triangle centrality per node. When the graph has no triangles the
/// centrality is undefined: every value is 0 and `defined` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralityVector {
    pub per_node: Vec<Rational>,
    pub defined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LccVector {
    pub per_node: Vec<Rational>,
}

/// Which local clustering coefficient to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LccFormula {
    /// `T(v) / (d(v)(d(v) - 1))`.
    #[default]
    Halved,
    /// `2 T(v) / (d(v)(d(v) - 1))`.
    Standard,
}

impl LccFormula {
    /// Coefficient for a node with `triangles` triangles and degree `degree`.
    pub fn evaluate(self, triangles: u64, degree: usize) -> Rational {
        if degree <= 1 {
            return Rational::from_integer(0);
        }
        let d = degree as u64;
        let numerator = match self {
            LccFormula::Halved => triangles,
            LccFormula::Standard => 2 * triangles,
        };
        Rational::new(numerator, d * (d - 1))
    }
}

/// For each `v`, with `N_T(v)` the neighbours sharing a common neighbour
/// with `v`:
/// `TC(v) = (sum_{u in N_T(v) + v} T(u) / 3 + sum_{w in N(v) \ N_T(v)} T(w)) / T(G)`.
pub fn oracle_centrality(graph: &PortGraph) -> CentralityVector {
    let tally = oracle_triangles(graph);
    let n = graph.node_count();
    if tally.total == 0 {
        return CentralityVector {
            per_node: vec![Rational::from_integer(0); n],
            defined: false,
        };
    }
    let per_node = (0..n)
        .map(|v| {
            let mut closed = tally.per_node[v];
            let mut outside = 0;
            for &u in graph.neighbors(v) {
                let shares_neighbor = graph.neighbors(u).iter().any(|&w| graph.has_edge(v, w));
                if shares_neighbor {
                    closed += tally.per_node[u];
                } else {
                    outside += tally.per_node[u];
                }
            }
            Rational::new(closed + 3 * outside, 3 * tally.total)
        })
        .collect();
    CentralityVector {
        per_node,
        defined: true,
    }
}

pub fn oracle_lcc(graph: &PortGraph, formula: LccFormula) -> LccVector {
    let tally = oracle_triangles(graph);
    LccVector {
        per_node: (0..graph.node_count())
            .map(|v| formula.evaluate(tally.per_node[v], graph.degree(v)))
            .collect(),
    }
}
