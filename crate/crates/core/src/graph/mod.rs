//! Anonymous port-labelled graphs.
//!
//! A [`PortGraph`] is simple, undirected and connected. Every node `v` numbers
//! its incident edges with ports `0..degree(v)`, and the two endpoints of an
//! edge number it independently. Node indices exist only for the simulator
//! and the oracles; agents never see them.

mod generate;
mod io;

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use generate::{generate, GeneratorConfig, Model, PortOrder};
pub use io::load_graph;

/// Errors raised while building, loading or generating a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: node index {node} out of range for n={n}")]
    IndexOutOfRange { line: usize, node: usize, n: usize },
    #[error("graph is disconnected ({reached} of {n} nodes reachable from node 0)")]
    Disconnected { reached: usize, n: usize },
    #[error("graph needs at least 2 nodes, got {0}")]
    TooSmall(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid port assignment at node {node}: {message}")]
    InvalidPorts { node: usize, message: String },
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
}

/// Far end of a port: the neighbouring node and the port number at that node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortTarget {
    pub node: usize,
    pub port: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortGraph {
    ports: Vec<Vec<PortTarget>>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PortGraph {
    /// Builds a graph whose ports follow ascending neighbour-index order.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 1;
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::IndexOutOfRange { line, node, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, node: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self::from_neighbor_order(adjacency)
    }

    /// Builds a graph where `order[v][p]` is the neighbour reached through
    /// port `p` of node `v`. Remote port numbers are derived from the same
    /// table.
    pub fn from_neighbor_order(order: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = order.len();
        if n < 2 {
            return Err(GraphError::TooSmall(n));
        }
        let mut ports = Vec::with_capacity(n);
        for (v, list) in order.iter().enumerate() {
            let mut row = Vec::with_capacity(list.len());
            for &u in list {
                if u >= n {
                    return Err(GraphError::InvalidPorts {
                        node: v,
                        message: format!("neighbour {u} out of range"),
                    });
                }
                if u == v {
                    return Err(GraphError::InvalidPorts {
                        node: v,
                        message: "self-loop".into(),
                    });
                }
                let Some(q) = order[u].iter().position(|&w| w == v) else {
                    return Err(GraphError::InvalidPorts {
                        node: v,
                        message: format!("edge to {u} is not listed at {u}"),
                    });
                };
                row.push(PortTarget { node: u, port: q });
            }
            let distinct: BTreeSet<_> = list.iter().collect();
            if distinct.len() != list.len() {
                return Err(GraphError::InvalidPorts {
                    node: v,
                    message: "parallel edges".into(),
                });
            }
            ports.push(row);
        }
        let mut adjacency: Vec<Vec<usize>> = order;
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let degree_sum: usize = adjacency.iter().map(Vec::len).sum();
        let graph = PortGraph {
            ports,
            adjacency,
            edge_count: degree_sum / 2,
        };
        let reached = graph.bfs(0).iter().filter(|d| d.is_some()).count();
        if reached != n {
            return Err(GraphError::Disconnected { reached, n });
        }
        Ok(graph)
    }

    pub fn node_count(&self) -> usize {
        self.ports.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.ports[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.ports.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Where port `p` at node `v` leads, or `None` for an invalid port.
    pub fn port_target(&self, v: usize, p: usize) -> Option<PortTarget> {
        self.ports.get(v)?.get(p).copied()
    }

    /// Neighbours of `v` in port order.
    pub fn ports(&self, v: usize) -> &[PortTarget] {
        &self.ports[v]
    }

    /// Neighbours of `v` in ascending index order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Exact diameter via BFS from every node.
    pub fn diameter(&self) -> usize {
        (0..self.node_count())
            .map(|s| self.bfs(s).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Same topology, with each node's ports independently permuted by a
    /// seeded shuffle.
    pub fn shuffle_ports(&self, seed: u64) -> PortGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = (0..self.node_count())
            .map(|v| {
                let mut row: Vec<usize> = self.ports[v].iter().map(|t| t.node).collect();
                row.shuffle(&mut rng);
                row
            })
            .collect();
        PortGraph::from_neighbor_order(order).expect("permuting ports keeps a valid graph")
    }

    /// Renames node `v` to `mapping[v]`, keeping every port number.
    ///
    /// # Panics
    /// If `mapping` is not a permutation of `0..n`.
    pub fn relabel(&self, mapping: &[usize]) -> PortGraph {
        let n = self.node_count();
        assert_eq!(mapping.len(), n, "mapping length must equal node count");
        let mut order = vec![Vec::new(); n];
        for v in 0..n {
            order[mapping[v]] = self.ports[v].iter().map(|t| mapping[t.node]).collect();
        }
        PortGraph::from_neighbor_order(order).expect("relabelling must be a permutation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> PortGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        PortGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn port_symmetry_holds() {
        let g = k(5).shuffle_ports(3);
        for v in 0..g.node_count() {
            for (p, t) in g.ports(v).iter().enumerate() {
                let back = g.port_target(t.node, t.port).unwrap();
                assert_eq!(back, PortTarget { node: v, port: p });
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            PortGraph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            PortGraph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop { node: 0, .. })
        ));
        assert!(matches!(
            PortGraph::from_edges(3, &[(0, 3)]),
            Err(GraphError::IndexOutOfRange { node: 3, .. })
        ));
        assert!(matches!(
            PortGraph::from_edges(4, &[(0, 1), (2, 3)]),
            Err(GraphError::Disconnected { reached: 2, n: 4 })
        ));
        assert_eq!(PortGraph::from_edges(1, &[]), Err(GraphError::TooSmall(1)));
    }

    #[test]
    fn path_diameter() {
        let g = PortGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.diameter(), 3);
        assert_eq!(k(4).diameter(), 1);
    }

    #[test]
    fn relabel_preserves_ports() {
        let g = k(4).shuffle_ports(9);
        let mapping = [2, 0, 3, 1];
        let h = g.relabel(&mapping);
        for v in 0..4 {
            for p in 0..g.degree(v) {
                let t = g.port_target(v, p).unwrap();
                let u = h.port_target(mapping[v], p).unwrap();
                assert_eq!(u.node, mapping[t.node]);
                assert_eq!(u.port, t.port);
            }
        }
    }
}
