//! Mobile-agent triangle analytics on anonymous port-labelled graphs.
//!
//! `n` agents with distinct IDs start one per node of a graph whose nodes
//! carry no labels. In synchronous rounds they meet co-located agents,
//! compute, and move along one port. From these meetings they count
//! triangles, decompose the graph into k-trusses and compute triangle
//! centrality and local clustering coefficients.
//!
//! - [`graph`]: port-labelled graphs, edge-list IO and generators.
//! - [`oracles`]: brute-force reference values.
//! - [`engine`]: the round simulator and memory metering.
//! - [`protocols`]: the agent algorithms.
//! - [`report`]: run reports comparing protocols to oracles.
//!
//! ```
//! use agent_triangles::engine::{DiameterMode, IdAssignment, ProtocolConfig};
//! use agent_triangles::graph::load_graph;
//! use agent_triangles::protocols::count_triangles;
//!
//! let g = load_graph("0 1\n1 2\n0 2\n2 3").unwrap();
//! let ids = IdAssignment::Sequential.assign(g.node_count());
//! let config = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
//! let run = count_triangles(&g, &ids, &config).unwrap();
//! assert_eq!(run.output.total, 1);
//! assert_eq!(run.output.per_agent, vec![1, 1, 1, 0]);
//! ```

pub mod engine;
pub mod graph;
pub mod oracles;
pub mod protocols;
pub mod report;
