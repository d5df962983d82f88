//! Agent protocols for triangle analytics.
//!
//! Every protocol starts from a dispersed configuration (one agent per node)
//! and is built from meeting schedules of `2ΔL` rounds:
//!
//! | protocol     | schedules                                         |
//! |--------------|---------------------------------------------------|
//! | `neighbors`  | discover                                          |
//! | `triangles`  | discover, count, flood × D                        |
//! | `truss`      | discover, count, then per iteration collect, notify, vote × D |
//! | `centrality` | discover, count, flood × D (skipped if `T(G)` is known), share |
//! | `lcc`        | discover, count                                   |
//!
//! `D` is [`ProtocolConfig::diameter_param`], the diameter or the node count.

mod agent;
mod driver;
mod schedule;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{AgentId, Behavior, ProtocolConfig, SimFault, TraceRecord};
use crate::graph::PortGraph;
use crate::oracles::{NodeEdge, Rational, TriangleTally, TrussError, TrussLabeling};
use agent::Program;
use driver::{drive, Finished};

pub use driver::{PhaseMetrics, RoundMetrics};
pub use tables::{
    agent_edge, AgentEdge, CentralityWorkspace, EdgeVars, FloodTable, NeighborTable, Notice, TrussEdgeState,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("{ids} ids supplied for {nodes} nodes")]
    IdCount { ids: usize, nodes: usize },
    #[error("agent id {0} is used twice")]
    DuplicateId(AgentId),
    #[error("agent id {id} needs more than the {window}-bit id window")]
    IdTooLong { id: AgentId, window: u32 },
    #[error("declared max degree {declared} is below the actual max degree {actual}")]
    DegreeBound { declared: usize, actual: usize },
    #[error("flooding needs at least one repetition")]
    ZeroDiameterParam,
    #[error(transparent)]
    Sim(#[from] SimFault),
    #[error("round {round}: agent {agent}: {message}")]
    Agent {
        agent: AgentId,
        round: u64,
        message: String,
    },
    #[error("truss iterations did not converge after {iterations} iterations on {edges} edges")]
    NonConvergence { iterations: u32, edges: usize },
    #[error("agents disagree: {0}")]
    Inconsistent(String),
}

/// Protocol names accepted by [`run_protocol`] and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Neighbors,
    Triangles,
    Truss,
    Centrality,
    Lcc,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::Neighbors,
        Protocol::Triangles,
        Protocol::Truss,
        Protocol::Centrality,
        Protocol::Lcc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Neighbors => "neighbors",
            Protocol::Triangles => "triangles",
            Protocol::Truss => "truss",
            Protocol::Centrality => "centrality",
            Protocol::Lcc => "lcc",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown protocol {s:?}; expected one of neighbors, triangles, truss, centrality, lcc"))
    }
}

/// A protocol's result together with what it cost.
#[derive(Debug, Clone)]
pub struct ProtocolRun<T> {
    pub output: T,
    pub metrics: RoundMetrics,
    /// Moves of every agent, present when [`ProtocolConfig::trace`] is set.
    pub trace: Option<Vec<TraceRecord>>,
}

impl<T> ProtocolRun<T> {
    fn from_finished(finished: &mut Finished, output: T) -> Self {
        ProtocolRun {
            output,
            metrics: finished.metrics.clone(),
            trace: finished.trace.take(),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> ProtocolRun<U> {
        ProtocolRun {
            output: f(self.output),
            metrics: self.metrics,
            trace: self.trace,
        }
    }
}

/// Output of the triangle-counting protocol. Per-agent vectors are in node
/// order, which only the simulator knows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCounts {
    pub tables: Vec<NeighborTable>,
    pub edge_vars: Vec<EdgeVars>,
    /// `T(v)` held by each agent.
    pub per_agent: Vec<u64>,
    /// Support of every edge, agreed on by both endpoints.
    pub per_edge: BTreeMap<AgentEdge, u64>,
    /// `T(G)`, agreed on by every agent.
    pub total: u64,
}

impl TriangleCounts {
    /// Re-keys the counts by node index for comparison with the oracle.
    pub fn to_tally(&self, ids: &[AgentId]) -> TriangleTally {
        let nodes = node_of(ids);
        TriangleTally {
            per_node: self.per_agent.clone(),
            per_edge: self
                .per_edge
                .iter()
                .map(|(&(a, b), &s)| (node_edge(&nodes, a, b), s))
                .collect(),
            total: self.total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussOutcome {
    /// Trussness of every edge, as held by the edge's owner.
    pub labels: TrussLabeling<AgentEdge>,
    pub iterations: u32,
    /// Whether every edge's `h` was non-increasing at every schedule boundary.
    pub h_monotone: bool,
}

impl TrussOutcome {
    pub fn node_labels(&self, ids: &[AgentId]) -> TrussLabeling {
        let nodes = node_of(ids);
        self.labels.map_keys(|&(a, b)| node_edge(&nodes, a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralityOutcome {
    pub per_agent: Vec<Rational>,
    /// False when `T(G) = 0`, in which case every value is 0.
    pub defined: bool,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LccOutcome {
    pub per_agent: Vec<Rational>,
}

/// Output of [`run_protocol`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProtocolOutput {
    Neighbors(Vec<NeighborTable>),
    Triangles(TriangleCounts),
    Truss(TrussOutcome),
    Centrality(CentralityOutcome),
    Lcc(LccOutcome),
}

fn node_of(ids: &[AgentId]) -> BTreeMap<AgentId, usize> {
    ids.iter().enumerate().map(|(v, &id)| (id, v)).collect()
}

fn node_edge(nodes: &BTreeMap<AgentId, usize>, a: AgentId, b: AgentId) -> NodeEdge {
    let (u, v) = (nodes[&a], nodes[&b]);
    (u.min(v), u.max(v))
}

/// Agent `ids[v]` starts on node `v`; each learns the ID behind every port of
/// its home node.
pub fn discover_neighbors(
    graph: &PortGraph,
    ids: &[AgentId],
    config: &ProtocolConfig,
) -> Result<ProtocolRun<Vec<NeighborTable>>, ProtocolError> {
    let mut finished = drive(graph, ids, config, Program::Neighbors)?;
    let tables = finished.agents.iter().map(|a| a.table().clone()).collect();
    Ok(ProtocolRun::from_finished(&mut finished, tables))
}

/// Per-node, per-edge and total triangle counts.
pub fn count_triangles(
    graph: &PortGraph,
    ids: &[AgentId],
    config: &ProtocolConfig,
) -> Result<ProtocolRun<TriangleCounts>, ProtocolError> {
    let mut finished = drive(graph, ids, config, Program::Triangles)?;
    let agents = &finished.agents;

    let mut per_edge = BTreeMap::new();
    for agent in agents {
        let vars = agent.edge_vars().cloned().unwrap_or_default();
        for (port, id) in agent.table().entries() {
            let support = vars.by_port[port].unwrap_or(0);
            let edge = agent_edge(agent.id(), id);
            if let Some(other) = per_edge.insert(edge, support) {
                if other != support {
                    return Err(ProtocolError::Inconsistent(format!(
                        "endpoints of {edge:?} report support {other} and {support}"
                    )));
                }
            }
        }
    }
    let totals: Vec<u64> = agents.iter().map(|a| a.total().unwrap_or(0)).collect();
    if totals.windows(2).any(|w| w[0] != w[1]) {
        return Err(ProtocolError::Inconsistent(format!("triangle totals {totals:?}")));
    }
    let output = TriangleCounts {
        tables: agents.iter().map(|a| a.table().clone()).collect(),
        edge_vars: agents.iter().map(|a| a.edge_vars().cloned().unwrap_or_default()).collect(),
        per_agent: agents
            .iter()
            .map(|a| a.edge_vars().map_or(0, |v| v.node_triangles))
            .collect(),
        per_edge,
        total: totals.first().copied().unwrap_or(0),
    };
    Ok(ProtocolRun::from_finished(&mut finished, output))
}

/// Trussness of every edge via distributed h-index iteration.
pub fn decompose_truss(
    graph: &PortGraph,
    ids: &[AgentId],
    config: &ProtocolConfig,
) -> Result<ProtocolRun<TrussOutcome>, ProtocolError> {
    let mut finished = drive(graph, ids, config, Program::Truss)?;
    let per_edge = finished
        .agents
        .iter()
        .flat_map(|a| a.owned_heights())
        .map(|(edge, h)| (edge, h + 2))
        .collect();
    let output = TrussOutcome {
        labels: TrussLabeling { per_edge },
        iterations: finished.agents.iter().map(|a| a.iterations()).max().unwrap_or(0),
        h_monotone: finished.h_monotone,
    };
    Ok(ProtocolRun::from_finished(&mut finished, output))
}

/// Edges of the `k`-truss.
pub fn k_truss_extract(
    labels: &TrussLabeling<AgentEdge>,
    k: u32,
) -> Result<std::collections::BTreeSet<AgentEdge>, TrussError> {
    labels.k_truss(k)
}

/// Triangle centrality of every node. With `known_total` the flooding
/// schedules are skipped and the given `T(G)` is used.
pub fn triangle_centrality(
    graph: &PortGraph,
    ids: &[AgentId],
    config: &ProtocolConfig,
    known_total: Option<u64>,
) -> Result<ProtocolRun<CentralityOutcome>, ProtocolError> {
    let mut finished = drive(graph, ids, config, Program::Centrality { known_total })?;
    let total = finished.agents.first().and_then(|a| a.total()).unwrap_or(0);
    let per_agent = finished
        .agents
        .iter()
        .map(|a| a.centrality().and_then(|ws| ws.value).unwrap_or_default())
        .collect();
    let output = CentralityOutcome {
        per_agent,
        defined: total > 0,
        total,
    };
    Ok(ProtocolRun::from_finished(&mut finished, output))
}

/// Local clustering coefficient of every node, using [`ProtocolConfig::lcc`].
pub fn local_clustering(
    graph: &PortGraph,
    ids: &[AgentId],
    config: &ProtocolConfig,
) -> Result<ProtocolRun<LccOutcome>, ProtocolError> {
    let mut finished = drive(graph, ids, config, Program::Lcc)?;
    let per_agent = finished.agents.iter().map(|a| a.lcc().unwrap_or_default()).collect();
    Ok(ProtocolRun::from_finished(&mut finished, LccOutcome { per_agent }))
}

/// Runs `protocol` by name. Centrality floods for `T(G)`.
pub fn run_protocol(
    graph: &PortGraph,
    ids: &[AgentId],
    protocol: Protocol,
    config: &ProtocolConfig,
) -> Result<ProtocolRun<ProtocolOutput>, ProtocolError> {
    Ok(match protocol {
        Protocol::Neighbors => discover_neighbors(graph, ids, config)?.map(ProtocolOutput::Neighbors),
        Protocol::Triangles => count_triangles(graph, ids, config)?.map(ProtocolOutput::Triangles),
        Protocol::Truss => decompose_truss(graph, ids, config)?.map(ProtocolOutput::Truss),
        Protocol::Centrality => triangle_centrality(graph, ids, config, None)?.map(ProtocolOutput::Centrality),
        Protocol::Lcc => local_clustering(graph, ids, config)?.map(ProtocolOutput::Lcc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{DiameterMode, IdAssignment};
    use crate::graph::{generate, load_graph, GeneratorConfig, Model};
    use crate::oracles::{oracle_centrality, oracle_lcc, oracle_triangles, oracle_truss, LccFormula};

    fn setup(model: Model) -> (PortGraph, Vec<AgentId>, ProtocolConfig) {
        let g = generate(&GeneratorConfig::new(model)).unwrap();
        let ids = IdAssignment::Sequential.assign(g.node_count());
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
        (g, ids, cfg)
    }

    #[test]
    fn k2_discovery_takes_one_schedule() {
        let g = load_graph("0 1").unwrap();
        let ids = vec![AgentId(1), AgentId(2)];
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
        let run = discover_neighbors(&g, &ids, &cfg).unwrap();
        assert_eq!(run.metrics.rounds, 4);
        assert_eq!(run.output[0].at_port(0), Some(AgentId(2)));
        assert_eq!(run.output[1].at_port(0), Some(AgentId(1)));
    }

    #[test]
    fn star_center_learns_all_leaves() {
        let g = load_graph("0 1\n0 2\n0 3").unwrap();
        let ids = vec![AgentId(7), AgentId(1), AgentId(2), AgentId(4)];
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
        let run = discover_neighbors(&g, &ids, &cfg).unwrap();
        assert_eq!(run.output[0].sorted_ids(), vec![AgentId(1), AgentId(2), AgentId(4)]);
        assert!(run.output[1..].iter().all(|t| t.sorted_ids() == vec![AgentId(7)]));
    }

    #[test]
    fn k4_counts() {
        let (g, ids, cfg) = setup(Model::Complete { n: 4 });
        let run = count_triangles(&g, &ids, &cfg).unwrap();
        assert_eq!(run.output.total, 4);
        assert_eq!(run.output.per_agent, vec![3; 4]);
        assert!(run.output.edge_vars.iter().all(|v| v.local_sum == 6));
        assert_eq!(run.output.to_tally(&ids), oracle_triangles(&g));
        let s = run.metrics.schedule_rounds;
        assert_eq!(run.metrics.rounds, 3 * s);
    }

    #[test]
    fn path_has_no_triangles() {
        let (g, ids, cfg) = setup(Model::Path { n: 3 });
        assert_eq!(count_triangles(&g, &ids, &cfg).unwrap().output.total, 0);
    }

    #[test]
    fn truss_matches_oracle_on_small_graphs() {
        for model in [
            Model::Complete { n: 4 },
            Model::Cycle { n: 5 },
            Model::Diamond,
            Model::Petersen,
            Model::Complete { n: 6 },
        ] {
            let (g, ids, cfg) = setup(model);
            let run = decompose_truss(&g, &ids, &cfg).unwrap();
            assert_eq!(run.output.node_labels(&ids), oracle_truss(&g), "{model:?}");
            assert!(run.output.h_monotone);
        }
    }

    #[test]
    fn truss_with_node_count_flooding() {
        let g = load_graph("0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n4 5").unwrap();
        let ids = IdAssignment::Random { seed: 3, exponent: 2 }.assign(g.node_count());
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::NodeCount);
        let run = decompose_truss(&g, &ids, &cfg).unwrap();
        assert_eq!(run.output.node_labels(&ids), oracle_truss(&g));
    }

    #[test]
    fn c5_truss_single_iteration() {
        let (g, ids, cfg) = setup(Model::Cycle { n: 5 });
        let run = decompose_truss(&g, &ids, &cfg).unwrap();
        assert_eq!(run.output.iterations, 1);
        assert!(run.output.labels.per_edge.values().all(|&t| t == 2));
    }

    #[test]
    fn centrality_with_and_without_known_total() {
        let g = load_graph("0 1\n0 2\n1 2\n2 3\n3 4").unwrap();
        let ids = IdAssignment::Sequential.assign(5);
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
        let oracle = oracle_centrality(&g);
        let flooded = triangle_centrality(&g, &ids, &cfg, None).unwrap();
        let known = triangle_centrality(&g, &ids, &cfg, Some(1)).unwrap();
        assert_eq!(flooded.output.per_agent, oracle.per_node);
        assert_eq!(known.output.per_agent, oracle.per_node);
        assert!(known.metrics.rounds < flooded.metrics.rounds);
    }

    #[test]
    fn petersen_centrality_undefined() {
        let (g, ids, cfg) = setup(Model::Petersen);
        let run = triangle_centrality(&g, &ids, &cfg, None).unwrap();
        assert!(!run.output.defined);
        assert!(run.output.per_agent.iter().all(|v| *v == Rational::from_integer(0)));
    }

    #[test]
    fn lcc_follows_formula_flag() {
        let (g, ids, mut cfg) = setup(Model::Complete { n: 3 });
        assert_eq!(local_clustering(&g, &ids, &cfg).unwrap().output.per_agent, oracle_lcc(&g, LccFormula::Halved).per_node);
        cfg.lcc = LccFormula::Standard;
        let standard = local_clustering(&g, &ids, &cfg).unwrap().output;
        assert!(standard.per_agent.iter().all(|v| *v == Rational::from_integer(1)));
    }

    #[test]
    fn rejects_bad_config() {
        let (g, ids, cfg) = setup(Model::Complete { n: 4 });
        let narrow = ProtocolConfig { id_bits: 2, ..cfg };
        assert!(matches!(count_triangles(&g, &ids, &narrow), Err(ProtocolError::IdTooLong { .. })));
        let low = ProtocolConfig { max_degree: 2, ..cfg };
        assert!(matches!(count_triangles(&g, &ids, &low), Err(ProtocolError::DegreeBound { .. })));
        let dup = vec![AgentId(1); 4];
        assert!(matches!(count_triangles(&g, &dup, &cfg), Err(ProtocolError::DuplicateId(_))));
        assert!(matches!(
            count_triangles(&g, &ids[..3], &cfg),
            Err(ProtocolError::IdCount { .. })
        ));
    }

    #[test]
    fn protocol_names_round_trip() {
        for p in Protocol::ALL {
            assert_eq!(p.name().parse::<Protocol>(), Ok(p));
        }
        assert!("bogus".parse::<Protocol>().is_err());
    }
}
