use serde::{Deserialize, Serialize};

use super::ids::{id_window, AgentId};
use super::IterationOrder;
use crate::graph::PortGraph;
use crate::oracles::LccFormula;

/// Which value agents use for the number of flooding repetitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterMode {
    /// The graph's diameter `D`.
    #[default]
    Exact,
    /// The node count `n`, an upper bound on `D` for agents that do not
    /// know the diameter.
    NodeCount,
}

/// Global knowledge handed to every agent, plus simulator options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    /// Known upper bound on the maximum degree `Δ`.
    pub max_degree: usize,
    /// Width `L` of the ID bit window.
    pub id_bits: u32,
    /// Number of flooding repetitions (`D` or `n`).
    pub diameter_param: usize,
    pub lcc: LccFormula,
    pub order: IterationOrder,
    pub trace: bool,
}

impl ProtocolConfig {
    /// Tight parameters for `graph` and `ids`: `Δ` is the true maximum
    /// degree and `L` the bit length of the largest ID.
    pub fn for_graph(graph: &PortGraph, ids: &[AgentId], mode: DiameterMode) -> Self {
        ProtocolConfig {
            max_degree: graph.max_degree(),
            id_bits: id_window(ids),
            diameter_param: match mode {
                DiameterMode::Exact => graph.diameter(),
                DiameterMode::NodeCount => graph.node_count(),
            },
            lcc: LccFormula::Halved,
            order: IterationOrder::Forward,
            trace: false,
        }
    }

    /// Rounds in one meeting schedule: `2 Δ L`.
    pub fn schedule_rounds(&self) -> u64 {
        2 * self.max_degree as u64 * u64::from(self.id_bits)
    }
}
