use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::agent::{Agent, Program, Stage};
use super::tables::AgentEdge;
use super::ProtocolError;
use crate::engine::{AgentId, Behavior, CostModel, ProtocolConfig, TraceRecord, World};
use crate::graph::PortGraph;

/// Rounds and memory attributed to one protocol phase. Phases that repeat
/// (flooding, truss iterations) are merged under one name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMetrics {
    pub name: String,
    pub rounds: u64,
    /// Peak agent-visible bits excluding the flood table.
    pub peak_bits: u64,
    pub peak_flood_bits: u64,
    pub peak_flood_entries: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundMetrics {
    pub rounds: u64,
    /// Length `2ΔL` of one meeting schedule.
    pub schedule_rounds: u64,
    pub phases: Vec<PhaseMetrics>,
    /// Per agent, in node order.
    pub peak_bits: Vec<u64>,
    pub peak_flood_entries: Vec<u64>,
    pub moves: Vec<u64>,
}

impl RoundMetrics {
    pub fn phase(&self, name: &str) -> Option<&PhaseMetrics> {
        self.phases.iter().find(|p| p.name == name)
    }

    pub fn phase_rounds(&self, name: &str) -> u64 {
        self.phase(name).map_or(0, |p| p.rounds)
    }

    /// Largest per-agent peak over the named phases.
    pub fn peak_bits_in(&self, names: &[&str]) -> u64 {
        self.phases
            .iter()
            .filter(|p| names.contains(&p.name.as_str()))
            .map(|p| p.peak_bits)
            .max()
            .unwrap_or(0)
    }

    pub fn max_flood_entries(&self) -> u64 {
        self.peak_flood_entries.iter().copied().max().unwrap_or(0)
    }
}

pub(crate) struct Finished {
    pub agents: Vec<Agent>,
    pub metrics: RoundMetrics,
    pub trace: Option<Vec<TraceRecord>>,
    pub h_monotone: bool,
}

pub(crate) fn validate(graph: &PortGraph, ids: &[AgentId], config: &ProtocolConfig) -> Result<(), ProtocolError> {
    if ids.len() != graph.node_count() {
        return Err(ProtocolError::IdCount {
            ids: ids.len(),
            nodes: graph.node_count(),
        });
    }
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(ProtocolError::DuplicateId(w[0]));
    }
    if config.max_degree < graph.max_degree() {
        return Err(ProtocolError::DegreeBound {
            declared: config.max_degree,
            actual: graph.max_degree(),
        });
    }
    if let Some(&id) = ids.iter().find(|id| id.bit_length() > config.id_bits) {
        return Err(ProtocolError::IdTooLong {
            id,
            window: config.id_bits,
        });
    }
    if config.diameter_param == 0 {
        return Err(ProtocolError::ZeroDiameterParam);
    }
    Ok(())
}

pub(crate) fn drive(
    graph: &PortGraph,
    ids: &[AgentId],
    config: &ProtocolConfig,
    program: Program,
) -> Result<Finished, ProtocolError> {
    validate(graph, ids, config)?;
    let cost = CostModel::new(config.id_bits, config.max_degree);
    let agents = ids.iter().map(|&id| Agent::new(id, program, *config)).collect();
    let mut world = World::dispersed(graph, agents, cost)?
        .with_order(config.order)
        .with_trace(config.trace);
    let schedule = config.schedule_rounds();
    let iteration_cap = graph.edge_count() as u32 + 1;

    let mut phases: Vec<PhaseMetrics> = Vec::new();
    let mut heights: BTreeMap<AgentEdge, u32> = BTreeMap::new();
    let mut h_monotone = true;

    loop {
        let stage = common_stage(&world)?;
        if stage == Stage::Done {
            break;
        }
        world.run_round()?;

        if let Some((agent, message)) = world.agents().find_map(|a| a.fault().map(|f| (a.id(), f.to_owned()))) {
            return Err(ProtocolError::Agent {
                agent,
                round: world.round() - 1,
                message,
            });
        }

        let label = stage.label();
        let idx = match phases.iter().position(|p| p.name == label) {
            Some(i) => i,
            None => {
                phases.push(PhaseMetrics {
                    name: label.to_owned(),
                    rounds: 0,
                    peak_bits: 0,
                    peak_flood_bits: 0,
                    peak_flood_entries: 0,
                });
                phases.len() - 1
            }
        };
        let phase = &mut phases[idx];
        phase.rounds += 1;
        for usage in world.usage() {
            phase.peak_bits = phase.peak_bits.max(usage.bits);
            phase.peak_flood_bits = phase.peak_flood_bits.max(usage.flood_bits);
            phase.peak_flood_entries = phase.peak_flood_entries.max(usage.flood_entries);
        }

        if program == Program::Truss && world.round() % schedule == 0 {
            for agent in world.agents() {
                for (edge, h) in agent.owned_heights() {
                    if let Some(prev) = heights.insert(edge, h) {
                        h_monotone &= h <= prev;
                    }
                }
            }
            let iterations = world.agents().map(Agent::iterations).max().unwrap_or(0);
            if iterations > iteration_cap {
                return Err(ProtocolError::NonConvergence {
                    iterations: iterations - 1,
                    edges: graph.edge_count(),
                });
            }
        }
    }

    let peaks = world.peak_usage();
    let metrics = RoundMetrics {
        rounds: world.round(),
        schedule_rounds: schedule,
        phases,
        peak_bits: peaks.iter().map(|u| u.bits).collect(),
        peak_flood_entries: peaks.iter().map(|u| u.flood_entries).collect(),
        moves: world.moves(),
    };
    let trace = world.take_trace();
    Ok(Finished {
        agents: world.into_agents(),
        metrics,
        trace,
        h_monotone,
    })
}

fn common_stage(world: &World<'_, Agent>) -> Result<Stage, ProtocolError> {
    let mut agents = world.agents();
    let first = agents.next().map_or(Stage::Done, Agent::stage);
    for agent in agents {
        if agent.stage() != first {
            return Err(ProtocolError::Inconsistent(format!(
                "round {}: agent {} is in {} while others are in {}",
                world.round(),
                agent.id(),
                agent.stage().label(),
                first.label()
            )));
        }
    }
    Ok(first)
}
