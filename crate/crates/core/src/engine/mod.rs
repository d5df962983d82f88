//! Lockstep Communicate-Compute-Move simulation.
//!
//! Each call to [`World::run_round`] is one synchronous round:
//!
//! 1. **Communicate**: every agent that shares a node with another agent
//!    publishes an exchange snapshot. All snapshots are taken before any
//!    agent computes, so agents at the same node see mutually consistent
//!    round-start views.
//! 2. **Compute**: each agent's [`Behavior::step`] runs with its own store,
//!    the snapshots of its co-located peers and the port count of its
//!    current node. Nothing else is visible to it.
//! 3. **Move**: the returned [`Move`] is applied atomically, so agents
//!    crossing the same edge in opposite directions never meet mid-edge.

mod config;
mod ids;
mod memory;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::PortGraph;

pub use config::{DiameterMode, ProtocolConfig};
pub use ids::{bit_length, id_window, AgentId, IdAssignment};
pub use memory::{ceil_log2, CostModel, MemoryUsage, Meter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimFault {
    #[error("round {round}: agent {agent} requested port {port} at a node of degree {degree}")]
    PortOutOfRange {
        round: u64,
        agent: AgentId,
        port: usize,
        degree: usize,
    },
    #[error("initial configuration is not dispersed: {0}")]
    NotDispersed(String),
    #[error("duplicate agent id {0}")]
    DuplicateId(AgentId),
    #[error("{0}")]
    Protocol(String),
}

/// What an agent does at the end of its round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Stay,
    Port(usize),
}

/// Everything an agent can observe about its surroundings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundContext {
    /// Global clock, starting at 0.
    pub round: u64,
    /// Number of ports at the agent's current node.
    pub degree: usize,
    /// Port through which the agent entered its current node, if it moved
    /// in the previous round.
    pub entry_port: Option<usize>,
}

/// One agent's local program.
pub trait Behavior {
    /// State handed to co-located agents during Communicate.
    type Exchange: Clone;

    fn id(&self) -> AgentId;

    /// Called at the start of the round, before any agent computes, and only
    /// when at least one other agent shares the node.
    fn exchange(&self, ctx: &RoundContext) -> Self::Exchange;

    fn step(&mut self, ctx: &RoundContext, peers: &[Self::Exchange]) -> Move;

    fn memory(&self, cost: &CostModel) -> MemoryUsage;
}

/// Order in which the engine visits agents within a round. Outputs must not
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "seed")]
pub enum IterationOrder {
    #[default]
    Forward,
    Reverse,
    Shuffled(u64),
}

/// One line of the replay trace: an agent leaving through a port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: u64,
    pub agent: AgentId,
    pub port: usize,
}

/// Renders a trace as newline-delimited JSON.
pub fn trace_to_ndjson(trace: &[TraceRecord]) -> String {
    let mut out = String::new();
    for rec in trace {
        out.push_str(&serde_json::to_string(rec).expect("trace record serialises"));
        out.push('\n');
    }
    out
}

struct Slot<B> {
    agent: B,
    id: AgentId,
    home: usize,
    current: usize,
    entry_port: Option<usize>,
    moves: u64,
    usage: MemoryUsage,
    peak: MemoryUsage,
}

pub struct World<'g, B: Behavior> {
    graph: &'g PortGraph,
    slots: Vec<Slot<B>>,
    round: u64,
    cost: CostModel,
    order: IterationOrder,
    order_rng: ChaCha8Rng,
    trace: Option<Vec<TraceRecord>>,
}

impl<'g, B: Behavior> World<'g, B> {
    /// Places `agents[v]` on node `v`.
    pub fn dispersed(graph: &'g PortGraph, agents: Vec<B>, cost: CostModel) -> Result<Self, SimFault> {
        if agents.len() != graph.node_count() {
            return Err(SimFault::NotDispersed(format!(
                "{} agents for {} nodes",
                agents.len(),
                graph.node_count()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        let slots = agents
            .into_iter()
            .enumerate()
            .map(|(v, agent)| {
                let id = agent.id();
                if !seen.insert(id) {
                    return Err(SimFault::DuplicateId(id));
                }
                let usage = agent.memory(&cost);
                Ok(Slot {
                    agent,
                    id,
                    home: v,
                    current: v,
                    entry_port: None,
                    moves: 0,
                    usage,
                    peak: usage,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(World {
            graph,
            slots,
            round: 0,
            cost,
            order: IterationOrder::Forward,
            order_rng: ChaCha8Rng::seed_from_u64(0),
            trace: None,
        })
    }

    pub fn with_order(mut self, order: IterationOrder) -> Self {
        if let IterationOrder::Shuffled(seed) = order {
            self.order_rng = ChaCha8Rng::seed_from_u64(seed);
        }
        self.order = order;
        self
    }

    pub fn with_trace(mut self, enabled: bool) -> Self {
        self.trace = enabled.then(Vec::new);
        self
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn graph(&self) -> &PortGraph {
        self.graph
    }

    pub fn agents(&self) -> impl ExactSizeIterator<Item = &B> {
        self.slots.iter().map(|s| &s.agent)
    }

    pub fn into_agents(self) -> Vec<B> {
        self.slots.into_iter().map(|s| s.agent).collect()
    }

    /// Current node of every agent. Simulator-side only.
    pub fn positions(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.current).collect()
    }

    pub fn homes(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.home).collect()
    }

    pub fn at_home(&self) -> Vec<bool> {
        self.slots.iter().map(|s| s.current == s.home).collect()
    }

    pub fn moves(&self) -> Vec<u64> {
        self.slots.iter().map(|s| s.moves).collect()
    }

    /// Usage metered after the last Compute step.
    pub fn usage(&self) -> Vec<MemoryUsage> {
        self.slots.iter().map(|s| s.usage).collect()
    }

    /// Running maximum of metered usage per agent.
    pub fn peak_usage(&self) -> Vec<MemoryUsage> {
        self.slots.iter().map(|s| s.peak).collect()
    }

    pub fn take_trace(&mut self) -> Option<Vec<TraceRecord>> {
        self.trace.as_mut().map(std::mem::take)
    }

    pub fn run_round(&mut self) -> Result<(), SimFault> {
        let n = self.graph.node_count();

        let mut occupants: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, slot) in self.slots.iter().enumerate() {
            occupants[slot.current].push(i);
        }
        let contexts: Vec<RoundContext> = self
            .slots
            .iter()
            .map(|s| RoundContext {
                round: self.round,
                degree: self.graph.degree(s.current),
                entry_port: s.entry_port,
            })
            .collect();
        let snapshots: Vec<Option<B::Exchange>> = self
            .slots
            .iter()
            .zip(&contexts)
            .map(|(s, ctx)| (occupants[s.current].len() > 1).then(|| s.agent.exchange(ctx)))
            .collect();

        let mut visit: Vec<usize> = (0..self.slots.len()).collect();
        match self.order {
            IterationOrder::Forward => {}
            IterationOrder::Reverse => visit.reverse(),
            IterationOrder::Shuffled(_) => visit.shuffle(&mut self.order_rng),
        }

        let mut moves = vec![Move::Stay; self.slots.len()];
        let mut peers: Vec<B::Exchange> = Vec::new();
        for &i in &visit {
            let slot = &self.slots[i];
            peers.clear();
            peers.extend(
                occupants[slot.current]
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| snapshots[j].clone().expect("co-located agents publish snapshots")),
            );
            let slot = &mut self.slots[i];
            moves[i] = slot.agent.step(&contexts[i], &peers);
            slot.usage = slot.agent.memory(&self.cost);
            slot.peak = slot.peak.max(slot.usage);
        }

        for (i, mv) in moves.into_iter().enumerate() {
            let slot = &mut self.slots[i];
            match mv {
                Move::Stay => slot.entry_port = None,
                Move::Port(p) => {
                    let target = self.graph.port_target(slot.current, p).ok_or(SimFault::PortOutOfRange {
                        round: self.round,
                        agent: slot.id,
                        port: p,
                        degree: self.graph.degree(slot.current),
                    })?;
                    slot.current = target.node;
                    slot.entry_port = Some(target.port);
                    slot.moves += 1;
                    if let Some(trace) = &mut self.trace {
                        trace.push(TraceRecord {
                            round: self.round,
                            agent: slot.id,
                            port: p,
                        });
                    }
                }
            }
        }
        self.round += 1;
        Ok(())
    }
}
