//! The round engine on its own: a token-passing behaviour on a cycle,
//! showing snapshot exchange and the move trace.

use agent_triangles::engine::{
    trace_to_ndjson, AgentId, Behavior, CostModel, MemoryUsage, Move, RoundContext, World,
};
use agent_triangles::graph::{generate, GeneratorConfig, Model};

/// Agent 1 carries a token around the ring, always leaving by the port it did
/// not enter through. Whoever shares a node with it takes a copy.
struct Relay {
    id: AgentId,
    token: bool,
}

impl Behavior for Relay {
    type Exchange = bool;

    fn id(&self) -> AgentId {
        self.id
    }

    fn exchange(&self, _: &RoundContext) -> bool {
        self.token
    }

    fn step(&mut self, ctx: &RoundContext, peers: &[bool]) -> Move {
        self.token |= peers.iter().any(|&t| t);
        if self.id == AgentId(1) {
            Move::Port(ctx.entry_port.map_or(0, |p| 1 - p))
        } else {
            Move::Stay
        }
    }

    fn memory(&self, cost: &CostModel) -> MemoryUsage {
        let mut meter = cost.meter();
        meter.ids(1).flags(1);
        MemoryUsage {
            bits: meter.bits(),
            ..MemoryUsage::default()
        }
    }
}

fn main() {
    let ring = generate(&GeneratorConfig::new(Model::Cycle { n: 6 })).expect("cycle");
    let agents = (1..=6).map(|i| Relay { id: AgentId(i), token: i == 1 }).collect();
    let mut world = World::dispersed(&ring, agents, CostModel::new(3, 2))
        .expect("one agent per node")
        .with_trace(true);
    while world.agents().any(|a| !a.token) {
        world.run_round().expect("valid ports");
    }
    println!("every agent holds the token after {} rounds", world.round());
    print!("{}", trace_to_ndjson(&world.take_trace().unwrap_or_default()));
}
