//! Outputs do not depend on how ports are numbered, on the exact ID values
//! (only their order matters to the schedule, not the result), or on the
//! order in which the simulator visits agents.

use agent_triangles::engine::{AgentId, DiameterMode, IdAssignment, IterationOrder, ProtocolConfig};
use agent_triangles::graph::{generate, GeneratorConfig, Model, PortGraph};
use agent_triangles::oracles::TrussLabeling;
use agent_triangles::protocols::decompose_truss;

fn labels(graph: &PortGraph, ids: &[AgentId], order: IterationOrder) -> (TrussLabeling, u64) {
    let mut config = ProtocolConfig::for_graph(graph, ids, DiameterMode::Exact);
    config.order = order;
    let run = decompose_truss(graph, ids, &config).expect("converges");
    (run.output.node_labels(ids), run.metrics.rounds)
}

fn main() {
    let spec = GeneratorConfig::new(Model::Gnp { n: 14, p: 0.4 }).with_seed(11);
    let graph = generate(&spec).expect("connected");
    let shuffled = generate(&spec.shuffled()).expect("connected");
    println!("node 0 ports: {:?}", graph.neighbors(0));
    println!(
        "shuffled:     {:?}",
        shuffled.ports(0).iter().map(|t| t.node).collect::<Vec<_>>()
    );

    let ids = IdAssignment::Random { seed: 4, exponent: 2 }.assign(graph.node_count());
    let (base, rounds) = labels(&graph, &ids, IterationOrder::Forward);
    println!("baseline: t_max = {}, {rounds} rounds", base.t_max());

    let (ported, _) = labels(&shuffled, &ids, IterationOrder::Forward);
    println!("shuffled ports:   same labels = {}", ported == base);

    let stretched: Vec<AgentId> = ids.iter().map(|id| AgentId(id.0 * 4 + 1)).collect();
    let (renamed, more_rounds) = labels(&graph, &stretched, IterationOrder::Forward);
    println!("stretched IDs:    same labels = {} ({more_rounds} rounds)", renamed == base);

    let (reversed, _) = labels(&graph, &ids, IterationOrder::Reverse);
    let (random, _) = labels(&graph, &ids, IterationOrder::Shuffled(99));
    println!("iteration order:  same labels = {}", reversed == base && random == base);
}
