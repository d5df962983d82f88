//! Triangle centrality, with agents either flooding for `T(G)` or being told
//! it up front. Knowing the total skips the flooding schedules.

use agent_triangles::engine::{DiameterMode, IdAssignment, ProtocolConfig};
use agent_triangles::graph::{generate, GeneratorConfig, Model};
use agent_triangles::oracles::{oracle_centrality, to_f64};
use agent_triangles::protocols::triangle_centrality;

fn main() {
    let graph = generate(&GeneratorConfig::new(Model::Gnp { n: 12, p: 0.35 }).with_seed(3)).expect("connected");
    let ids = IdAssignment::Sequential.assign(graph.node_count());
    let config = ProtocolConfig::for_graph(&graph, &ids, DiameterMode::Exact);

    let flooded = triangle_centrality(&graph, &ids, &config, None).expect("runs");
    let total = flooded.output.total;
    let told = triangle_centrality(&graph, &ids, &config, Some(total)).expect("runs");

    println!("T(G) = {total}, defined = {}", flooded.output.defined);
    for (id, tc) in ids.iter().zip(&flooded.output.per_agent) {
        println!("  agent {id:>2}: TC = {tc} ({:.4})", to_f64(tc));
    }
    println!(
        "rounds: {} when flooding, {} with T(G) known",
        flooded.metrics.rounds, told.metrics.rounds
    );
    assert_eq!(flooded.output.per_agent, told.output.per_agent);
    assert_eq!(flooded.output.per_agent, oracle_centrality(&graph).per_node);
}
