//! Phase one on a star: the centre (ID 7) and leaves 1, 2, 4 learn who sits
//! behind each of their ports.
//!
//! ```text
//! cargo run --example neighbor_discovery
//! ```

use agent_triangles::engine::{AgentId, DiameterMode, ProtocolConfig};
use agent_triangles::graph::load_graph;
use agent_triangles::protocols::discover_neighbors;

fn main() {
    let graph = load_graph("0 1\n0 2\n0 3").expect("valid star");
    let ids = [7, 1, 2, 4].map(AgentId);
    let config = ProtocolConfig::for_graph(&graph, &ids, DiameterMode::Exact);

    let run = discover_neighbors(&graph, &ids, &config).expect("discovery runs");
    println!(
        "delta = {}, id bits = {}, rounds = {} (2 * delta * L = {})",
        config.max_degree,
        config.id_bits,
        run.metrics.rounds,
        config.schedule_rounds()
    );
    for (id, table) in ids.iter().zip(&run.output) {
        let ports: Vec<String> = table.entries().map(|(p, n)| format!("port {p} -> {n}")).collect();
        println!("agent {id}: {}", ports.join(", "));
    }
}
