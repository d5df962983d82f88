//! Local clustering coefficients under both formulas.

use agent_triangles::engine::{DiameterMode, IdAssignment, ProtocolConfig};
use agent_triangles::graph::load_graph;
use agent_triangles::oracles::LccFormula;
use agent_triangles::protocols::local_clustering;

fn main() {
    // A diamond with a pendant node on vertex 3.
    let graph = load_graph("0 1\n0 2\n1 2\n1 3\n2 3\n3 4").expect("valid");
    let ids = IdAssignment::Sequential.assign(graph.node_count());
    let mut config = ProtocolConfig::for_graph(&graph, &ids, DiameterMode::Exact);

    for formula in [LccFormula::Halved, LccFormula::Standard] {
        config.lcc = formula;
        let run = local_clustering(&graph, &ids, &config).expect("runs");
        let values: Vec<String> = run.output.per_agent.iter().map(|v| v.to_string()).collect();
        println!("{formula:?}: [{}] in {} rounds", values.join(", "), run.metrics.rounds);
    }
}
