//! Trussness of every edge and the resulting k-trusses, for a K4 with a
//! triangle hanging off one corner.

use agent_triangles::engine::{DiameterMode, IdAssignment, ProtocolConfig};
use agent_triangles::graph::load_graph;
use agent_triangles::oracles::oracle_truss;
use agent_triangles::protocols::{decompose_truss, k_truss_extract};

const GRAPH: &str = "\
# K4 on 0..3
0 1
0 2
0 3
1 2
1 3
2 3
# triangle 3-4-5
3 4
3 5
4 5
";

fn main() {
    let graph = load_graph(GRAPH).expect("valid edge list");
    let ids = IdAssignment::Sequential.assign(graph.node_count());
    let config = ProtocolConfig::for_graph(&graph, &ids, DiameterMode::Exact);

    let run = decompose_truss(&graph, &ids, &config).expect("converges");
    let labels = &run.output.labels;
    for ((a, b), k) in &labels.per_edge {
        println!("edge {a}-{b}: trussness {k}");
    }
    println!("iterations: {}, rounds: {}", run.output.iterations, run.metrics.rounds);

    for k in 2..=labels.t_max() + 1 {
        let edges = k_truss_extract(labels, k).expect("k >= 2");
        println!("{k}-truss: {} edges", edges.len());
    }
    assert_eq!(run.output.node_labels(&ids), oracle_truss(&graph));
}
