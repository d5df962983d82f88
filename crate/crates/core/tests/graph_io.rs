mod common;

use agent_triangles::graph::{generate, load_graph, GeneratorConfig, GraphError, Model};
use proptest::prelude::*;

use common::connected_graph;

proptest! {
    #[test]
    fn edge_list_round_trip_keeps_ports(g in connected_graph(14)) {
        let text = g.to_edge_list();
        prop_assert_eq!(load_graph(&text).unwrap(), g);
    }

    #[test]
    fn port_symmetry_and_handshake(g in connected_graph(14)) {
        let mut degree_sum = 0;
        for v in 0..g.node_count() {
            degree_sum += g.degree(v);
            for (p, target) in g.ports(v).iter().enumerate() {
                let back = g.port_target(target.node, target.port).unwrap();
                prop_assert_eq!((back.node, back.port), (v, p));
            }
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn generated_graphs_round_trip(n in 8usize..40, p in 0.15f64..0.9, seed in any::<u64>(), shuffle in any::<bool>()) {
        let mut cfg = GeneratorConfig::new(Model::Gnp { n, p }).with_seed(seed);
        if shuffle {
            cfg = cfg.shuffled();
        }
        let g = generate(&cfg).unwrap();
        prop_assert_eq!(&generate(&cfg).unwrap(), &g);
        prop_assert_eq!(load_graph(&g.to_edge_list()).unwrap(), g);
    }
}

#[test]
fn named_families() {
    let stats = |spec: &str| {
        let g = generate(&spec.parse().unwrap()).unwrap();
        (g.node_count(), g.edge_count(), g.max_degree(), g.diameter())
    };
    assert_eq!(stats("complete:4"), (4, 6, 3, 1));
    assert_eq!(stats("cycle:5"), (5, 5, 2, 2));
    assert_eq!(stats("path:4"), (4, 3, 2, 3));
    assert_eq!(stats("petersen"), (10, 15, 3, 2));
    assert_eq!(stats("diamond"), (4, 5, 3, 2));
}

#[test]
fn loader_diagnostics_are_distinct() {
    assert!(matches!(load_graph("0 1\n0 1"), Err(GraphError::DuplicateEdge { line: 2, .. })));
    assert!(matches!(load_graph("0 0"), Err(GraphError::SelfLoop { .. })));
    assert!(matches!(load_graph("n 3\n0 1\n1 5"), Err(GraphError::IndexOutOfRange { .. })));
    assert!(matches!(load_graph("0 1\n2 3"), Err(GraphError::Disconnected { .. })));
}
