mod common;

use agent_triangles::engine::{AgentId, DiameterMode, IdAssignment, ProtocolConfig};
use agent_triangles::graph::{generate, load_graph, GeneratorConfig, Model, PortGraph};
use agent_triangles::oracles::{oracle_centrality, oracle_triangles, oracle_truss};
use agent_triangles::protocols::{
    count_triangles, decompose_truss, discover_neighbors, k_truss_extract, triangle_centrality, ProtocolError,
};
use proptest::prelude::*;

use common::connected_graph;

fn random_ids(g: &PortGraph, seed: u64) -> Vec<AgentId> {
    IdAssignment::Random { seed, exponent: 2 }.assign(g.node_count())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discovery_finds_every_neighbour_in_one_schedule(g in connected_graph(10), seed in any::<u64>()) {
        let ids = random_ids(&g, seed);
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
        let run = discover_neighbors(&g, &ids, &cfg).unwrap();
        prop_assert_eq!(run.metrics.rounds, cfg.schedule_rounds());
        for v in 0..g.node_count() {
            for (p, target) in g.ports(v).iter().enumerate() {
                prop_assert_eq!(run.output[v].at_port(p), Some(ids[target.node]));
                prop_assert_eq!(run.output[target.node].at_port(target.port), Some(ids[v]));
            }
        }
    }

    #[test]
    fn triangle_counts_match_under_both_diameter_modes(g in connected_graph(9), seed in any::<u64>()) {
        let ids = random_ids(&g, seed);
        for mode in [DiameterMode::Exact, DiameterMode::NodeCount] {
            let cfg = ProtocolConfig::for_graph(&g, &ids, mode);
            let run = count_triangles(&g, &ids, &cfg).unwrap();
            prop_assert_eq!(run.output.to_tally(&ids), oracle_triangles(&g));
        }
    }

    #[test]
    fn truss_matches_peeling(g in connected_graph(9), seed in any::<u64>()) {
        let ids = random_ids(&g, seed);
        let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::NodeCount);
        let run = decompose_truss(&g, &ids, &cfg).unwrap();
        prop_assert_eq!(run.output.node_labels(&ids), oracle_truss(&g));
        prop_assert!(run.output.iterations as usize <= g.edge_count());
    }

    #[test]
    fn slack_parameters_do_not_change_output(g in connected_graph(8), extra_degree in 0usize..3, extra_bits in 0u32..3) {
        let ids = IdAssignment::Sequential.assign(g.node_count());
        let tight = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
        let loose = ProtocolConfig {
            max_degree: tight.max_degree + extra_degree,
            id_bits: tight.id_bits + extra_bits,
            ..tight
        };
        let a = count_triangles(&g, &ids, &tight).unwrap();
        let b = count_triangles(&g, &ids, &loose).unwrap();
        prop_assert_eq!(a.output, b.output);
        prop_assert_eq!(b.metrics.rounds, (tight.diameter_param as u64 + 2) * loose.schedule_rounds());
    }
}

#[test]
fn k3_tables_list_the_other_two() {
    let g = load_graph("0 1\n1 2\n0 2").unwrap();
    let ids = IdAssignment::Sequential.assign(3);
    let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
    let run = discover_neighbors(&g, &ids, &cfg).unwrap();
    for (v, table) in run.output.iter().enumerate() {
        let mut want: Vec<AgentId> = ids.iter().copied().filter(|&id| id != ids[v]).collect();
        want.sort();
        assert_eq!(table.sorted_ids(), want);
    }
}

#[test]
fn centrality_with_known_total_needs_three_schedules() {
    let g = generate(&GeneratorConfig::new(Model::Gnp { n: 12, p: 0.4 }).with_seed(9)).unwrap();
    let ids = random_ids(&g, 2);
    let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
    let total = oracle_triangles(&g).total;
    let run = triangle_centrality(&g, &ids, &cfg, Some(total)).unwrap();
    assert_eq!(run.metrics.rounds, 3 * cfg.schedule_rounds());
    assert_eq!(run.output.per_agent, oracle_centrality(&g).per_node);
}

#[test]
fn k_truss_extraction() {
    let g = generate(&GeneratorConfig::new(Model::Complete { n: 4 })).unwrap();
    let ids = IdAssignment::Sequential.assign(4);
    let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
    let labels = decompose_truss(&g, &ids, &cfg).unwrap().output.labels;
    assert_eq!(k_truss_extract(&labels, 4).unwrap().len(), 6);
    assert!(k_truss_extract(&labels, 5).unwrap().is_empty());
    assert!(k_truss_extract(&labels, 1).is_err());

    let diamond = generate(&GeneratorConfig::new(Model::Diamond)).unwrap();
    let cfg = ProtocolConfig::for_graph(&diamond, &ids, DiameterMode::Exact);
    let labels = decompose_truss(&diamond, &ids, &cfg).unwrap().output.labels;
    assert_eq!(k_truss_extract(&labels, 3).unwrap().len(), 5);
}

#[test]
fn k4_truss_needs_no_updates() {
    let g = generate(&GeneratorConfig::new(Model::Complete { n: 4 })).unwrap();
    let ids = IdAssignment::Sequential.assign(4);
    let cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
    let run = decompose_truss(&g, &ids, &cfg).unwrap();
    assert_eq!(run.output.iterations, 1);
    let s = cfg.schedule_rounds();
    assert_eq!(run.metrics.rounds, 2 * s + s * (2 + cfg.diameter_param as u64));
}

#[test]
fn narrow_id_window_is_rejected() {
    let g = load_graph("0 1\n1 2").unwrap();
    let ids = vec![AgentId(1), AgentId(2), AgentId(300)];
    let mut cfg = ProtocolConfig::for_graph(&g, &ids, DiameterMode::Exact);
    cfg.id_bits = 4;
    assert_eq!(
        count_triangles(&g, &ids, &cfg).unwrap_err(),
        ProtocolError::IdTooLong {
            id: AgentId(300),
            window: 4
        }
    );
}
