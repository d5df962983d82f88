mod common;

use std::collections::BTreeMap;

use agent_triangles::graph::{generate, GeneratorConfig, Model};
use agent_triangles::oracles::{h_index, oracle_centrality, oracle_triangles, oracle_truss, oracle_truss_hindex, Rational};
use proptest::prelude::*;

use common::connected_graph;

proptest! {
    #[test]
    fn double_counting_identities(g in connected_graph(12)) {
        let t = oracle_triangles(&g);
        prop_assert_eq!(t.per_node.iter().sum::<u64>(), 3 * t.total);
        prop_assert_eq!(t.per_edge.values().sum::<u64>(), 3 * t.total);
        for (&(u, v), &s) in &t.per_edge {
            prop_assert!((s as usize) < g.degree(u).min(g.degree(v)));
        }
    }

    #[test]
    fn peeling_equals_h_index_fixed_point(g in connected_graph(12)) {
        prop_assert_eq!(oracle_truss(&g), oracle_truss_hindex(&g));
    }

    #[test]
    fn k_truss_has_enough_support(g in connected_graph(11)) {
        let labels = oracle_truss(&g);
        let t_max = labels.t_max();
        for k in 2..=t_max {
            let edges = labels.k_truss(k).unwrap();
            let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(u, v) in &edges {
                adjacency.entry(u).or_default().push(v);
                adjacency.entry(v).or_default().push(u);
            }
            for &(u, v) in &edges {
                let support = adjacency[&u].iter().filter(|w| adjacency[&v].contains(w)).count();
                prop_assert!(support as u32 + 2 >= k, "edge {:?} has support {} in the {}-truss", (u, v), support, k);
            }
        }
        prop_assert!(labels.k_truss(t_max + 1).unwrap().is_empty());
    }

    #[test]
    fn h_index_bounds(values in proptest::collection::vec(0u32..30, 0..25), extra in 0u32..30) {
        let h = h_index(&values);
        prop_assert!(h as usize <= values.len());
        prop_assert!(h <= values.iter().copied().max().unwrap_or(0));
        let mut more = values.clone();
        more.push(extra);
        prop_assert!(h_index(&more) >= h);
    }

    #[test]
    fn centrality_is_a_fraction(g in connected_graph(12)) {
        let tc = oracle_centrality(&g);
        for v in &tc.per_node {
            prop_assert!(*v <= Rational::from_integer(1));
        }
    }
}

#[test]
fn no_outside_term_when_every_neighbour_is_in_a_triangle() {
    // In K5 every neighbour shares a common neighbour, so TC reduces to the
    // closed-neighbourhood term: 5 * 6 / (3 * 10) = 1.
    let g = generate(&GeneratorConfig::new(Model::Complete { n: 5 })).unwrap();
    let tc = oracle_centrality(&g);
    assert!(tc.per_node.iter().all(|v| *v == Rational::from_integer(1)));
}

#[test]
fn pendant_neighbour_contributes_outside_term() {
    // Triangle 0-1-2 with a pendant 3 on node 2: T = [1, 1, 1, 0].
    // Node 3's only neighbour is outside any triangle with it: (0 + 3*1) / 3.
    let g = agent_triangles::graph::load_graph("0 1\n0 2\n1 2\n2 3").unwrap();
    let tc = oracle_centrality(&g);
    assert_eq!(tc.per_node[3], Rational::from_integer(1));
    assert_eq!(tc.per_node[2], Rational::from_integer(1));
}
