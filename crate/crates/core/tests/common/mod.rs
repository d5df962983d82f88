#![allow(dead_code)]

use agent_triangles::graph::PortGraph;
use proptest::prelude::*;

/// Connected graphs on 2..=max_n nodes: a random spanning tree plus random
/// extra edges, with ports shuffled by a random seed.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = PortGraph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let extra = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
            (Just(n), parents, extra, 0.0..0.9f64, any::<u64>())
        })
        .prop_map(|(n, parents, extra, density, seed)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    let tree_edge = edges.contains(&(u, v));
                    let keep = extra[k] && (k as f64 / extra.len() as f64) < density + 0.1;
                    if keep && !tree_edge {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            PortGraph::from_edges(n, &edges)
                .expect("tree plus edges is connected")
                .shuffle_ports(seed)
        })
}
