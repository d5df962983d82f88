use std::collections::{BTreeMap, BTreeSet};

use super::{oracle_triangles, NodeEdge, TrussLabeling};
use crate::graph::PortGraph;

/// Largest `h` such that at least `h` values are `>= h`.
pub fn h_index(values: &[u32]) -> u32 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .enumerate()
        .take_while(|&(i, &v)| v as usize > i)
        .count() as u32
}

fn norm(a: usize, b: usize) -> NodeEdge {
    (a.min(b), a.max(b))
}

/// Sequential peeling: repeatedly remove the minimum-support edge
/// (lexicographically smallest on ties) and label it with the peeling level.
///
/// The level is `max(level, support + 2)`; supports may fall below the
/// current level once neighbouring edges are gone, but an edge removed at
/// that point still belongs to the level's truss.
pub fn oracle_truss(graph: &PortGraph) -> TrussLabeling {
    let mut support: BTreeMap<NodeEdge, u64> = oracle_triangles(graph).per_edge;
    let mut queue: BTreeSet<(u64, NodeEdge)> = support.iter().map(|(&e, &s)| (s, e)).collect();
    let mut removed: BTreeSet<NodeEdge> = BTreeSet::new();
    let mut per_edge = BTreeMap::new();
    let mut level = 2u32;

    while let Some((s, (u, v))) = queue.pop_first() {
        level = level.max(s as u32 + 2);
        per_edge.insert((u, v), level);
        removed.insert((u, v));
        for &w in graph.neighbors(u) {
            if w == v || !graph.has_edge(v, w) {
                continue;
            }
            let (a, b) = (norm(u, w), norm(v, w));
            if removed.contains(&a) || removed.contains(&b) {
                continue;
            }
            for e in [a, b] {
                let s = support.get_mut(&e).expect("edge present");
                queue.remove(&(*s, e));
                *s -= 1;
                queue.insert((*s, e));
            }
        }
    }
    TrussLabeling { per_edge }
}

/// Synchronous h-index fixed point: every sweep recomputes
/// `h(e) = min(h(e), h_index({min(h(e'), h(e'')) : triangle (e, e', e'')}))`
/// from the previous sweep's values; trussness is `h + 2`.
pub fn oracle_truss_hindex(graph: &PortGraph) -> TrussLabeling {
    let edges = graph.edges();
    let index: BTreeMap<NodeEdge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let triangles: Vec<Vec<(usize, usize)>> = edges
        .iter()
        .map(|&(u, v)| {
            graph
                .neighbors(u)
                .iter()
                .filter(|&&w| w != v && graph.has_edge(v, w))
                .map(|&w| (index[&norm(u, w)], index[&norm(v, w)]))
                .collect()
        })
        .collect();
    let mut h: Vec<u32> = triangles.iter().map(|t| t.len() as u32).collect();
    loop {
        let next: Vec<u32> = triangles
            .iter()
            .enumerate()
            .map(|(i, tri)| {
                let l: Vec<u32> = tri.iter().map(|&(a, b)| h[a].min(h[b])).collect();
                h[i].min(h_index(&l))
            })
            .collect();
        if next == h {
            break;
        }
        h = next;
    }
    TrussLabeling {
        per_edge: edges.into_iter().zip(h).map(|(e, h)| (e, h + 2)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorConfig, Model};

    fn graph(model: Model) -> PortGraph {
        generate(&GeneratorConfig::new(model)).unwrap()
    }

    #[test]
    fn h_index_examples() {
        assert_eq!(h_index(&[]), 0);
        assert_eq!(h_index(&[1, 1, 1]), 1);
        assert_eq!(h_index(&[5, 4, 3, 2, 1]), 3);
        assert_eq!(h_index(&[0, 0]), 0);
        assert_eq!(h_index(&[10, 10]), 2);
    }

    #[test]
    fn spot_labelings() {
        for (model, t) in [
            (Model::Complete { n: 4 }, 4),
            (Model::Cycle { n: 5 }, 2),
            (Model::Diamond, 3),
            (Model::Complete { n: 6 }, 6),
        ] {
            let g = graph(model);
            for labels in [oracle_truss(&g), oracle_truss_hindex(&g)] {
                assert_eq!(labels.per_edge.len(), g.edge_count());
                assert!(labels.per_edge.values().all(|&x| x == t), "{model:?}");
            }
        }
    }

    #[test]
    fn k4_with_pendant_triangle() {
        // K4 on {0,1,2,3} plus triangle {3,4,5}.
        let g = PortGraph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        let labels = oracle_truss(&g);
        assert_eq!(labels.per_edge[&(0, 1)], 4);
        assert_eq!(labels.per_edge[&(3, 4)], 3);
        assert_eq!(labels, oracle_truss_hindex(&g));
        assert_eq!(labels.k_truss(4).unwrap().len(), 6);
        assert!(labels.k_truss(5).unwrap().is_empty());
    }
}
