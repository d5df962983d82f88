//! Edge-list text format.
//!
//! ```text
//! n 4
//! 0 1
//! 0 2
//! 1 2
//! 2 3
//! # ports 2: 3,0,1
//! ```
//!
//! `n <count>` is optional; without it the node count is one more than the
//! largest index. Lines starting with `#` are comments, except
//! `# ports v: a,b,...` which fixes the neighbour reached through each port
//! of `v`. Nodes without a ports line get ascending neighbour order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{GraphError, PortGraph};

pub fn load_graph(text: &str) -> Result<PortGraph, GraphError> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut port_lines: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(spec) = comment.trim().strip_prefix("ports") {
                let (node, order) = parse_ports_line(spec, line)?;
                if port_lines.insert(node, (line, order)).is_some() {
                    return Err(parse_err(line, format!("second ports line for node {node}")));
                }
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields.as_slice() {
            ["n", count] => {
                if declared_n.is_some() {
                    return Err(parse_err(line, "repeated `n` header"));
                }
                declared_n = Some(parse_index(count, line)?);
            }
            [u, v] => edges.push((line, parse_index(u, line)?, parse_index(v, line)?)),
            _ => return Err(parse_err(line, format!("expected `u v`, got {trimmed:?}"))),
        }
    }

    let n = match declared_n {
        Some(n) => n,
        None => edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };

    let mut seen = BTreeSet::new();
    let mut adjacency = vec![Vec::new(); n];
    for &(line, u, v) in &edges {
        for node in [u, v] {
            if node >= n {
                return Err(GraphError::IndexOutOfRange { line, node, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, node: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    for (node, (line, order)) in port_lines {
        if node >= n {
            return Err(GraphError::IndexOutOfRange { line, node, n });
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != adjacency[node] {
            return Err(GraphError::InvalidPorts {
                node,
                message: format!("line {line}: ports do not list exactly the neighbours"),
            });
        }
        adjacency[node] = order;
    }

    PortGraph::from_neighbor_order(adjacency)
}

fn parse_ports_line(spec: &str, line: usize) -> Result<(usize, Vec<usize>), GraphError> {
    let (node, list) = spec
        .split_once(':')
        .ok_or_else(|| parse_err(line, "ports line needs `v: a,b,...`"))?;
    let node = parse_index(node.trim(), line)?;
    let list = list.trim();
    let order = if list.is_empty() {
        Vec::new()
    } else {
        list.split(',')
            .map(|s| parse_index(s.trim(), line))
            .collect::<Result<_, _>>()?
    };
    Ok((node, order))
}

fn parse_index(s: &str, line: usize) -> Result<usize, GraphError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("not a node index: {s:?}")))
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

impl PortGraph {
    /// Serialises to the edge-list format, including a ports line for every
    /// node so the exact port numbering survives a reload.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.node_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        for v in 0..self.node_count() {
            let order: Vec<String> = self.ports(v).iter().map(|t| t.node.to_string()).collect();
            let _ = writeln!(out, "# ports {v}: {}", order.join(","));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_document() {
        let g = load_graph("0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.diameter(), 1);
    }

    #[test]
    fn single_edge() {
        let g = load_graph("0 1").unwrap();
        assert_eq!((g.node_count(), g.edge_count(), g.max_degree(), g.diameter()), (2, 1, 1, 1));
    }

    #[test]
    fn distinct_diagnostics() {
        assert!(matches!(load_graph("0 1\n0 1"), Err(GraphError::DuplicateEdge { line: 2, .. })));
        assert!(matches!(load_graph("0 1\n1 1"), Err(GraphError::SelfLoop { line: 2, node: 1 })));
        assert!(matches!(
            load_graph("n 2\n0 1\n1 2"),
            Err(GraphError::IndexOutOfRange { line: 3, node: 2, n: 2 })
        ));
        assert!(matches!(load_graph("0 1\n2 3"), Err(GraphError::Disconnected { .. })));
        assert!(matches!(load_graph("0 x"), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn ports_lines_are_honoured() {
        let g = load_graph("0 1\n0 2\n1 2\n# ports 0: 2,1\n").unwrap();
        assert_eq!(g.port_target(0, 0).unwrap().node, 2);
        assert_eq!(g.port_target(0, 1).unwrap().node, 1);
        assert_eq!(g.port_target(2, 0).unwrap().node, 0);
        assert!(load_graph("0 1\n0 2\n1 2\n# ports 0: 1\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = load_graph("# a triangle\n\nn 3\n0 1\n\n1 2 \n 2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }
}
