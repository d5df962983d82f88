//! Seeded graph generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GraphError, PortGraph};

const GNP_MAX_ATTEMPTS: usize = 10_000;
const PORT_SHUFFLE_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Model {
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// `n` nodes in total: one centre and `n - 1` leaves.
    Star { n: usize },
    Petersen,
    /// K4 minus one edge.
    Diamond,
    Gnp { n: usize, p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortOrder {
    /// Ports follow ascending neighbour index.
    #[default]
    Ascending,
    /// Ports at every node are permuted by a shuffle derived from the seed.
    Shuffled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub model: Model,
    pub seed: u64,
    pub ports: PortOrder,
}

impl GeneratorConfig {
    pub fn new(model: Model) -> Self {
        GeneratorConfig {
            model,
            seed: 0,
            ports: PortOrder::Ascending,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn shuffled(mut self) -> Self {
        self.ports = PortOrder::Shuffled;
        self
    }
}

pub fn generate(config: &GeneratorConfig) -> Result<PortGraph, GraphError> {
    let graph = match config.model {
        Model::Complete { n } => {
            require(n >= 2, "complete graph needs n >= 2")?;
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            PortGraph::from_edges(n, &edges)?
        }
        Model::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
            PortGraph::from_edges(n, &edges)?
        }
        Model::Path { n } => {
            require(n >= 2, "path needs n >= 2")?;
            let edges: Vec<_> = (0..n - 1).map(|u| (u, u + 1)).collect();
            PortGraph::from_edges(n, &edges)?
        }
        Model::Star { n } => {
            require(n >= 2, "star needs n >= 2")?;
            let edges: Vec<_> = (1..n).map(|leaf| (0, leaf)).collect();
            PortGraph::from_edges(n, &edges)?
        }
        Model::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            PortGraph::from_edges(10, &edges)?
        }
        Model::Diamond => PortGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])?,
        Model::Gnp { n, p } => gnp(n, p, config.seed)?,
    };
    Ok(match config.ports {
        PortOrder::Ascending => graph,
        PortOrder::Shuffled => graph.shuffle_ports(config.seed ^ PORT_SHUFFLE_SALT),
    })
}

fn gnp(n: usize, p: f64, seed: u64) -> Result<PortGraph, GraphError> {
    require(n >= 2, "gnp needs n >= 2")?;
    require(p > 0.0 && p <= 1.0, "gnp needs 0 < p <= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GNP_MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        match PortGraph::from_edges(n, &edges) {
            Ok(g) => return Ok(g),
            Err(GraphError::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GraphError::InvalidGenerator(format!(
        "gnp({n}, {p}) stayed disconnected after {GNP_MAX_ATTEMPTS} attempts"
    )))
}

fn require(ok: bool, message: &str) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::InvalidGenerator(message.to_string()))
    }
}

/// Compact text form used on the command line: `complete:4`, `cycle:5`,
/// `path:4`, `star:5`, `petersen`, `diamond`, `gnp:16:0.3:seed=7`.
/// A trailing `:shuffle` selects shuffled ports.
impl FromStr for GeneratorConfig {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| GraphError::InvalidGenerator(format!("{s:?}: {msg}"));
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let mut positional = Vec::new();
        let mut seed = 0;
        let mut ports = PortOrder::Ascending;
        for part in parts {
            if let Some(v) = part.strip_prefix("seed=") {
                seed = v.parse().map_err(|_| bad("seed must be an unsigned integer"))?;
            } else if part == "shuffle" {
                ports = PortOrder::Shuffled;
            } else {
                positional.push(part);
            }
        }
        let size = |i: usize| -> Result<usize, GraphError> {
            positional
                .get(i)
                .ok_or_else(|| bad("missing size"))?
                .parse()
                .map_err(|_| bad("size must be an unsigned integer"))
        };
        let model = match name {
            "complete" => Model::Complete { n: size(0)? },
            "cycle" => Model::Cycle { n: size(0)? },
            "path" => Model::Path { n: size(0)? },
            "star" => Model::Star { n: size(0)? },
            "petersen" => Model::Petersen,
            "diamond" => Model::Diamond,
            "gnp" => {
                let p = positional
                    .get(1)
                    .ok_or_else(|| bad("missing edge probability"))?
                    .parse()
                    .map_err(|_| bad("edge probability must be a number"))?;
                Model::Gnp { n: size(0)?, p }
            }
            _ => return Err(bad("unknown model")),
        };
        let expected = match model {
            Model::Petersen | Model::Diamond => 0,
            Model::Gnp { .. } => 2,
            _ => 1,
        };
        if positional.len() != expected {
            return Err(bad("wrong number of parameters"));
        }
        Ok(GeneratorConfig { model, seed, ports })
    }
}

impl fmt::Display for GeneratorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::Complete { n } => write!(f, "complete:{n}")?,
            Model::Cycle { n } => write!(f, "cycle:{n}")?,
            Model::Path { n } => write!(f, "path:{n}")?,
            Model::Star { n } => write!(f, "star:{n}")?,
            Model::Petersen => write!(f, "petersen")?,
            Model::Diamond => write!(f, "diamond")?,
            Model::Gnp { n, p } => write!(f, "gnp:{n}:{p}")?,
        }
        if self.seed != 0 {
            write!(f, ":seed={}", self.seed)?;
        }
        if self.ports == PortOrder::Shuffled {
            write!(f, ":shuffle")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(spec: &str) -> (usize, usize, usize, usize) {
        let g = generate(&spec.parse().unwrap()).unwrap();
        (g.node_count(), g.edge_count(), g.max_degree(), g.diameter())
    }

    #[test]
    fn named_families() {
        assert_eq!(stats("complete:4"), (4, 6, 3, 1));
        assert_eq!(stats("cycle:5"), (5, 5, 2, 2));
        assert_eq!(stats("path:4"), (4, 3, 2, 3));
        assert_eq!(stats("star:5"), (5, 4, 4, 2));
        assert_eq!(stats("diamond"), (4, 5, 3, 2));
    }

    #[test]
    fn petersen_is_cubic_with_diameter_two() {
        let g = generate(&GeneratorConfig::new(Model::Petersen)).unwrap();
        assert_eq!((g.node_count(), g.edge_count(), g.diameter()), (10, 15, 2));
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn gnp_is_seeded_and_connected() {
        let a = generate(&"gnp:16:0.3:seed=7".parse().unwrap()).unwrap();
        let b = generate(&"gnp:16:0.3:seed=7".parse().unwrap()).unwrap();
        let c = generate(&"gnp:16:0.3:seed=8".parse().unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn shuffle_keeps_topology() {
        let plain = generate(&"gnp:12:0.4:seed=3".parse().unwrap()).unwrap();
        let shuffled = generate(&"gnp:12:0.4:seed=3:shuffle".parse().unwrap()).unwrap();
        assert_eq!(plain.edges(), shuffled.edges());
        assert_ne!(plain, shuffled);
    }

    #[test]
    fn invalid_parameters() {
        for spec in ["gnp:8:0", "gnp:8:1.5", "cycle:2", "complete:1", "torus:3", "complete", "petersen:3"] {
            let parsed: Result<GeneratorConfig, _> = spec.parse();
            let result = parsed.and_then(|c| generate(&c));
            assert!(
                matches!(result, Err(GraphError::InvalidGenerator(_))),
                "{spec} should be rejected"
            );
        }
    }

    #[test]
    fn display_round_trips() {
        for spec in ["complete:4", "gnp:16:0.3:seed=7", "petersen:shuffle", "star:5:seed=2:shuffle"] {
            let c: GeneratorConfig = spec.parse().unwrap();
            assert_eq!(c.to_string(), spec);
        }
    }
}
