//! Run reports: protocol output next to oracle output, with deltas, metrics
//! and a verdict.
//!
//! Reports serialise to JSON. Maps are ordered, per-node keys are agent IDs
//! and per-edge keys are `"u-v"` with agent IDs `u < v`. Identical
//! [`RunConfig`]s produce byte-identical reports.

mod sweep;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{AgentId, DiameterMode, IdAssignment, ProtocolConfig, TraceRecord};
use crate::graph::{generate, load_graph, GeneratorConfig, GraphError, PortGraph};
use crate::oracles::{
    oracle_centrality, oracle_lcc, oracle_triangles, oracle_truss, to_f64, LccFormula, Rational, TrussLabeling,
};
use crate::protocols::{run_protocol, Protocol, ProtocolError, ProtocolOutput, RoundMetrics};

pub use sweep::{sweep, SweepFailure, SweepReport, SweepSpec};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Config(String),
    #[error("simulation failed: {0}")]
    Protocol(#[from] ProtocolError),
}

impl ReportError {
    /// Process exit status: 1 for simulation faults, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Protocol(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GraphSource {
    File { path: PathBuf },
    Generated { spec: String },
}

impl GraphSource {
    pub fn load(&self) -> Result<PortGraph, ReportError> {
        match self {
            GraphSource::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
                    path: path.clone(),
                    source,
                })?;
                Ok(load_graph(&text)?)
            }
            GraphSource::Generated { spec } => Ok(generate(&spec.parse::<GeneratorConfig>()?)?),
        }
    }
}

/// Everything that determines a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub source: GraphSource,
    pub protocol: Protocol,
    pub ids: IdAssignment,
    pub diameter: DiameterMode,
    pub lcc: LccFormula,
}

impl RunConfig {
    pub fn new(source: GraphSource, protocol: Protocol) -> Self {
        RunConfig {
            source,
            protocol,
            ids: IdAssignment::Sequential,
            diameter: DiameterMode::Exact,
            lcc: LccFormula::Halved,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub diameter: usize,
}

impl GraphStats {
    pub fn of(graph: &PortGraph) -> Self {
        GraphStats {
            n: graph.node_count(),
            m: graph.edge_count(),
            max_degree: graph.max_degree(),
            diameter: graph.diameter(),
        }
    }
}

/// A rational as an exact `"a/b"` string and a decimal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: f64,
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue {
            exact: format!("{}/{}", r.numer(), r.denom()),
            decimal: to_f64(&r),
        }
    }
}

/// The quantities a protocol computes. Only those relevant to the protocol
/// are present.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Outputs {
    /// Neighbour IDs in port order, per agent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbors: Option<BTreeMap<u64, Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_triangles: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_support: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trussness: Option<BTreeMap<String, u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centrality: Option<BTreeMap<u64, ExactValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centrality_defined: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcc: Option<BTreeMap<u64, ExactValue>>,
}

/// Comparison of one quantity between protocol and oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub compared: usize,
    pub mismatched: usize,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub rounds: u64,
    pub schedule_rounds: u64,
    /// The bound the rounds are checked against for this protocol.
    pub round_bound: u64,
    pub phases: Vec<crate::protocols::PhaseMetrics>,
    pub peak_bits: BTreeMap<u64, u64>,
    /// Largest peak over discovery and counting divided by `ΔL`.
    pub memory_constant: f64,
    pub max_flood_entries: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truss_iterations: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_monotone: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub graph: GraphStats,
    /// Agent ID starting on each node.
    pub ids: Vec<u64>,
    pub protocol_config: ProtocolConfig,
    pub protocol: Outputs,
    pub oracle: Outputs,
    pub deltas: BTreeMap<String, Delta>,
    pub metrics: MetricsSummary,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Oracle values keyed by node index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub source: GraphSource,
    pub graph: GraphStats,
    pub node_triangles: Vec<u64>,
    pub edge_support: BTreeMap<String, u64>,
    pub total: u64,
    pub trussness: BTreeMap<String, u32>,
    pub t_max: u32,
    pub centrality: Vec<ExactValue>,
    pub centrality_defined: bool,
    pub lcc: Vec<ExactValue>,
    pub lcc_formula: LccFormula,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn edge_key(a: impl Display, b: impl Display) -> String {
    format!("{a}-{b}")
}

/// Rounds a protocol is allowed for schedule length `s` and `D = d`.
pub fn round_bound(protocol: Protocol, s: u64, d: u64, m: u64, known_total: bool) -> u64 {
    match protocol {
        Protocol::Neighbors => s,
        Protocol::Triangles => (d + 2) * s,
        Protocol::Truss => s * (2 + m * (2 + d)),
        Protocol::Centrality if known_total => 3 * s,
        Protocol::Centrality => (d + 3) * s,
        Protocol::Lcc => 2 * s,
    }
}

/// Loads the graph and runs the configured protocol and its oracle.
pub fn run(config: &RunConfig) -> Result<(RunReport, Option<Vec<TraceRecord>>), ReportError> {
    let graph = config.source.load()?;
    run_on(&graph, config, false)
}

/// Like [`run`] on an already loaded graph. `trace` records agent moves.
pub fn run_on(
    graph: &PortGraph,
    config: &RunConfig,
    trace: bool,
) -> Result<(RunReport, Option<Vec<TraceRecord>>), ReportError> {
    let ids = config.ids.assign(graph.node_count());
    let mut pc = ProtocolConfig::for_graph(graph, &ids, config.diameter);
    pc.lcc = config.lcc;
    pc.trace = trace;
    let run = run_protocol(graph, &ids, config.protocol, &pc)?;

    let protocol = protocol_outputs(&run.output, &ids);
    let oracle = oracle_outputs(graph, &ids, config.protocol, config.lcc);
    let deltas = compare(&protocol, &oracle);
    let metrics = summarize(&run.metrics, &run.output, &ids, &pc, graph);
    let healthy = metrics.rounds <= metrics.round_bound && metrics.h_monotone != Some(false);
    let verdict = if healthy && deltas.values().all(|d| d.mismatched == 0) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let report = RunReport {
        config: config.clone(),
        graph: GraphStats::of(graph),
        ids: ids.iter().map(|id| id.0).collect(),
        protocol_config: pc,
        protocol,
        oracle,
        deltas,
        metrics,
        verdict,
    };
    Ok((report, run.trace))
}

fn summarize(
    metrics: &RoundMetrics,
    output: &ProtocolOutput,
    ids: &[AgentId],
    pc: &ProtocolConfig,
    graph: &PortGraph,
) -> MetricsSummary {
    let protocol = match output {
        ProtocolOutput::Neighbors(_) => Protocol::Neighbors,
        ProtocolOutput::Triangles(_) => Protocol::Triangles,
        ProtocolOutput::Truss(_) => Protocol::Truss,
        ProtocolOutput::Centrality(_) => Protocol::Centrality,
        ProtocolOutput::Lcc(_) => Protocol::Lcc,
    };
    let (truss_iterations, h_monotone) = match output {
        ProtocolOutput::Truss(t) => (Some(t.iterations), Some(t.h_monotone)),
        _ => (None, None),
    };
    let delta_l = (pc.max_degree as u64 * u64::from(pc.id_bits)).max(1);
    MetricsSummary {
        rounds: metrics.rounds,
        schedule_rounds: metrics.schedule_rounds,
        round_bound: round_bound(
            protocol,
            metrics.schedule_rounds,
            pc.diameter_param as u64,
            graph.edge_count() as u64,
            false,
        ),
        phases: metrics.phases.clone(),
        peak_bits: ids.iter().map(|id| id.0).zip(metrics.peak_bits.iter().copied()).collect(),
        memory_constant: metrics.peak_bits_in(&["discover", "count"]) as f64 / delta_l as f64,
        max_flood_entries: metrics.max_flood_entries(),
        truss_iterations,
        h_monotone,
    }
}

/// Protocol output in report form.
pub fn protocol_outputs(output: &ProtocolOutput, ids: &[AgentId]) -> Outputs {
    let by_agent = |values: &[Rational]| -> BTreeMap<u64, ExactValue> {
        ids.iter().zip(values).map(|(id, &v)| (id.0, v.into())).collect()
    };
    let mut out = Outputs::default();
    match output {
        ProtocolOutput::Neighbors(tables) => {
            out.neighbors = Some(
                ids.iter()
                    .zip(tables)
                    .map(|(id, t)| (id.0, t.entries().map(|(_, n)| n.0).collect()))
                    .collect(),
            );
        }
        ProtocolOutput::Triangles(c) => {
            out.node_triangles = Some(ids.iter().zip(&c.per_agent).map(|(id, &t)| (id.0, t)).collect());
            out.edge_support = Some(c.per_edge.iter().map(|(&(a, b), &s)| (edge_key(a, b), s)).collect());
            out.total = Some(c.total);
        }
        ProtocolOutput::Truss(t) => {
            out.trussness = Some(t.labels.per_edge.iter().map(|(&(a, b), &k)| (edge_key(a, b), k)).collect());
            out.t_max = Some(t.labels.t_max());
        }
        ProtocolOutput::Centrality(c) => {
            out.centrality = Some(by_agent(&c.per_agent));
            out.centrality_defined = Some(c.defined);
            out.total = Some(c.total);
        }
        ProtocolOutput::Lcc(l) => out.lcc = Some(by_agent(&l.per_agent)),
    }
    out
}

/// Oracle values for the quantities `protocol` computes, keyed like
/// [`protocol_outputs`].
pub fn oracle_outputs(graph: &PortGraph, ids: &[AgentId], protocol: Protocol, lcc: LccFormula) -> Outputs {
    let id_edge = |u: usize, v: usize| {
        let (a, b) = (ids[u].min(ids[v]), ids[u].max(ids[v]));
        edge_key(a, b)
    };
    let by_agent = |values: &[Rational]| -> BTreeMap<u64, ExactValue> {
        ids.iter().zip(values).map(|(id, &v)| (id.0, v.into())).collect()
    };
    let mut out = Outputs::default();
    match protocol {
        Protocol::Neighbors => {
            out.neighbors = Some(
                (0..graph.node_count())
                    .map(|v| (ids[v].0, graph.ports(v).iter().map(|t| ids[t.node].0).collect()))
                    .collect(),
            );
        }
        Protocol::Triangles => {
            let tally = oracle_triangles(graph);
            out.node_triangles = Some(ids.iter().zip(&tally.per_node).map(|(id, &t)| (id.0, t)).collect());
            out.edge_support = Some(tally.per_edge.iter().map(|(&(u, v), &s)| (id_edge(u, v), s)).collect());
            out.total = Some(tally.total);
        }
        Protocol::Truss => {
            let labels: TrussLabeling = oracle_truss(graph);
            out.trussness = Some(labels.per_edge.iter().map(|(&(u, v), &k)| (id_edge(u, v), k)).collect());
            out.t_max = Some(labels.t_max());
        }
        Protocol::Centrality => {
            let tc = oracle_centrality(graph);
            out.centrality = Some(by_agent(&tc.per_node));
            out.centrality_defined = Some(tc.defined);
            out.total = Some(oracle_triangles(graph).total);
        }
        Protocol::Lcc => out.lcc = Some(by_agent(&oracle_lcc(graph, lcc).per_node)),
    }
    out
}

fn compare_maps<K: Ord, V: PartialEq>(
    deltas: &mut BTreeMap<String, Delta>,
    name: &str,
    a: &Option<BTreeMap<K, V>>,
    b: &Option<BTreeMap<K, V>>,
    magnitude: impl Fn(&V, &V) -> f64,
) {
    let (Some(a), Some(b)) = (a, b) else {
        if a.is_some() != b.is_some() {
            deltas.insert(
                name.to_owned(),
                Delta {
                    compared: 0,
                    mismatched: 1,
                    max_abs: f64::INFINITY,
                },
            );
        }
        return;
    };
    let mut delta = Delta {
        compared: 0,
        mismatched: 0,
        max_abs: 0.0,
    };
    for key in a.keys().chain(b.keys().filter(|k| !a.contains_key(k))) {
        delta.compared += 1;
        match (a.get(key), b.get(key)) {
            (Some(x), Some(y)) if x == y => {}
            (Some(x), Some(y)) => {
                delta.mismatched += 1;
                delta.max_abs = delta.max_abs.max(magnitude(x, y));
            }
            _ => {
                delta.mismatched += 1;
                delta.max_abs = f64::INFINITY;
            }
        }
    }
    deltas.insert(name.to_owned(), delta);
}

fn single<V>(v: &Option<V>) -> Option<BTreeMap<(), &V>> {
    v.as_ref().map(|v| BTreeMap::from([((), v)]))
}

/// Per-quantity comparison of protocol output against oracle output.
pub fn compare(protocol: &Outputs, oracle: &Outputs) -> BTreeMap<String, Delta> {
    let int = |x: &u64, y: &u64| x.abs_diff(*y) as f64;
    let exact = |x: &ExactValue, y: &ExactValue| (x.decimal - y.decimal).abs();
    let mut d = BTreeMap::new();
    compare_maps(&mut d, "neighbors", &protocol.neighbors, &oracle.neighbors, |_, _| 1.0);
    compare_maps(&mut d, "node_triangles", &protocol.node_triangles, &oracle.node_triangles, int);
    compare_maps(&mut d, "edge_support", &protocol.edge_support, &oracle.edge_support, int);
    compare_maps(&mut d, "total", &single(&protocol.total), &single(&oracle.total), |x, y| {
        x.abs_diff(**y) as f64
    });
    compare_maps(&mut d, "trussness", &protocol.trussness, &oracle.trussness, |x, y| {
        x.abs_diff(*y) as f64
    });
    compare_maps(&mut d, "centrality", &protocol.centrality, &oracle.centrality, exact);
    compare_maps(
        &mut d,
        "centrality_defined",
        &single(&protocol.centrality_defined),
        &single(&oracle.centrality_defined),
        |_, _| 1.0,
    );
    compare_maps(&mut d, "lcc", &protocol.lcc, &oracle.lcc, exact);
    d
}

/// All oracle values for a graph, without simulation.
pub fn oracle_report(graph: &PortGraph, source: GraphSource, lcc: LccFormula) -> OracleReport {
    let tally = oracle_triangles(graph);
    let truss = oracle_truss(graph);
    let tc = oracle_centrality(graph);
    OracleReport {
        source,
        graph: GraphStats::of(graph),
        node_triangles: tally.per_node.clone(),
        edge_support: tally.per_edge.iter().map(|(&(u, v), &s)| (edge_key(u, v), s)).collect(),
        total: tally.total,
        trussness: truss.per_edge.iter().map(|(&(u, v), &k)| (edge_key(u, v), k)).collect(),
        t_max: truss.t_max(),
        centrality: tc.per_node.iter().map(|&r| r.into()).collect(),
        centrality_defined: tc.defined,
        lcc: oracle_lcc(graph, lcc).per_node.iter().map(|&r| r.into()).collect(),
        lcc_formula: lcc,
    }
}
