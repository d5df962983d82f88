use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{run_on, GraphSource, ReportError, RunConfig, Verdict};
use crate::engine::{DiameterMode, IdAssignment};
use crate::graph::{generate, GeneratorConfig, GraphError, Model, PortOrder};
use crate::oracles::LccFormula;
use crate::protocols::Protocol;

/// A family of generated graphs crossed with sizes and seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Generator name: complete, cycle, path, star, petersen, diamond or gnp.
    pub family: String,
    pub sizes: Vec<usize>,
    /// Edge probability, for gnp.
    pub p: Option<f64>,
    pub seeds: Vec<u64>,
    pub shuffle_ports: bool,
    pub protocols: Vec<Protocol>,
    pub ids: IdAssignment,
    pub diameter: DiameterMode,
    pub lcc: LccFormula,
}

impl SweepSpec {
    pub fn new(family: &str, sizes: Vec<usize>, seeds: Vec<u64>) -> Self {
        SweepSpec {
            family: family.to_owned(),
            sizes,
            p: None,
            seeds,
            shuffle_ports: false,
            protocols: Protocol::ALL.to_vec(),
            ids: IdAssignment::Sequential,
            diameter: DiameterMode::Exact,
            lcc: LccFormula::Halved,
        }
    }

    /// Generator configs of every graph in the corpus, without duplicates.
    pub fn corpus(&self) -> Result<Vec<GeneratorConfig>, ReportError> {
        let sized = |n: usize| -> Result<Model, ReportError> {
            Ok(match self.family.as_str() {
                "complete" => Model::Complete { n },
                "cycle" => Model::Cycle { n },
                "path" => Model::Path { n },
                "star" => Model::Star { n },
                "petersen" => Model::Petersen,
                "diamond" => Model::Diamond,
                "gnp" => Model::Gnp {
                    n,
                    p: self
                        .p
                        .ok_or_else(|| ReportError::Config("gnp sweep needs an edge probability".into()))?,
                },
                other => return Err(ReportError::Config(format!("unknown graph family {other:?}"))),
            })
        };
        let sizes = match self.family.as_str() {
            "petersen" | "diamond" => vec![0],
            _ => self.sizes.clone(),
        };
        let randomized = self.family == "gnp" || self.shuffle_ports;
        let seeds = if randomized { self.seeds.clone() } else { vec![0] };
        let mut out = Vec::new();
        for &n in &sizes {
            let model = sized(n)?;
            for &seed in &seeds {
                let config = GeneratorConfig {
                    model,
                    seed,
                    ports: if self.shuffle_ports {
                        PortOrder::Shuffled
                    } else {
                        PortOrder::Ascending
                    },
                };
                if !out.contains(&config) {
                    out.push(config);
                }
            }
        }
        if out.is_empty() || self.protocols.is_empty() {
            return Err(ReportError::Config("sweep corpus is empty".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRun {
    pub graph: String,
    pub protocol: Protocol,
    pub rounds: u64,
    pub round_bound: u64,
    /// Rounds of the discovery schedule divided by `2ΔL`.
    pub discover_schedules: f64,
    pub memory_constant: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub graph: String,
    pub protocol: Protocol,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub graphs: usize,
    pub runs: Vec<SweepRun>,
    pub failures: Vec<SweepFailure>,
    /// Largest `rounds / round_bound` over all runs.
    pub max_round_ratio: f64,
    pub max_memory_constant: f64,
    /// Whether discovery took exactly one `2ΔL` schedule in every run.
    pub discover_exact: bool,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Runs every protocol of `spec` on every corpus graph in parallel. A fault
/// in one run is recorded and the sweep continues.
pub fn sweep(spec: &SweepSpec) -> Result<SweepReport, ReportError> {
    let corpus = spec.corpus()?;
    let graphs = corpus
        .iter()
        .map(|g| Ok((g.to_string(), generate(g)?)))
        .collect::<Result<Vec<_>, GraphError>>()?;
    let jobs: Vec<_> = graphs
        .iter()
        .flat_map(|g| spec.protocols.iter().map(move |&p| (g, p)))
        .collect();

    let results: Vec<Result<SweepRun, SweepFailure>> = jobs
        .par_iter()
        .map(|((name, graph), protocol)| {
            let config = RunConfig {
                source: GraphSource::Generated { spec: name.clone() },
                protocol: *protocol,
                ids: spec.ids,
                diameter: spec.diameter,
                lcc: spec.lcc,
            };
            let fail = |reason: String| SweepFailure {
                graph: name.clone(),
                protocol: *protocol,
                reason,
            };
            let (report, _) = run_on(graph, &config, false).map_err(|e| fail(e.to_string()))?;
            let m = &report.metrics;
            let discover = m.phases.iter().find(|p| p.name == "discover").map_or(0, |p| p.rounds);
            let run = SweepRun {
                graph: name.clone(),
                protocol: *protocol,
                rounds: m.rounds,
                round_bound: m.round_bound,
                discover_schedules: discover as f64 / m.schedule_rounds as f64,
                memory_constant: m.memory_constant,
                verdict: report.verdict,
            };
            if report.passed() {
                Ok(run)
            } else {
                let bad: Vec<_> = report
                    .deltas
                    .iter()
                    .filter(|(_, d)| d.mismatched > 0)
                    .map(|(k, _)| k.as_str())
                    .collect();
                Err(fail(format!("verdict fail: mismatched {}", bad.join(", "))))
            }
        })
        .collect();

    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(run) => runs.push(run),
            Err(f) => failures.push(f),
        }
    }
    let max = |f: fn(&SweepRun) -> f64| runs.iter().map(f).fold(0.0, f64::max);
    Ok(SweepReport {
        spec: spec.clone(),
        graphs: graphs.len(),
        max_round_ratio: max(|r| r.rounds as f64 / r.round_bound as f64),
        max_memory_constant: max(|r| r.memory_constant),
        discover_exact: runs.iter().all(|r| r.discover_schedules == 1.0),
        runs,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_family_sweep() {
        let spec = SweepSpec::new("complete", (3..=6).collect(), vec![]);
        let report = sweep(&spec).unwrap();
        assert_eq!(report.graphs, 4);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        assert!(report.discover_exact);
        assert!(report.max_round_ratio <= 1.0);
    }

    #[test]
    fn empty_corpus_is_rejected() {
        let mut spec = SweepSpec::new("gnp", vec![8], vec![]);
        spec.p = Some(0.3);
        assert!(matches!(sweep(&spec), Err(ReportError::Config(_))));
    }

    #[test]
    fn unknown_family_is_rejected() {
        let spec = SweepSpec::new("hypercube", vec![8], vec![1]);
        assert!(sweep(&spec).is_err());
    }
}
