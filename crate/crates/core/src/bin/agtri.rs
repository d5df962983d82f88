use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agent_triangles::engine::{trace_to_ndjson, DiameterMode, IdAssignment};
use agent_triangles::graph::{generate, GeneratorConfig};
use agent_triangles::oracles::LccFormula;
use agent_triangles::protocols::Protocol;
use agent_triangles::report::{oracle_report, run_on, sweep, GraphSource, ReportError, RunConfig, SweepSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Mobile-agent triangle analytics simulator.
#[derive(Parser)]
#[command(name = "agtri", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a protocol and compare it with the oracle.
    Run(RunArgs),
    /// Print oracle values without simulating agents.
    Oracle(OracleArgs),
    /// Run every protocol over a generated corpus.
    Sweep(SweepArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generator spec such as complete:4, petersen or gnp:16:0.3:seed=7.
    #[arg(long = "gen")]
    generator: Option<String>,
}

impl Source {
    fn into_source(self) -> GraphSource {
        match (self.graph, self.generator) {
            (Some(path), _) => GraphSource::File { path },
            (None, Some(spec)) => GraphSource::Generated { spec },
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IdsArg {
    Sequential,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiameterArg {
    Exact,
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum LccArg {
    #[value(alias = "paper")]
    Halved,
    Standard,
}

#[derive(Args)]
struct Knobs {
    #[arg(long, value_enum, default_value = "sequential")]
    ids: IdsArg,
    #[arg(long, default_value_t = 0)]
    id_seed: u64,
    /// Random IDs are drawn from [0, n^c].
    #[arg(long, default_value_t = 2)]
    id_exponent: u32,
    #[arg(long, value_enum, default_value = "exact")]
    diameter: DiameterArg,
    #[arg(long, value_enum, default_value = "halved")]
    lcc: LccArg,
}

impl Knobs {
    fn ids(&self) -> IdAssignment {
        match self.ids {
            IdsArg::Sequential => IdAssignment::Sequential,
            IdsArg::Random => IdAssignment::Random {
                seed: self.id_seed,
                exponent: self.id_exponent,
            },
        }
    }

    fn diameter(&self) -> DiameterMode {
        match self.diameter {
            DiameterArg::Exact => DiameterMode::Exact,
            DiameterArg::N => DiameterMode::NodeCount,
        }
    }

    fn lcc(&self) -> LccFormula {
        match self.lcc {
            LccArg::Halved => LccFormula::Halved,
            LccArg::Standard => LccFormula::Standard,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    protocol: Protocol,
    #[command(flatten)]
    knobs: Knobs,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write agent moves as newline-delimited JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "halved")]
    lcc: LccArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// complete, cycle, path, star, petersen, diamond or gnp.
    #[arg(long)]
    family: String,
    /// Node counts: a single value, `a..b` (inclusive) or a comma list.
    #[arg(long, default_value = "0")]
    n: String,
    #[arg(long)]
    p: Option<f64>,
    /// Seeds: a single value, `a..b` (inclusive) or a comma list.
    #[arg(long, default_value = "0")]
    seeds: String,
    #[arg(long)]
    shuffle_ports: bool,
    /// Protocols to run; all when absent.
    #[arg(long, value_delimiter = ',')]
    protocols: Vec<Protocol>,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long = "gen")]
    generator: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_list(text: &str) -> Result<Vec<u64>, ReportError> {
    let bad = || ReportError::Config(format!("cannot parse range {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn write(path: Option<&Path>, text: &str) -> Result<(), ReportError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| ReportError::Io {
            path: path.to_owned(),
            source,
        }),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(ReportError::Io {
                path: "<stdout>".into(),
                source: e,
            }),
            _ => Ok(()),
        },
    }
}

fn execute(command: Command) -> Result<bool, ReportError> {
    match command {
        Command::Run(args) => {
            let config = RunConfig {
                source: args.source.into_source(),
                protocol: args.protocol,
                ids: args.knobs.ids(),
                diameter: args.knobs.diameter(),
                lcc: args.knobs.lcc(),
            };
            let graph = config.source.load()?;
            let (report, trace) = run_on(&graph, &config, args.trace.is_some())?;
            write(args.out.as_deref(), &report.to_json())?;
            if let (Some(path), Some(trace)) = (args.trace.as_deref(), trace) {
                write(Some(path), &trace_to_ndjson(&trace))?;
            }
            eprintln!(
                "{} on n={} m={}: {} in {} rounds",
                config.protocol,
                report.graph.n,
                report.graph.m,
                if report.passed() { "pass" } else { "FAIL" },
                report.metrics.rounds
            );
            Ok(report.passed())
        }
        Command::Oracle(args) => {
            let source = args.source.into_source();
            let graph = source.load()?;
            let lcc = match args.lcc {
                LccArg::Halved => LccFormula::Halved,
                LccArg::Standard => LccFormula::Standard,
            };
            write(args.out.as_deref(), &oracle_report(&graph, source, lcc).to_json())?;
            Ok(true)
        }
        Command::Sweep(args) => {
            let mut spec = SweepSpec::new(
                &args.family,
                parse_list(&args.n)?.into_iter().map(|n| n as usize).collect(),
                parse_list(&args.seeds)?,
            );
            spec.p = args.p;
            spec.shuffle_ports = args.shuffle_ports;
            if !args.protocols.is_empty() {
                spec.protocols = args.protocols;
            }
            spec.ids = args.knobs.ids();
            spec.diameter = args.knobs.diameter();
            spec.lcc = args.knobs.lcc();
            let report = sweep(&spec)?;
            write(args.out.as_deref(), &report.to_json())?;
            eprintln!(
                "{} graphs, {} runs passed, {} failed",
                report.graphs,
                report.runs.len(),
                report.failures.len()
            );
            Ok(report.failures.is_empty())
        }
        Command::Gen(args) => {
            let config: GeneratorConfig = args.generator.parse()?;
            let text = generate(&config)?.to_edge_list();
            write(args.out.as_deref(), text.trim_end())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
