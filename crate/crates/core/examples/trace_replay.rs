//! Records every agent move as NDJSON and replays the run to confirm the
//! trace is reproduced exactly.

use agent_triangles::engine::trace_to_ndjson;
use agent_triangles::graph::GeneratorConfig;
use agent_triangles::protocols::Protocol;
use agent_triangles::report::{run_on, GraphSource, RunConfig};

fn main() {
    let spec = "cycle:5";
    let graph = agent_triangles::graph::generate(&spec.parse::<GeneratorConfig>().expect("spec")).expect("graph");
    let config = RunConfig::new(GraphSource::Generated { spec: spec.into() }, Protocol::Triangles);

    let (report, trace) = run_on(&graph, &config, true).expect("runs");
    let trace = trace_to_ndjson(&trace.expect("trace requested"));
    println!("{} moves recorded, first three:", trace.lines().count());
    for line in trace.lines().take(3) {
        println!("  {line}");
    }

    let (again, replay) = run_on(&graph, &config, true).expect("runs");
    let replay = trace_to_ndjson(&replay.expect("trace requested"));
    println!("replay identical: trace {}, report {}", trace == replay, report.to_json() == again.to_json());
}
