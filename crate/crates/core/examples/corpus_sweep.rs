//! Every protocol over a small random corpus, with the worst round-bound
//! ratio and memory constant.

use agent_triangles::report::{sweep, SweepSpec};

fn main() {
    let mut spec = SweepSpec::new("gnp", vec![8, 16], (1..=5).collect());
    spec.p = Some(0.3);
    let report = sweep(&spec).expect("non-empty corpus");
    println!("{} graphs, {} runs, {} failures", report.graphs, report.runs.len(), report.failures.len());
    println!("max rounds / bound: {:.3}", report.max_round_ratio);
    println!("max memory constant: {:.3}", report.max_memory_constant);
    println!("discovery always one schedule: {}", report.discover_exact);
    for f in &report.failures {
        println!("  {} {}: {}", f.graph, f.protocol, f.reason);
    }
}
