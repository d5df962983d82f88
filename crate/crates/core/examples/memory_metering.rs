//! Peak metered memory per agent. Discovery and counting stay within a small
//! multiple of `ΔL` bits, while the flood table grows to one entry per agent.

use agent_triangles::engine::{DiameterMode, IdAssignment, ProtocolConfig};
use agent_triangles::graph::{generate, GeneratorConfig, Model};
use agent_triangles::protocols::count_triangles;

fn main() {
    println!("{:>4} {:>4} {:>3} {:>10} {:>6} {:>13} {:>10}", "n", "Δ", "L", "peak bits", "c", "flood entries", "flood bits");
    for n in [8, 16, 32, 64] {
        let graph = generate(&GeneratorConfig::new(Model::Gnp { n, p: 0.2 }).with_seed(2)).expect("connected");
        let ids = IdAssignment::Random { seed: 2, exponent: 2 }.assign(n);
        let config = ProtocolConfig::for_graph(&graph, &ids, DiameterMode::Exact);
        let metrics = count_triangles(&graph, &ids, &config).expect("runs").metrics;

        let peak = metrics.peak_bits_in(&["discover", "count"]);
        let c = peak as f64 / (config.max_degree as f64 * f64::from(config.id_bits));
        let flood = metrics.phase("flood").expect("flooding ran");
        println!(
            "{n:>4} {:>4} {:>3} {peak:>10} {c:>6.2} {:>13} {:>10}",
            config.max_degree, config.id_bits, flood.peak_flood_entries, flood.peak_flood_bits
        );
    }
}
