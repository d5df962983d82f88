use std::process::{Command, Output};

use serde_json::Value;

fn agtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agtri"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn run_k4_triangles() {
    let out = agtri(&["run", "--gen", "complete:4", "--protocol", "triangles"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["protocol"]["total"], 4);
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["config"]["source"]["spec"], "complete:4");
}

#[test]
fn run_from_file_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k3.txt");
    let trace = dir.path().join("trace.ndjson");
    let report = dir.path().join("report.json");
    std::fs::write(&graph, "0 1\n1 2\n0 2\n").unwrap();
    let out = agtri(&[
        "run",
        "--graph",
        graph.to_str().unwrap(),
        "--protocol",
        "centrality",
        "--out",
        report.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    for v in report["protocol"]["centrality"].as_object().unwrap().values() {
        assert_eq!(v["exact"], "1/1");
    }
    let lines = std::fs::read_to_string(trace).unwrap();
    let first: Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert!(first["round"].is_u64() && first["agent"].is_u64() && first["port"].is_u64());
}

#[test]
fn identical_configs_give_identical_reports() {
    let args = ["run", "--gen", "gnp:12:0.4:seed=5", "--protocol", "truss", "--ids", "random", "--id-seed", "3"];
    assert_eq!(agtri(&args).stdout, agtri(&args).stdout);
}

#[test]
fn oracle_subcommand() {
    let out = agtri(&["oracle", "--gen", "gnp:16:0.3:seed=7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, agtri(&["oracle", "--gen", "gnp:16:0.3:seed=7"]).stdout);
    let missing = agtri(&["oracle", "--graph", "missing.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn gen_output_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = agtri(&["gen", "--gen", "petersen:shuffle:seed=4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let run = agtri(&["run", "--graph", path.to_str().unwrap(), "--protocol", "truss"]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(json(&run)["protocol"]["t_max"], 2);
}

#[test]
fn sweep_exit_codes() {
    let ok = agtri(&["sweep", "--family", "complete", "--n", "3..6", "--protocols", "neighbors,triangles"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = json(&ok);
    assert_eq!(report["discover_exact"], true);
    assert_eq!(report["runs"].as_array().unwrap().len(), 8);

    let empty = agtri(&["sweep", "--family", "gnp", "--n", "8", "--p", "0.3", "--seeds", ""]);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(agtri(&["run", "--protocol", "triangles"]).status.code(), Some(2));
    assert_eq!(agtri(&["run", "--gen", "complete:4", "--protocol", "bogus"]).status.code(), Some(2));
    assert_eq!(agtri(&["run", "--gen", "gnp:8:0", "--protocol", "lcc"]).status.code(), Some(2));
}

#[test]
fn lcc_formula_flag() {
    let value = |formula: &str| {
        let out = agtri(&["run", "--gen", "complete:4", "--protocol", "lcc", "--lcc", formula]);
        assert_eq!(out.status.code(), Some(0), "{formula}");
        json(&out)["protocol"]["lcc"]["1"]["exact"].clone()
    };
    assert_eq!(value("halved"), "1/2");
    assert_eq!(value("paper"), "1/2");
    assert_eq!(value("standard"), "1/1");
}
