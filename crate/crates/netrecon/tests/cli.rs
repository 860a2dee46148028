//! End-to-end tests that drive the compiled binary the way a shell user
//! would, asserting on exit codes, stdout/stderr, and produced files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn netrecon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netrecon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|e| {
        panic!(
            "stderr is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

const PATH_GRAPH: &str = "src,dst,weight\na,b,1\nb,c,1\n";
const UNIFORM_FITNESS_3: &str = "node,fitness\na,1\nb,1\nc,1\n";

#[test]
fn metrics_reports_path_graph_density() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("path.csv");
    write(&graph, PATH_GRAPH);

    let out = netrecon(&["metrics", "--graph", graph.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("property,value\n"), "got: {text}");
    assert!(text.contains("density,0.6666666666666666\n"), "got: {text}");
    assert!(text.contains("clustering,0\n"), "got: {text}");
}

#[test]
fn calibrate_homogeneous_three_nodes_gives_unit_coupling() {
    let dir = tempfile::tempdir().unwrap();
    let fitness = dir.path().join("fitness.csv");
    let observed = dir.path().join("observed.csv");
    write(&fitness, UNIFORM_FITNESS_3);
    write(&observed, "node,degree\na,1\nb,1\nc,1\n");

    let out = netrecon(&[
        "calibrate",
        "--fitness",
        fitness.to_str().unwrap(),
        "--observed",
        observed.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let z = doc["z"].as_f64().unwrap();
    assert!((z - 1.0).abs() <= 1e-9, "z = {z}");
    assert_eq!(doc["command"], "calibrate");
    assert_eq!(doc["subset_size"], 3);
    assert!(doc["manifest"]["inputs"].as_array().unwrap().len() == 2);
}

#[test]
fn bench_full_information_grid_hits_ensemble_reference() {
    let out = netrecon(&[
        "bench",
        "synthetic",
        "--fitness-gen",
        "lognormal:0,1,25",
        "--density",
        "0.3",
        "--n-grid",
        "25",
        "--subsets",
        "5",
        "--seed",
        "9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("property,n,flavor,rrmse,M,seed\n"), "got: {text}");
    let mut omega_rows = 0;
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6, "row: {line}");
        assert_eq!(fields[1], "25");
        if fields[2] == "r_omega0" {
            omega_rows += 1;
            let rrmse: f64 = fields[3].parse().unwrap();
            assert!(rrmse <= 1e-6, "row: {line}");
        }
    }
    assert_eq!(omega_rows, 4, "one ensemble row per property: {text}");
}

#[test]
fn bench_output_is_bit_identical_across_reruns_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let out = netrecon(&[
            "bench",
            "synthetic",
            "--fitness-gen",
            "powerlaw:2.5,1,30",
            "--density",
            "0.25",
            "--n-grid",
            "6,0.5,30",
            "--subsets",
            "8",
            "--seed",
            "77",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        fs::read(&path).unwrap()
    };

    let a = run("a.csv", "1");
    let b = run("b.csv", "3");
    let c = run("c.csv", "1");
    assert_eq!(a, b, "thread count changed the bytes");
    assert_eq!(a, c, "rerun changed the bytes");
    assert!(dir.path().join("a.csv.manifest.json").exists());
}

#[test]
fn sampled_graph_round_trips_through_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let fitness = dir.path().join("fitness.csv");
    write(&fitness, UNIFORM_FITNESS_3);
    let graph = dir.path().join("draw.csv");

    let out = netrecon(&[
        "sample",
        "--fitness",
        fitness.to_str().unwrap(),
        "--z",
        "1",
        "--seed",
        "5",
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&graph).unwrap();
    assert!(text.starts_with("src,dst,weight\n"));

    let out = netrecon(&["metrics", "--graph", graph.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("density,"));
}

#[test]
fn sample_count_writes_numbered_files() {
    let dir = tempfile::tempdir().unwrap();
    let fitness = dir.path().join("fitness.csv");
    write(&fitness, UNIFORM_FITNESS_3);
    let base = dir.path().join("draws.csv");

    let out = netrecon(&[
        "sample",
        "--fitness",
        fitness.to_str().unwrap(),
        "--z",
        "0.5",
        "--count",
        "3",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for i in 0..3 {
        assert!(dir.path().join(format!("draws-{i:03}.csv")).exists());
    }
    assert!(dir.path().join("draws.csv.manifest.json").exists());

    let out = netrecon(&[
        "sample",
        "--fitness",
        fitness.to_str().unwrap(),
        "--z",
        "0.5",
        "--count",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stderr_json(&out);
    assert_eq!(doc["error"]["kind"], "usage");
}

#[test]
fn usage_errors_list_every_violation() {
    let out = netrecon(&[
        "reconstruct",
        "--fitness",
        "f.csv",
        "--observed",
        "k.csv",
        "--mode",
        "mc",
        "--samples",
        "1",
        "--properties",
        "density,bogus,alsbad",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stderr_json(&out);
    assert_eq!(doc["error"]["kind"], "usage");
    let violations = doc["error"]["violations"].as_array().unwrap();
    assert!(
        violations.len() >= 3,
        "expected all violations listed, got {violations:?}"
    );
    let joined = violations
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect::<Vec<_>>()
        .join(" | ");
    assert!(joined.contains("bogus"), "{joined}");
    assert!(joined.contains("alsbad"), "{joined}");
    assert!(joined.contains("samples"), "{joined}");
}

#[test]
fn runtime_errors_exit_one_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.csv");
    let out = netrecon(&[
        "metrics",
        "--graph",
        "/nonexistent/graph.csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stderr_json(&out);
    assert_eq!(doc["error"]["kind"], "runtime");
    assert!(doc["error"]["message"]
        .as_str()
        .unwrap()
        .contains("graph.csv"));
    assert!(!out_path.exists(), "failed run must not leave output behind");
}

#[test]
fn malformed_input_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.csv");
    write(&graph, "src,dst,weight\na,b,1\nb,c,-4\n");

    let out = netrecon(&["metrics", "--graph", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let message = stderr_json(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(message.contains("bad.csv:3:"), "{message}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = netrecon(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stderr_json(&out);
    assert_eq!(doc["error"]["kind"], "usage");
}

#[test]
fn cm_fit_scatter_requires_out_and_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.csv");
    let fitness = dir.path().join("y.csv");
    // 4-cycle: a regular sequence, so the fit has an interior solution.
    write(&graph, "src,dst,weight\na,b,1\nb,c,1\nc,d,1\nd,a,1\n");
    write(&fitness, "node,fitness\na,1\nb,1\nc,1\nd,1\n");

    let out = netrecon(&[
        "cm-fit",
        "--graph",
        graph.to_str().unwrap(),
        "--fitness",
        fitness.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["error"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v.as_str().unwrap().contains("--out")));

    let fit_out = dir.path().join("fit.csv");
    let out = netrecon(&[
        "cm-fit",
        "--graph",
        graph.to_str().unwrap(),
        "--fitness",
        fitness.to_str().unwrap(),
        "--out",
        fit_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fit_out.exists());
    let scatter = dir.path().join("fit.scatter.csv");
    assert!(scatter.exists());
    assert!(fs::read_to_string(&scatter)
        .unwrap()
        .starts_with("fitness,x\n"));
}

#[test]
fn reconstruct_full_observation_matches_observed_density() {
    let dir = tempfile::tempdir().unwrap();
    let fitness = dir.path().join("fitness.csv");
    let observed = dir.path().join("observed.csv");
    write(&fitness, "node,fitness\na,1\nb,1\nc,1\nd,1\n");
    write(&observed, "node,degree\na,2\nb,1\nc,2\nd,1\n");

    let out = netrecon(&[
        "reconstruct",
        "--fitness",
        fitness.to_str().unwrap(),
        "--observed",
        observed.to_str().unwrap(),
        "--mode",
        "analytic",
        "--properties",
        "density",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let estimates = doc["estimates"].as_array().unwrap();
    assert_eq!(estimates.len(), 1);
    // Observed mean degree 1.5 of 3 possible: density 1/2.
    let mean = estimates[0]["mean"].as_f64().unwrap();
    assert!((mean - 0.5).abs() <= 1e-9, "mean = {mean}");
    assert_eq!(estimates[0]["method"], "analytic-plugin");
}
