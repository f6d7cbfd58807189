use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn circmap(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circmap"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

const K4: &str =
    r#"{"vertices":["0","1","2","3"],"edges":[["0","1"],["0","2"],["0","3"],["1","2"],["1","3"],["2","3"]]}"#;

#[test]
fn counterexample_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = circmap(d, &["generate", "counterexample", "--p", "3", "--out", "ce"]);
    assert_eq!(out.status.code(), Some(0));
    for suffix in ["source", "target", "map"] {
        assert!(d.join(format!("ce.{suffix}.json")).exists());
    }

    let out = circmap(d, &["verify", "ce.source.json", "ce.target.json", "ce.map.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"], "pass");
    assert!(r["elapsed_ms"].is_u64());
    assert!(r["witness"].is_null());

    let out = circmap(
        d,
        &[
            "verify",
            "--isomorphism",
            "ce.source.json",
            "ce.target.json",
            "ce.map.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["witness"]["direction"], "backward");
    assert!(r["witness"]["preimage"].is_array());

    let out = circmap(d, &["reconstruct", "ce.source.json", "ce.target.json", "ce.map.json"]);
    assert_eq!(out.status.code(), Some(4));

    let out = circmap(
        d,
        &[
            "reconstruct",
            "--unguarded",
            "ce.source.json",
            "ce.target.json",
            "ce.map.json",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert!(r["witness"]["vertex"].as_str().unwrap().starts_with("x_"));
    assert_eq!(r["witness"]["class"]["kind"], "independent");

    let out = circmap(
        d,
        &[
            "decompose",
            "ce.source.json",
            "ce.target.json",
            "ce.map.json",
            "--vertex",
            "c_0",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["crossing"].as_array().unwrap().len(), 3);

    let out = circmap(
        d,
        &[
            "classify",
            "--preimage",
            "ce.source.json",
            "ce.target.json",
            "ce.map.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["classes"]["b_0"]["center"], "u");
}

#[test]
fn swapped_k4_map_fails_with_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k4.json", K4);
    write(
        d,
        "swap.json",
        r#"{"map":[[["0","1"],["2","3"]],[["0","2"],["0","2"]],[["0","3"],["0","3"]],
                   [["1","2"],["1","2"]],[["1","3"],["1","3"]],[["2","3"],["0","1"]]]}"#,
    );
    let out = circmap(d, &["verify", "k4.json", "k4.json", "swap.json"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["result"], "fail");
    assert_eq!(r["witness"]["circuit"].as_array().unwrap().len(), 3);
    assert_eq!(r["witness"]["image"].as_array().unwrap().len(), 3);

    let out = circmap(d, &["--quiet", "verify", "k4.json", "k4.json", "swap.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn identity_and_rotation_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k4.json", K4);
    write(
        d,
        "id.json",
        r#"{"map":[[["0","1"],["0","1"]],[["0","2"],["0","2"]],[["0","3"],["0","3"]],
                   [["1","2"],["1","2"]],[["1","3"],["1","3"]],[["2","3"],["2","3"]]]}"#,
    );
    let out = circmap(d, &["reconstruct", "k4.json", "k4.json", "id.json"]);
    assert_eq!(out.status.code(), Some(0));
    let lambda = &report(&out)["lambda"];
    for v in ["0", "1", "2", "3"] {
        assert_eq!(lambda[v], v);
    }

    assert_eq!(
        circmap(d, &["generate", "named", "W5", "--out", "w5"]).status.code(),
        Some(0)
    );
    assert_eq!(
        circmap(
            d,
            &["generate", "permuted", "w5.graph.json", "--seed", "11", "--out", "pw"]
        )
        .status
        .code(),
        Some(0)
    );
    let out = circmap(d, &["reconstruct", "w5.graph.json", "pw.target.json", "pw.map.json"]);
    assert_eq!(out.status.code(), Some(0));
    let perm: Value = serde_json::from_str(&fs::read_to_string(d.join("pw.perm.json")).unwrap()).unwrap();
    assert_eq!(report(&out)["lambda"], perm["permutation"]);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k4.json", K4);
    write(d, "loop.json", r#"{"vertices":["a"],"edges":[["a","a"]]}"#);
    let out = circmap(d, &["circuits", "loop.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop"));
    assert!(out.stdout.is_empty());

    assert_eq!(circmap(d, &["circuits", "missing.json"]).status.code(), Some(1));
    assert_eq!(circmap(d, &["verify", "k4.json"]).status.code(), Some(1));
    assert_eq!(
        circmap(d, &["generate", "counterexample", "--p", "4", "--out", "x"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        circmap(d, &["generate", "named", "petersen", "--out", "x"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(circmap(d, &["--help"]).status.code(), Some(0));
}

#[test]
fn random3c_output_is_three_connected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = circmap(d, &["generate", "random3c", "--n", "8", "--seed", "7", "--out", "r"]);
    assert_eq!(out.status.code(), Some(0));
    let g = circmap::Graph::from_json(&fs::read_to_string(d.join("r.graph.json")).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 8);
    assert!(circmap::connectivity::is_k_connected(&g, 3));
}

#[test]
fn typex_and_circuits_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    circmap(d, &["generate", "named", "prism", "--out", "prism"]);
    write(d, "cut.json", r#"[["a_0","b_0"],["a_1","b_1"],["b_2","a_2"]]"#);
    let out = circmap(d, &["typex", "prism.graph.json", "cut.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"], "type_x");

    write(d, "half.json", r#"[["a_0","b_0"],["a_1","b_1"]]"#);
    assert_eq!(
        circmap(d, &["typex", "prism.graph.json", "half.json"]).status.code(),
        Some(4)
    );

    let out = circmap(d, &["circuits", "prism.graph.json"]);
    assert_eq!(report(&out)["count"], 14);
    assert_eq!(
        circmap(d, &["circuits", "--max-circuits", "5", "prism.graph.json"])
            .status
            .code(),
        Some(4)
    );
}
