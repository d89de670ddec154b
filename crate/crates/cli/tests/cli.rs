use std::path::Path;
use std::process::{Command, Output};

use crystalpoly::polyhedral::forms_from_json;
use crystalpoly::registry::lookup;
use crystalpoly::zcrystal::bfs_enumerate;
use crystalpoly::Mode;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_in(args, None)
}

fn run_in(args: &[&str], builtin_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crystalpoly"));
    cmd.args(args);
    match builtin_dir {
        Some(dir) => cmd.env("CRYSTALPOLY_BUILTIN_DIR", dir),
        None => cmd.env_remove("CRYSTALPOLY_BUILTIN_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn graph_dot_for_a2_fundamental() {
    let out = run(&[
        "graph",
        "--builtin",
        "a2",
        "--iota",
        "1 2",
        "--lambda",
        "1,0",
        "--depth",
        "3",
        "--format",
        "dot",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("[label=\"1\"]").count(), 1);
    assert_eq!(text.matches("[label=\"2\"]").count(), 1);
    assert_eq!(text.matches(" -> ").count(), 2);
}

#[test]
fn graph_json_matches_library_bfs() {
    let out = run(&[
        "graph",
        "--builtin",
        "a1tilde",
        "--binf",
        "--depth",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let b = lookup("a1tilde").unwrap();
    let expected = bfs_enumerate(&b.cartan, &b.iota, Mode::Infinity, 2).unwrap();
    assert_eq!(doc["nodes"].as_array().unwrap().len(), expected.len());
    assert_eq!(
        doc["edges"].as_array().unwrap().len(),
        expected.edges().len()
    );
    assert_eq!(doc["root"], 0);
}

#[test]
fn graph_depth_zero_is_one_node() {
    let out = run(&[
        "graph",
        "--builtin",
        "g2",
        "--lambda",
        "1,1",
        "--depth",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 1);
    assert_eq!(doc["nodes"][0], serde_json::json!([[1, 0], ["r", [1, 1]]]));
}

#[test]
fn generated_system_reports_non_ample_weight() {
    let out = run(&[
        "inequalities",
        "--builtin",
        "a3",
        "--iota",
        "1 2 3 2 1 2",
        "--lambda",
        "0,1,0",
        "--method",
        "generate",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["saturated"], true);
    assert_eq!(doc["ampleness"]["ample"], false);
    let witnesses = doc["ampleness"]["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["const"] == "-1/1"));

    let forms = forms_from_json(&doc["system"].to_string()).unwrap();
    assert_eq!(forms.len(), doc["system"].as_array().unwrap().len());
}

#[test]
fn affine_rank2_window() {
    let out = run(&[
        "inequalities",
        "--builtin",
        "a1tilde",
        "--lambda",
        "1,1",
        "--method",
        "rank2",
        "--window",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1 + 2x_1 − x_2 ≥ 0"));
    assert!(text.contains("4x_4 − 3x_5 ≥ 0"));
    assert!(!text.contains("x_6"));
}

#[test]
fn zero_weight_system_is_ample() {
    let out = run(&[
        "inequalities",
        "--builtin",
        "a2",
        "--lambda",
        "0,0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["ampleness"]["ample"], true);
    assert!(doc["system"]
        .as_array()
        .unwrap()
        .iter()
        .all(|f| f["const"] == "0/1"));
}

#[test]
fn verify_examples() {
    let a2 = run(&[
        "verify",
        "--builtin",
        "a2",
        "--lambda",
        "1,0",
        "--depth",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&a2), 0);
    assert_eq!(json(&a2)["bfs"], 3);
    let affine = run(&[
        "verify",
        "--builtin",
        "a1tilde",
        "--lambda",
        "1,1",
        "--depth",
        "4",
    ]);
    assert_eq!(code(&affine), 0);
    let g2 = run(&[
        "verify",
        "--builtin",
        "g2",
        "--lambda",
        "0,0",
        "--depth",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&g2), 0);
    assert_eq!(json(&g2)["system"], 1);
}

#[test]
fn verify_mismatch_exits_4() {
    let out = run(&[
        "verify",
        "--builtin",
        "a3",
        "--lambda",
        "0,0,1",
        "--depth",
        "6",
        "--support",
        "6",
    ]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("only in BFS"));
}

#[test]
fn unsaturated_generation_exits_3_with_banner() {
    let out = run(&[
        "inequalities",
        "--builtin",
        "a3",
        "--iota",
        "1 2 3 2 1 2",
        "--binf",
        "--max-rounds",
        "1",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("WARNING"));
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(code(&run(&["graph", "--builtin", "e9", "--binf"])), 2);
    assert_eq!(
        code(&run(&["graph", "--builtin", "a2", "--lambda", "-1,0"])),
        2
    );
    assert_eq!(code(&run(&["graph", "--builtin", "a2"])), 2);
    assert_eq!(
        code(&run(&[
            "verify",
            "--builtin",
            "a2",
            "--binf",
            "--depth",
            "5",
            "--support",
            "3"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "inequalities",
            "--builtin",
            "a2",
            "--binf",
            "--method",
            "rank2",
            "--iota",
            "2 1"
        ])),
        2
    );
    assert_eq!(code(&run(&["graph", "--frobnicate"])), 2);
}

#[test]
fn braid_fuzz_is_clean() {
    let out = run(&[
        "braid", "--fuzz", "--c1", "2", "--c2", "1", "--n", "2000", "--seed", "7",
    ]);
    assert_eq!(code(&out), 0);
    let reports = json(&out);
    assert_eq!(reports[0]["inputs"], 2000);
    assert_eq!(reports[0]["seed"], 7);
    let all = run(&["braid", "--fuzz", "--n", "300", "--jobs", "3"]);
    assert_eq!(code(&all), 0);
    assert_eq!(json(&all).as_array().unwrap().len(), 6);
}

#[test]
fn braid_swaps_commuting_letters() {
    let out = run(&[
        "braid",
        "--c1",
        "0",
        "--c2",
        "0",
        "--element",
        "[[1,3],[2,-5]]",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out), serde_json::json!([[2, -5], [1, 3]]));
}

#[test]
fn braid_transports_golden_sets() {
    let dir = tempfile::tempdir().unwrap();
    for (lambda, depth) in [(None, "6"), (Some("1,1,1"), "12")] {
        let mut paths = Vec::new();
        for method in ["golden-iota1", "golden-iota0"] {
            let mut args = vec![
                "enumerate",
                "--builtin",
                "a3",
                "--method",
                method,
                "--depth",
                depth,
            ];
            match lambda {
                Some(l) => args.extend(["--lambda", l]),
                None => args.push("--binf"),
            }
            let out = run(&args);
            assert_eq!(code(&out), 0);
            let path = dir
                .path()
                .join(format!("{method}-{}.json", lambda.unwrap_or("binf")));
            std::fs::write(&path, &out.stdout).unwrap();
            paths.push(path);
        }
        let (from, to) = (paths[0].to_str().unwrap(), paths[1].to_str().unwrap());
        let mapped = run(&[
            "braid",
            "--builtin",
            "a3",
            "--window",
            "4,5,6",
            "--i",
            "1",
            "--j",
            "2",
            "--map-set",
            from,
        ]);
        assert_eq!(code(&mapped), 0);
        assert_eq!(mapped.stdout, std::fs::read(to).unwrap());
        let checked = run(&[
            "braid",
            "--builtin",
            "a3",
            "--window",
            "4,5,6",
            "--i",
            "1",
            "--j",
            "2",
            "--map-set",
            from,
            "--expect",
            to,
        ]);
        assert_eq!(code(&checked), 0);
        let wrong = run(&[
            "braid",
            "--builtin",
            "a3",
            "--window",
            "4,5,6",
            "--i",
            "1",
            "--j",
            "2",
            "--map-set",
            from,
            "--expect",
            from,
        ]);
        assert_eq!(code(&wrong), 4);
    }
}

#[test]
fn builtin_directory_supplies_extra_types() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("mine.json"),
        r#"{"rank": 2, "matrix": [[2, -1], [-1, 2]]}"#,
    )
    .unwrap();
    let out = run_in(
        &[
            "verify",
            "--builtin",
            "mine",
            "--lambda",
            "1,1",
            "--depth",
            "6",
        ],
        Some(dir.path()),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("equal: 8 BFS nodes"));
    assert_eq!(
        code(&run_in(&["graph", "--builtin", "mine", "--binf"], None)),
        2
    );
}
