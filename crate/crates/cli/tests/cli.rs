//! End-to-end tests driving the compiled binary against the fixture tables.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sigma_nuclei::{Isostrophism, IsotopyTriple, Perm, Quasigroup, S3Elem};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    path.to_str().expect("fixture paths are unicode").to_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma-nuclei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "command failed: {}\n{}",
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn json_of(output: &Output) -> Value {
    serde_json::from_str(&stdout_of(output)).expect("json output")
}

fn parse_fixture(name: &str) -> Quasigroup {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture readable");
    Quasigroup::parse(&text).expect("fixture parses")
}

#[test]
fn validate_accepts_every_fixture() {
    for name in ["z3.qg", "z7.qg", "klein.qg", "leftloop4.qg", "rand6_3.qg"] {
        let output = run(&["validate", &fixture(name)]);
        let text = stdout_of(&output);
        assert!(text.starts_with("valid quasigroup of order "), "{text}");
    }
}

#[test]
fn validate_rejects_a_broken_table_with_exit_one() {
    let path = std::env::temp_dir().join(format!("broken-{}.qg", std::process::id()));
    std::fs::write(&path, "0 1\n1 1\n").expect("temp file writable");
    let output = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout_of_unchecked(&output).starts_with("invalid:"));
    std::fs::remove_file(&path).ok();
}

fn stdout_of_unchecked(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn missing_file_exits_two() {
    let output = run(&["nuclei", "/no/such/file.qg"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("error:"));
}

#[test]
fn bad_sigma_literal_exits_two() {
    let output = run(&["nuclei", &fixture("z3.qg"), "--sigma", "21"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn nuclei_json_lists_the_left_translations_of_a_group() {
    let output = run(&[
        "nuclei",
        &fixture("z3.qg"),
        "--sigma",
        "e",
        "--kind",
        "l",
        "--json",
    ]);
    let value = json_of(&output);
    assert_eq!(value["order"], 3);
    let entries = value["nuclei"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["sigma"], "e");
    assert_eq!(entries[0]["kind"], "l");
    assert_eq!(entries[0]["size"], 3);
    let members = entries[0]["members"].as_array().unwrap();
    let component: Vec<Vec<u64>> = members
        .iter()
        .map(|m| {
            m["components"][0]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(component, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    for m in members {
        assert_eq!(m["components"][1], serde_json::json!([0, 1, 2]));
    }
}

#[test]
fn nuclei_oracle_flag_reproduces_the_fast_output() {
    let fast = json_of(&run(&["nuclei", &fixture("z4.qg"), "--json"]));
    let oracle = json_of(&run(&["nuclei", &fixture("z4.qg"), "--oracle", "--json"]));
    assert_eq!(fast, oracle);
}

#[test]
fn parastrophe_swap_of_arguments_transposes_the_table() {
    let q = parse_fixture("rand5_0.qg");
    let output = run(&["parastrophe", &fixture("rand5_0.qg"), "--tau", "12", "--json"]);
    let value = json_of(&output);
    assert_eq!(value["tau"], "12");
    let rows = value["rows"].as_array().unwrap();
    for x in 0..5 {
        for y in 0..5 {
            assert_eq!(
                rows[x][y].as_u64().unwrap() as usize,
                q.get(y, x),
                "cell ({x},{y})"
            );
        }
    }
}

#[test]
fn isostrophe_identity_prints_the_table_back() {
    let output = run(&["isostrophe", &fixture("z4.qg")]);
    let text = stdout_of(&output);
    let q = parse_fixture("z4.qg");
    assert!(text.contains(&q.to_string()));
}

#[test]
fn seeded_isostrophe_reports_a_reproducible_image() {
    let output = run(&[
        "isostrophe",
        &fixture("z4.qg"),
        "--tau",
        "13",
        "--seed",
        "5",
        "--json",
    ]);
    let value = json_of(&output);
    assert_eq!(value["seed"], 5);
    assert_eq!(value["theta"]["sigma"], "13");
    let perm_of = |v: &Value| {
        Perm::from_images(
            v.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect(),
        )
        .unwrap()
    };
    let comps = value["theta"]["components"].as_array().unwrap();
    let theta = Isostrophism::new(
        S3Elem::S13,
        IsotopyTriple::new([perm_of(&comps[0]), perm_of(&comps[1]), perm_of(&comps[2])]).unwrap(),
    );
    let image = theta.apply(&parse_fixture("z4.qg")).unwrap();
    let rows = value["image"].as_array().unwrap();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(rows[x][y].as_u64().unwrap() as usize, image.get(x, y));
        }
    }
}

#[test]
fn verify_passes_on_a_fixture_and_reports_every_family() {
    let output = run(&[
        "verify",
        &fixture("rand5_1.qg"),
        "--thetas",
        "3",
        "--seed",
        "1",
    ]);
    let text = stdout_of(&output);
    for id in 2..=7 {
        assert!(text.contains(&format!("family {id}:")), "{text}");
    }
    assert!(text.contains("seed 1"), "{text}");
    assert!(text.lines().last().unwrap().contains("checks passed"));
}

#[test]
fn verify_family_filter_keeps_one_id() {
    let value = json_of(&run(&[
        "verify",
        &fixture("z4.qg"),
        "--family",
        "3",
        "--json",
    ]));
    let families = value["families"].as_array().unwrap();
    assert_eq!(families.len(), 1);
    assert_eq!(families[0]["id"], 3);
    assert_eq!(families[0]["total"], 54);
    assert_eq!(families[0]["failed"], 0);
}

#[test]
fn verify_rejects_an_unknown_family() {
    let output = run(&["verify", &fixture("z4.qg"), "--family", "9"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn classify_reports_all_inverse_properties_of_a_cyclic_group() {
    let value = json_of(&run(&["classify", &fixture("z5.qg"), "--m", "0", "--json"]));
    assert_eq!(value["order"], 5);
    assert_eq!(value["ip"], true);
    let negation = serde_json::json!([0, 4, 3, 2, 1]);
    for prop in ["lip", "rip", "wip", "ci", "wcip"] {
        let witnesses = value[prop].as_array().unwrap();
        assert!(
            witnesses.contains(&negation),
            "{prop} misses the negation: {witnesses:?}"
        );
    }
    assert!(value["m"]["witnesses"]
        .as_array()
        .unwrap()
        .contains(&negation));
    assert_eq!(value["inverse_triples"].as_array().unwrap().len(), 100);
}

#[test]
fn classify_searches_power_shifted_witnesses() {
    let output = run(&["classify", &fixture("z3.qg"), "--rst", "0,1,0"]);
    let text = stdout_of(&output);
    assert!(text.contains("(0,1,0)-inverse: 0,2,1"), "{text}");
}

#[test]
fn bench_runs_and_prints_ratios() {
    let output = run(&[
        "bench",
        "--orders",
        "4",
        "--iters",
        "3",
        "--skip-oracle",
        "--seed",
        "7",
    ]);
    let text = stdout_of(&output);
    assert!(text.contains("order 4 (seed 7):"), "{text}");
    assert!(text.contains("derivation"), "{text}");
    assert!(text.contains('x'), "{text}");
}
