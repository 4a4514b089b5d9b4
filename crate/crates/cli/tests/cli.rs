use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn subfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subfan"))
        .args(args)
        .env_remove("SUBFAN_CACHE_DIR")
        .output()
        .expect("run subfan")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

#[test]
fn printed_a2_counting_matrix() {
    let o = subfan(&[
        "counting-matrix",
        "--rank",
        "2",
        "--c",
        "12",
        "--m",
        "3",
        "--format",
        "printed",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "1  0  1  0  1  0\n3  1  2  2  1  3\n0  1  0  1  0  1\n"
    );
}

#[test]
fn multiassociahedron_f_vector() {
    let o = subfan(&[
        "fvector",
        "--rank",
        "3",
        "--c",
        "213",
        "--word",
        "multiassoc:k=3",
    ]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).contains("1,15,105,455,1320,2607,3465,2970,1485,330"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn a4_table_row() {
    let o = subfan(&["a4-table", "--k", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("4702,0,17,4719"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&subfan(&["fvector", "--rank", "2", "--word", "1231"])),
        1
    );
    assert_eq!(code(&subfan(&["fvector", "--rank", "2", "--word", "1"])), 1);
    assert_eq!(code(&subfan(&["counting-matrix", "--rank", "2"])), 1);
    assert_eq!(
        code(&subfan(&["check-fan", "--family", "m213", "--m", "3"])),
        0
    );
    assert_eq!(
        code(&subfan(&["check-regular", "--family", "a2", "--m", "3"])),
        0
    );
    assert_eq!(
        code(&subfan(&["check-regular", "--family", "m213", "--m", "5"])),
        2
    );
    assert_eq!(code(&subfan(&["fold-b2", "--m", "5"])), 0);
    assert_eq!(code(&subfan(&["fold-b2", "--m", "2"])), 1);
}

#[test]
fn zero_matrix_is_not_a_signature_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("zero.csv");
    fs::write(&file, "0,0,0,0,0\n0,0,0,0,0\n0,0,0,0,0\n").unwrap();
    let o = subfan(&[
        "signature",
        "--rank",
        "2",
        "--word",
        "12121",
        "--matrix",
        path(&file),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn matrix_round_trips_through_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    for (format, name) in [("json", "d.json"), ("csv", "d.csv")] {
        let o = subfan(&[
            "counting-matrix",
            "--rank",
            "3",
            "--c",
            "132",
            "--m",
            "4",
            "--format",
            format,
        ]);
        assert_eq!(code(&o), 0);
        let file = dir.path().join(name);
        fs::write(&file, stdout(&o)).unwrap();
        let s = subfan(&[
            "signature",
            "--rank",
            "3",
            "--c",
            "132",
            "--m",
            "4",
            "--matrix",
            path(&file),
        ]);
        assert_eq!(code(&s), 0, "{}", stdout(&s));
        assert!(
            stdout(&s).lines().nth(1).unwrap().ends_with(",-1"),
            "{}",
            stdout(&s)
        );
    }
}

#[test]
fn fan_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fan.json");
    let o = subfan(&[
        "build-fan",
        "--rank",
        "2",
        "--c",
        "12",
        "--m",
        "4",
        "--word",
        "12121",
        "--out",
        path(&file),
    ]);
    assert_eq!(code(&o), 0);
    let a = subfan(&["check-fan", "--fan", path(&file), "--format", "json"]);
    let b = subfan(&[
        "check-fan",
        "--rank",
        "2",
        "--c",
        "12",
        "--m",
        "4",
        "--word",
        "12121",
        "--format",
        "json",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    let ja: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let jb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(ja["complete"], true);
    assert_eq!(ja["wall_count"], jb["wall_count"]);
    let again = dir.path().join("again.json");
    subfan(&["build-fan", "--fan", path(&file), "--out", path(&again)]);
    assert_eq!(
        fs::read_to_string(&file).unwrap(),
        fs::read_to_string(&again).unwrap()
    );
}

#[test]
fn parameter_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(
        &good,
        r#"{"a": ["1", "2", "3"], "b": ["1", "2", "3"], "c": ["1", "2", "3"]}"#,
    )
    .unwrap();
    let o = subfan(&[
        "signature",
        "--rank",
        "3",
        "--c",
        "123",
        "--params",
        path(&good),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let counterexample = dir.path().join("counterexample.json");
    fs::write(
        &counterexample,
        r#"{"a": ["2", "0", "1"], "b": ["2", "0", "3"], "c": ["2", "1", "0"]}"#,
    )
    .unwrap();
    let o = subfan(&[
        "signature",
        "--rank",
        "3",
        "--c",
        "123",
        "--params",
        path(&counterexample),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inequalities_hold"], false);
    let broken = dir.path().join("broken.json");
    fs::write(&broken, r#"{"a": ["1"], "b": ["1", "2"], "c": ["x"]}"#).unwrap();
    assert_eq!(
        code(&subfan(&[
            "signature",
            "--rank",
            "3",
            "--c",
            "123",
            "--params",
            path(&broken)
        ])),
        1
    );
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec![
            "check-fan",
            "--family",
            "m123",
            "--m",
            "4",
            "--points",
            "30",
            "--seed",
            "9",
            "--format",
            "json",
        ],
        vec![
            "signature",
            "--rank",
            "3",
            "--c",
            "213",
            "--m",
            "3",
            "--random-params",
            "5",
            "--seed",
            "3",
        ],
        vec![
            "facets",
            "--rank",
            "3",
            "--word",
            "multiassoc:k=2",
            "--format",
            "json",
        ],
    ];
    for args in runs {
        let a = subfan(&args);
        let mut threaded = vec!["--threads", "4"];
        threaded.extend(&args);
        let b = subfan(&threaded);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn survey_resumes_in_the_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_subfan"))
            .args([
                "survey", "--rank", "2", "--c", "12", "--k", "1", "--m-max", "4", "--limit", limit,
                "--format", "csv",
            ])
            .env("SUBFAN_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run("3");
    assert_eq!(code(&first), 0);
    let last = run("1000");
    assert_eq!(code(&last), 0);
    let summary = stdout(&last);
    let row: Vec<&str> = summary.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2..], ["0", "0", "true"]);
    let csv = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|e| e == "csv"))
        .expect("survey csv");
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("word,m,positions,complete,regular,wall_count,runtime_ms\n"));
    assert_eq!(text.lines().count() - 1, row[1].parse::<usize>().unwrap());
}

#[test]
fn braid_graph_outputs() {
    let o = subfan(&["braid-graph", "--rank", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("graph"));
    let r = subfan(&[
        "braid-graph",
        "--rank",
        "4",
        "--contract",
        "1-4",
        "--report",
        "--format",
        "json",
    ]);
    assert_eq!(code(&r), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(v["bipartite"], false);
    assert_eq!(v["stabled"], false);
    assert_eq!(v["odd_cycle_length"], 3);
    let e = subfan(&[
        "braid-graph",
        "--rank",
        "4",
        "--contract",
        "1-3,1-4,2-4",
        "--report",
    ]);
    assert_eq!(code(&e), 0);
}
