use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().expect("utf-8 path").to_string()
}

fn lwr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lwr")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[track_caller]
fn expect(args: &[&str], status: i32, out: &str) {
    let o = lwr(args);
    assert_eq!(code(&o), status, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), out, "{args:?}");
}

#[track_caller]
fn expect_last_line(args: &[&str], status: i32, last: &str) {
    let o = lwr(args);
    assert_eq!(code(&o), status, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().last(), Some(last), "{args:?}");
}

#[test]
fn lpa_normal_form_of_c_cstar_on_the_loop() {
    expect(&["lpa", "nf", &data("loop.graph"), "--expr", "c.c^*"], 0, "v\n");
}

#[test]
fn lpa_products_and_grading() {
    let t = data("toeplitz.graph");
    expect(&["lpa", "mul", &t, "--expr", "c^*", "--expr", "c + f"], 0, "u\n");
    expect(
        &["lpa", "graded", &t, "--expr", "c.c^* + c + 2*f^*"],
        0,
        "degree -1: 2*f^*\ndegree 0: u - f.f^*\ndegree 1: c\n",
    );
    expect(&["lpa", "graded", &t, "--expr", "c + f^*", "--degree", "-1"], 0, "f^*\n");
    expect(&["lpa", "graded", &t, "--expr", "c", "--degree", "2"], 0, "0\n");
}

#[test]
fn cohn_keeps_c_cstar() {
    let g = data("loop.graph");
    expect(&["cohn", "nf", &g, "--expr", "c.c^* - v"], 0, "-v + c.c^*\n");
    expect(&["cohn", "mul", &g, "--expr", "c^*", "--expr", "c"], 0, "v\n");
}

#[test]
fn field_choice_changes_arithmetic() {
    let g = data("loop.graph");
    expect(&["--field", "gf3", "lpa", "nf", &g, "--expr", "2*c.c^* + c^*.c"], 0, "0\n");
    expect(&["lpa", "nf", &g, "--expr", "2*c.c^* + c^*.c"], 0, "3*v\n");
}

#[test]
fn graph_check_summarizes() {
    expect(
        &["graph", "check", &data("toeplitz.graph")],
        0,
        "vertices: 2 (u, v)\nedges: 2 (c: u -> u, f: u -> v)\nsinks: v\n",
    );
}

#[test]
fn hsat_subcommands() {
    let t = data("toeplitz.graph");
    expect_last_line(&["hsat", "check", &t, "--set", "v"], 0, "PASS");
    expect_last_line(&["hsat", "check", &t, "--set", "u"], 1, "FAIL");
    expect(&["hsat", "closure", &data("three_vertex.graph"), "--set", "w"], 0, "{v, w}\n");
    expect(&["hsat", "enumerate", &data("three_vertex.graph")], 0, "{}\n{v, w}\n{u, v, w}\n");
    expect(&["hsat", "enumerate", &data("two_cycle.graph")], 0, "{}\n{u, v}\n");
}

#[test]
fn wreath_subcommands() {
    expect(
        &["wreath", "nf", &data("loop.graph"), &data("loop.ext"), "--algebra", "poly", "--expr", "c^*.[x @ c.e, 0]"],
        0,
        "[x @ e, 0]\n",
    );
    let (g, e) = (data("toeplitz.graph"), data("toeplitz.ext"));
    expect(&["wreath", "mul", &g, &e, "--expr", "u - c.c^*", "--expr", "[p @ e1, e1]"], 0, "[p @ e1, e1]\n");
    expect(&["wreath", "nf", &g, &e, "--expr", "f^*.f"], 0, "v\n");
}

#[test]
fn prop2_verify_on_toeplitz_passes() {
    let o = lwr(&["prop2", "verify", &data("toeplitz.graph"), "--set", "v", "--maxlen", "4", "--samples", "300", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("PASS"));
}

#[test]
fn prop2_rejects_a_non_saturated_set() {
    expect(&["prop2", "verify", &data("toeplitz.graph"), "--set", "u"], 1, "FAIL: subset is not hereditary and saturated\n");
}

#[test]
fn balloons() {
    let o = lwr(&["balloon", "check", &data("toeplitz.graph"), "--vertex", "u"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("quotient is a loop: OK"));
    expect(&["balloon", "check", &data("two_cycle.graph"), "--vertex", "u"], 1, "FAIL: `u` is not a balloon vertex\n");
}

#[test]
fn affinize_relations_prints_six_ok_lines() {
    let o = lwr(&["affinize", "relations"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    let names = [
        "tinv·t = v",
        "t·tinv = v - (1)_{0,0}",
        "t·a_{i,j} = a_{i+1,j}",
        "tinv·a_{0,j} = 0",
        "a_{i,j}·tinv = a_{i,j+1}",
        "a_{i,0}·t = 0",
    ];
    for (line, name) in lines.iter().zip(names) {
        assert!(line.starts_with(&format!("{name}: OK")), "{line}");
    }
    assert_eq!(lines[6], "PASS");
}

#[test]
fn affinize_prop3_and_radical() {
    expect_last_line(&["affinize", "prop3", "--degree", "6", "--window", "4"], 0, "PASS");
    expect_last_line(&["affinize", "radical", "--elements", "30", "--matrices", "10"], 0, "PASS");
    expect_last_line(&["--field", "gf5", "affinize", "relations", "--algebra", "poly"], 0, "PASS");
}

#[test]
fn lemma_probes_pass() {
    for probe in ["assoc", "actions", "ck", "jcapi"] {
        expect_last_line(&["lemma", "probe", probe, "--samples", "100"], 0, "PASS");
    }
    expect_last_line(
        &["lemma", "probe", "ck", &data("toeplitz.graph"), &data("toeplitz.ext")],
        0,
        "PASS",
    );
}

#[test]
fn prop1_check_passes() {
    expect(&["prop1", "check"], 0, "generated: OK (55 targets, longest witness 8)\nPASS\n");
}

#[test]
fn usage_errors_exit_with_two() {
    let g = data("loop.graph");
    for args in [
        vec!["--field", "gf4", "graph", "check", g.as_str()],
        vec!["--field", "r", "graph", "check", g.as_str()],
        vec!["graph", "check", "/nonexistent.graph"],
        vec!["lpa", "nf", g.as_str(), "--expr", "c +"],
        vec!["lpa", "nf", g.as_str(), "--expr", "d"],
        vec!["lpa", "mul", g.as_str(), "--expr", "c"],
        vec!["hsat", "check", g.as_str(), "--set", "nope"],
        vec!["lemma", "probe", "ck", g.as_str()],
        vec!["lemma", "probe", "nothing"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = lwr(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn file_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join(format!("lwr-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "vertex v\n\nedge c v w\n").unwrap();
    let o = lwr(&["graph", "check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.graph: line 3:"), "{err}");
    let ext = dir.join("bad.ext");
    std::fs::write(&ext, "idem 1\nbridge e v\n").unwrap();
    let o = lwr(&["wreath", "nf", &data("loop.graph"), ext.to_str().unwrap(), "--expr", "v"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("bad.ext: line 2:"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let t = data("toeplitz.graph");
    for args in [
        vec!["lemma", "probe", "jcapi", "--samples", "50", "--seed", "3"],
        vec!["lemma", "probe", "assoc", "--samples", "50", "--seed", "3"],
        vec!["prop2", "verify", t.as_str(), "--set", "v", "--samples", "50", "--seed", "9"],
        vec!["affinize", "radical", "--elements", "20", "--matrices", "5", "--seed", "4"],
        vec!["lpa", "graded", t.as_str(), "--expr", "c.c^* + f + c^*"],
    ] {
        let a = lwr(&args);
        let b = lwr(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}
