use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use genusfield::genus::GenusResult;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_genusfield"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "non-integer number {}", n),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(m) => m.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn committed_examples_are_reproduced() {
    for kind in ["kummer", "as", "witt", "cyclo"] {
        let job = docs().join(format!("{}.job.json", kind));
        let o = run(&[kind, "--in", job.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", kind, String::from_utf8_lossy(&o.stderr));
        let expected = std::fs::read_to_string(docs().join(format!("{}.json", kind))).unwrap();
        assert_eq!(stdout(&o), expected, "{}", kind);
    }
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: [&[&str]; 4] = [
        &["witt", "--q", "3", "--beta", "1/T+1, 1/(T+1)+T", "--output", "json"],
        &["kummer", "--q", "5", "--l", "2", "--gamma", "1", "--D", "T^3+3*T^2+2*T", "--output", "json"],
        &["as", "--q", "9", "--alpha", "u/T^2 + T^4", "--output", "json"],
        &["cyclo", "--q", "3", "--N", "T^2(T+1)", "--chars", "1,0;0,3", "--output", "json"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_no_floats(&v);
        assert_eq!(canonical(&v), text);
        let typed: GenusResult = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical(&serde_json::to_value(&typed).unwrap()), text);
        typed.check().unwrap();
        let again = run(args);
        assert_eq!(stdout(&again), text, "same input, same output");
    }
}

#[test]
fn documented_invocations() {
    let o = run(&["witt", "--q", "3", "--beta", "1/T+1, 1/(T+1)+T", "--output", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let deltas = &v["details"]["witt"]["deltas"];
    assert_eq!(deltas[0]["entries"], serde_json::json!(["1/T", "(T+1)/T^2"]));
    assert_eq!(deltas[1]["entries"], serde_json::json!(["0", "1/(T+1)"]));
    assert_eq!(v["details"]["witt"]["mu"]["entries"], serde_json::json!(["1", "T"]));

    let o = run(&["kummer", "--q", "5", "--l", "2", "--gamma", "1", "--D", "T^3+3*T^2+2*T", "--output", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
    assert_eq!(v["genus_degree"], 4);
    assert_eq!(v["details"]["kummer"]["case"], 1);

    let o = run(&["as", "--q", "3", "--alpha", "1/T", "--output", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["genus_degree"], 1);
    assert_eq!(v["infinity"]["h"], 3);
}

#[test]
fn seed_is_recorded_and_does_not_change_the_field() {
    let base = ["kummer", "--q", "5", "--l", "2", "--gamma", "2", "--D", "T^4+T^2+1", "--output", "json"];
    let a: Value = serde_json::from_slice(&run(&base).stdout).unwrap();
    let mut seeded = base.to_vec();
    seeded.extend(["--seed", "99"]);
    let b: Value = serde_json::from_slice(&run(&seeded).stdout).unwrap();
    assert_eq!(b["seed"], 99);
    assert_eq!(a["generators"], b["generators"]);
    assert_eq!(a["genus_degree"], b["genus_degree"]);
}

#[test]
fn validation_failures_exit_2() {
    let bad: [&[&str]; 8] = [
        &["as", "--q", "3", "--alpha", "T^3-T"],
        &["as", "--q", "6", "--alpha", "1/T"],
        &["kummer", "--q", "5", "--l", "3", "--gamma", "1", "--D", "T"],
        &["kummer", "--q", "5", "--l", "2", "--gamma", "1", "--D", "T^2"],
        &["witt", "--q", "3", "--beta", "1/T, T, 1/T", "--witt-cap", "2"],
        &["cyclo", "--q", "3", "--N", "T", "--chars", "1,1"],
        &["as", "--q", "3", "--alpha", "1/(T"],
        &["as", "--q", "3"],
    ];
    for args in bad {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        assert!(o.stdout.is_empty(), "{:?}", args);
        assert!(!o.stderr.is_empty(), "{:?}", args);
    }
}

#[test]
fn job_files_are_strict() {
    let dir = std::env::temp_dir().join(format!("genusfield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let unknown = write("unknown.json", r#"{"field":{"p":3},"job":{"artin-schreier":{"alpha":"1/T"}},"colour":1}"#);
    let o = run(&["as", "--in", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));

    let mismatch = write("mismatch.json", r#"{"field":{"p":3},"job":{"artin-schreier":{"alpha":"1/T"}}}"#);
    assert_eq!(run(&["witt", "--in", mismatch.to_str().unwrap()]).status.code(), Some(2));

    let ok = write("ok.json", r#"{"field":{"p":3,"f":2,"modulus":"u^2+2*u+2"},"job":{"witt":{"beta":["u/T"]}}}"#);
    let o = run(&["witt", "--in", ok.to_str().unwrap(), "--output", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"]["modulus"], "u^2+2*u+2");

    assert_eq!(run(&["as", "--in", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_output_names_the_degrees() {
    let o = run(&["as", "--q", "3", "--alpha", "1/T + 1/(T+1) + T"]);
    let s = stdout(&o);
    assert!(s.contains("[K_g:K] = 9"), "{}", s);
    assert!(s.contains("y_1^3 - y_1 = 1/T"), "{}", s);
}
