use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

const WORKED_IDEAL: &str = "x1*x2^2, x2*x3^2, x1^2*x3";
const CYCLE: &str = r#"{"n": 5, "edges": [[1,2],[1,3],[2,4],[3,5],[4,5]]}"#;
const PATH: &str = r#"{"n": 5, "edges": [[1,3],[2,4],[3,5],[4,5]]}"#;

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn vnumkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vnumkit")).args(args).output().unwrap()
}

fn vnumkit_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vnumkit"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn on(kind: &str, path: &NamedTempFile, cmd: &str) -> Value {
    json_of(&vnumkit(&[cmd, kind, path.path().to_str().unwrap(), "--json"]))
}

#[test]
fn vnum_on_the_worked_example() {
    let f = file(WORKED_IDEAL);
    let v = on("--ideal", &f, "vnum");
    assert_eq!(
        v,
        serde_json::json!({"v": 3, "witness": "x2^2*x3", "prime": [1, 3], "method": "definition"})
    );
    let p = f.path().to_str().unwrap();
    let pol = json_of(&vnumkit(&["vnum", "--ideal", p, "--method", "polarization", "--json"]));
    assert_eq!(pol["v"], 3);
    let alpha = json_of(&vnumkit(&["vnum", "--ideal", p, "--method", "alpha", "--json"]));
    assert_eq!(alpha["v"], 3);
    let local = json_of(&vnumkit(&["vnum", "--ideal", p, "--local", "--json"]));
    assert_eq!(local["local"].as_array().unwrap().len(), 4);
}

#[test]
fn ideal_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vnumkit"))
        .args(["vnum", "--ideal", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x1*x2, x3*x4").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json_of(&out)["v"], 2);
}

#[test]
fn ass_and_decomp() {
    let f = file(WORKED_IDEAL);
    let ass = on("--ideal", &f, "ass");
    assert_eq!(ass["primes"].as_array().unwrap().len(), 4);
    assert_eq!(ass["embedded"], serde_json::json!([[1, 2, 3]]));
    let d = on("--ideal", &f, "decomp");
    assert_eq!(d["components"].as_array().unwrap().len(), 4);
    let pol = on("--ideal", &f, "pol");
    assert_eq!(pol["variables"].as_array().unwrap().len(), 6);
}

#[test]
fn graph_commands() {
    let g = file(CYCLE);
    let h = file(PATH);
    assert_eq!(on("--graph", &g, "vnum")["v"], 2);
    assert_eq!(on("--graph", &g, "im")["im"], 1);
    assert_eq!(on("--graph", &h, "vnum")["v"], 1);
    assert_eq!(on("--graph", &h, "im")["im"], 2);
    assert_eq!(on("--graph", &g, "alpha0")["alpha0"], 3);
    assert_eq!(on("--graph", &g, "whisker")["n"], 10);
    assert_eq!(on("--graph", &g, "linegraph")["edges"].as_array().unwrap().len(), 5);
    let s = json_of(&vnumkit(&["suspend", "--graph", g.path().to_str().unwrap(), "--s", "1,4", "--json"]));
    assert_eq!(s["n"], 6);
    assert_eq!(on("--graph", &g, "reg")["reg"], 2);
    assert_eq!(on("--graph", &g, "cm")["cohen_macaulay"], true);
}

#[test]
fn clutter_dual_round_trip() {
    let c = file(r#"{"n": 4, "edges": [[1,2,3],[3,4]]}"#);
    let d = on("--clutter", &c, "dual");
    let back = file(&d["clutter"].to_string());
    let dd = on("--clutter", &back, "dual");
    assert_eq!(dd["clutter"]["edges"], serde_json::json!([[1, 2, 3], [3, 4]]));
}

#[test]
fn betti_table_json() {
    let f = file("x1*x2, x3*x4");
    let b = on("--ideal", &f, "betti");
    assert_eq!(
        b["table"],
        serde_json::json!([{"i": 1, "j": 2, "rank": 2}, {"i": 2, "j": 4, "rank": 1}])
    );
    let g = file("x1^2, x1*x2, x2^2");
    assert_eq!(on("--ideal", &g, "pd")["pd"], 2);
    assert_eq!(on("--ideal", &g, "depth")["depth"], 0);
}

#[test]
fn report_sections() {
    let g = file(CYCLE);
    let r = on("--graph", &g, "report");
    assert_eq!(r["v_number"]["v"], 2);
    assert_eq!(r["graph"]["induced_matching_number"], 1);
    assert_eq!(r["homology"]["regularity"], 2);
    assert!(r["timings_ms"].is_object());
}

#[test]
fn size_guard_is_reported() {
    let g = file(CYCLE);
    let p = g.path().to_str().unwrap();
    let out = vnumkit_env(&["report", "--graph", p, "--json"], "VNUMKIT_SIZE_GUARD", "3");
    let r = json_of(&out);
    assert!(r["homology"]["skipped"].as_str().unwrap().contains("guard"));
    let out = vnumkit_env(&["reg", "--graph", p], "VNUMKIT_SIZE_GUARD", "3");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("VNUMKIT_SIZE_GUARD"));
}

#[test]
fn errors_and_warnings() {
    let bad = file("x1*, x2");
    let out = vnumkit(&["vnum", "--ideal", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let redundant = file("x1, x1*x2");
    let out = vnumkit(&["vnum", "--ideal", redundant.path().to_str().unwrap(), "--json"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not minimal"));
    assert_eq!(json_of(&out)["v"], 0);

    let inclusion = file(r#"{"n": 3, "edges": [[1,2],[1,2,3]]}"#);
    let out = vnumkit(&["vnum", "--clutter", inclusion.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let f = file("x1*x2");
    let out = vnumkit(&["reg", "--ideal", f.path().to_str().unwrap(), "--field", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn survey_exit_codes_and_json() {
    let out = vnumkit(&[
        "survey", "--class", "bipartite", "--n-min", "4", "--n-max", "6", "--trials", "30", "--seed", "3", "--json",
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(2)));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["violations"].as_array().unwrap().is_empty());
    assert_eq!(r["statistics"]["bipartite_v_le_im"]["fails"], 0);

    let out = vnumkit(&["survey", "--n-max", "40"]);
    assert_eq!(out.status.code(), Some(1));
}
