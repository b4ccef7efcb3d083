use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn prisma(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_prisma"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn fresh(command: &str, input: Value) -> Run {
    prisma(&[command, "--no-cache"], &input.to_string())
}

fn remark_cd() -> Value {
    let lex = json!({"type": "lex", "dim": 2});
    json!({"type": "intersect", "args": [
        {"type": "orthant", "dim": 2},
        {"type": "preimage", "matrix": [[1, -1], [1, 0]], "arg": lex},
        {"type": "orthant", "dim": 2},
        {"type": "preimage", "matrix": [[-1, 1], [0, 1]], "arg": lex},
    ]})
}

#[test]
fn closure_of_the_remark_intersection_is_zero() {
    let r = fresh("closure", remark_cd());
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"lineality": [], "hilbert_basis": []}));
}

#[test]
fn single_vertex_tree_closure() {
    let r = fresh("tree-cx", json!({"spec": {"factors": [{"parents": [-1]}]}}));
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["closure"]["hilbert_basis"], json!([[0, 1], [1, 1]]));
}

#[test]
fn hilbert_of_the_orthant() {
    let r = fresh("hilbert", json!({"rays": [[1, 0], [0, 1]]}));
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"lineality": [], "hilbert_basis": [[0, 1], [1, 0]]}));
}

#[test]
fn saturate_and_member() {
    let r = fresh("saturate", json!({"gens": [[1, 0], [1, 2]]}));
    assert_eq!(r.json()["hilbert_basis"], json!([[1, 0], [1, 1], [1, 2]]));
    let r = fresh("saturate", json!({"gens": [[2, 4], [-4, -8]]}));
    assert_eq!(r.json(), json!({"lineality": [[1, 2]], "hilbert_basis": []}));

    let e = json!({"type": "fingen", "gens": [[2, 0], [0, 3]]});
    let r = fresh("member", json!({"expr": e, "point": [4, 3]}));
    assert_eq!(r.json()["verdict"], "yes");
    let r = fresh("member", json!({"expr": e, "point": [1, 1]}));
    assert_eq!(r.json()["verdict"], "no");
}

#[test]
fn span_faces_and_subspace_closure() {
    let r = fresh("span", json!({"type": "fingen", "gens": [[1, 1, 0], [2, 2, 0]]}));
    assert_eq!(r.json()["dim"], 1);
    let r = fresh("faces", json!({"rays": [[1, 0], [1, 2]]}));
    let dims: Vec<i64> = r.json()["faces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["dim"].as_i64().unwrap())
        .collect();
    assert_eq!(dims, vec![0, 1, 1, 2]);
    let r = fresh(
        "closure-in-subspace",
        json!({"expr": {"type": "lex", "dim": 2}, "subspace": [[0, 1]]}),
    );
    assert_eq!(r.json(), json!({"lineality": [], "hilbert_basis": [[0, -1]]}));
}

#[test]
fn tree_order_commands() {
    let spec = json!({"factors": [{"parents": [-1, 0]}]});
    let r = fresh("tree-leq", json!({"spec": spec, "a": {"coords": [0, 2]}, "b": {"coords": [1, -1]}}));
    assert_eq!(r.json(), json!({"leq": true}));
    let r = fresh("tree-join", json!({"spec": spec, "a": {"coords": [0, 2]}, "b": {"coords": [0, -1]}}));
    assert_eq!(r.json()["join"], json!({"coords": [0, 2]}));
    assert_eq!(r.json()["meet"], json!({"coords": [0, -1]}));
}

#[test]
fn decompose_reports_and_fails_for_impure_monoids() {
    let r = prisma(&["decompose", "--no-cache", "--box", "3"], &json!({"type": "orthant", "dim": 2}).to_string());
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["pieces"].as_array().unwrap().len(), 4);
    let r = fresh("decompose", json!({"type": "fingen", "gens": [[1, 0], [1, 2]]}));
    assert_eq!(r.code, 4);
    assert_eq!(r.json()["verification"]["violations"][1]["witnesses"], json!([[1, 1]]));
}

#[test]
fn certify_and_grothendieck() {
    let e = json!({"type": "preimage", "matrix": [[1, 1], [0, 1]], "arg": {"type": "lex", "dim": 2}});
    let r = fresh("certify", e);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["checked"], true);
    assert_eq!(r.json()["certificate"]["conclusion"], "prismal");

    let r = fresh("grothendieck", json!({"generators": 2, "relations": [[[2, 0], [0, 2]]]}));
    assert_eq!(r.json()["free_rank"], 1);
    assert_eq!(r.json()["invariant_factors"], json!([2]));
    let r = fresh("grothendieck", json!({"generators": 1, "relations": [[[1], [2]]]}));
    assert_eq!(r.json()["trivial"], true);
}

#[test]
fn input_errors_carry_paths() {
    let r = fresh("saturate", json!({"gens": [[1, 0], [0, "x"]]}));
    assert_eq!(r.code, 2);
    let msg = r.json()["error"]["message"].as_str().unwrap().to_owned();
    assert!(msg.contains("$.gens[1][1]"), "{msg}");

    let r = fresh("closure", json!({"type": "intersect", "args": [{"type": "lex", "dim": 2}, {"type": "lex", "dim": 3}]}));
    assert_eq!(r.code, 2);
    let r = prisma(&["hilbert", "--no-cache"], "{\"rays\": [[1, 0]");
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], "input");
    let r = fresh("grothendieck", json!({"generators": 2, "relations": [[[1], [0, 1]]]}));
    assert_eq!(r.code, 2);
    assert!(r.json()["error"]["message"].as_str().unwrap().contains("$.relations[0][0]"));
}

#[test]
fn exit_codes() {
    assert_eq!(prisma(&["verify", "no-such-suite", "--no-cache"], "").code, 2);
    assert_eq!(prisma(&["frobnicate"], "").code, 2);
    // The search for a representation runs out of budget before it can
    // rule the point out.
    let gens = json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 2], [1, 0, 1, 3], [0, 1, 1, 5], [2, 1, 0, 7]]);
    let r = fresh("member", json!({"expr": {"type": "fingen", "gens": gens}, "point": [300, 300, 300, 1]}));
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["error"]["kind"], "unsupported");
    assert_eq!(prisma(&["verify", "remark-1-5", "--no-cache"], "").code, 0);
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let input = json!({"gens": [[3, 1], [1, 3], [1, 1]]}).to_string();
    let reordered = "{ \"gens\" : [[3,1],[1,3],[1,1]] }";
    let miss = prisma(&["saturate", "--cache-dir", d], &input);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let hit = prisma(&["saturate", "--cache-dir", d], reordered);
    let none = prisma(&["saturate", "--no-cache"], &input);
    assert_eq!(miss.stdout, hit.stdout);
    assert_eq!(miss.stdout, none.stdout);
    let check = prisma(&["saturate", "--cache-dir", d, "--check-cache"], &input);
    assert_eq!(check.code, 0);

    // A tampered entry is caught by the comparison mode.
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "0\n{}\n").unwrap();
    let check = prisma(&["saturate", "--cache-dir", d, "--check-cache"], &input);
    assert_eq!(check.code, 4);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_prisma"))
        .args(["span"])
        .env("PRISMA_CACHE_DIR", dir.path())
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"type":"orthant","dim":3}"#)
        .unwrap();
    assert!(child.wait().unwrap().success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let a = prisma(&["verify", "hilbert-oracle", "--dim", "2", "--trials", "50", "--seed", "7", "--no-cache"], "");
    let b = prisma(&["verify", "hilbert-oracle", "--dim", "2", "--trials", "50", "--seed", "7", "--no-cache"], "");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let r = prisma(&["verify", "tree-order", "--max-vertices", "5", "--box", "2", "--no-cache"], "");
    assert_eq!(r.code, 0);
    assert!(r.json()["details"]["pairs_compared"].as_u64().unwrap() > 0);
}
