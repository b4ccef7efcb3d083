//! Acceptance criteria, run against the built binary. Prints one line per
//! criterion and exits nonzero if any fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde_json::{json, Value};

struct Invocation {
    args: Vec<String>,
    input: String,
}

impl Invocation {
    fn new(args: &[&str], input: &str) -> Invocation {
        Invocation {
            args: args.iter().map(|s| s.to_string()).collect(),
            input: input.to_owned(),
        }
    }

    fn run(&self, extra: &[&str]) -> (i32, String, Duration) {
        let start = Instant::now();
        let mut child = Command::new(env!("CARGO_BIN_EXE_prisma"))
            .args(&self.args)
            .args(extra)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .expect("spawn prisma");
        child
            .stdin
            .take()
            .unwrap()
            .write_all(self.input.as_bytes())
            .unwrap();
        let out = child.wait_with_output().expect("wait for prisma");
        (
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
            start.elapsed(),
        )
    }
}

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Duration,
    runs: Vec<Invocation>,
    check: fn(&[Value]) -> Result<(), String>,
}

fn verify(suite: &str, extra: &[&str]) -> Invocation {
    let mut args = vec!["verify", suite];
    args.extend_from_slice(extra);
    Invocation::new(&args, "")
}

fn suite_passed(v: &Value) -> Result<(), String> {
    if v["passed"] != json!(true) {
        let failed: Vec<Value> = v["properties"]
            .as_array()
            .into_iter()
            .flatten()
            .filter(|p| p["passed"] != json!(true))
            .cloned()
            .collect();
        return Err(format!("suite {} failed: {}", v["suite"], Value::Array(failed)));
    }
    for p in v["properties"].as_array().ok_or("report has no properties")? {
        if p["checked"].as_u64().unwrap_or(0) == 0 {
            return Err(format!("property {} checked nothing", p["name"]));
        }
    }
    Ok(())
}

fn remark_document() -> String {
    let lex = json!({"type": "lex", "dim": 2});
    json!({"type": "intersect", "args": [
        {"type": "orthant", "dim": 2},
        {"type": "preimage", "matrix": [[1, -1], [1, 0]], "arg": lex},
        {"type": "orthant", "dim": 2},
        {"type": "preimage", "matrix": [[-1, 1], [0, 1]], "arg": lex},
    ]})
    .to_string()
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "closure of C∩D is {0}, closure(C) ∩ closure(D) is generated by (1,1)",
            limit: secs(1),
            runs: vec![
                verify("remark-1-5", &[]),
                Invocation::new(&["closure"], &remark_document()),
            ],
            check: |out| {
                suite_passed(&out[0])?;
                let d = &out[0]["details"];
                let empty = json!({"lineality": [], "hilbert_basis": []});
                if d["closure_of_intersection"] != empty || out[1] != empty {
                    return Err(format!("closure of C∩D is {}", out[1]));
                }
                if d["intersection_of_closures"] != json!({"lineality": [], "hilbert_basis": [[1, 1]]}) {
                    return Err(format!("intersection of closures is {}", d["intersection_of_closures"]));
                }
                Ok(())
            },
        },
        Criterion {
            id: 2,
            title: "Hilbert bases regenerate [0,8]^n and are irreducible, 50 cones per dim 2, 3",
            limit: secs(60),
            runs: vec![verify("hilbert-oracle", &["--trials", "50", "--box", "8", "--seed", "7"])],
            check: |out| {
                suite_passed(&out[0])?;
                (out[0]["details"]["dims"] == json!([2, 3]))
                    .then_some(())
                    .ok_or_else(|| "wrong dimensions".into())
            },
        },
        Criterion {
            id: 3,
            title: "tree order equals the chain-extension oracle, trees up to 5 vertices, [-2,2]^m",
            limit: secs(120),
            runs: vec![verify("tree-order", &["--max-vertices", "5", "--box", "2"])],
            check: |out| {
                suite_passed(&out[0])?;
                let pairs = out[0]["details"]["pairs_compared"].as_u64().unwrap_or(0);
                (pairs > 0).then_some(()).ok_or_else(|| "no pairs compared".into())
            },
        },
        Criterion {
            id: 4,
            title: "canonical associated monoid is the intersection over chain extensions on [0,3]^2m",
            limit: secs(120),
            runs: vec![verify("chain-intersection", &["--max-vertices", "4", "--box", "3"])],
            check: |out| suite_passed(&out[0]),
        },
        Criterion {
            id: 5,
            title: "closure of an intersection of pure monoids inside V, 30 trials on [-6,6]^n",
            limit: secs(120),
            runs: vec![verify("closure-basic", &["--trials", "30", "--box", "6", "--dim", "3"])],
            check: |out| suite_passed(&out[0]),
        },
        Criterion {
            id: 6,
            title: "face decomposition of 30 saturated monoids holds on [0,8]^n",
            limit: secs(120),
            runs: vec![verify("face-decomposition", &["--trials", "30", "--box", "8", "--dim", "3"])],
            check: |out| suite_passed(&out[0]),
        },
        Criterion {
            id: 7,
            title: "associated monoids are pure and roots can be extracted for n = 2, 3, 4",
            limit: secs(30),
            runs: vec![
                verify("pure-cx", &["--max-vertices", "4"]),
                verify("root-extraction", &["--multipliers", "2,3,4"]),
            ],
            check: |out| {
                suite_passed(&out[0])?;
                suite_passed(&out[1])
            },
        },
        Criterion {
            id: 8,
            title: "prismality certificates are produced and checked",
            limit: secs(10),
            runs: vec![verify("prismality-certificates", &["--max-vertices", "4"])],
            check: |out| suite_passed(&out[0]),
        },
        Criterion {
            id: 9,
            title: "group completions: idempotent presentations trivial, a+a=b+b gives Z + Z/2",
            limit: secs(5),
            runs: vec![
                verify("grothendieck-idempotent", &["--trials", "20"]),
                Invocation::new(
                    &["grothendieck"],
                    &json!({"generators": 2, "relations": [[[2, 0], [0, 2]]]}).to_string(),
                ),
            ],
            check: |out| {
                suite_passed(&out[0])?;
                let g = &out[1];
                (g["free_rank"] == json!(1) && g["invariant_factors"] == json!([2]))
                    .then_some(())
                    .ok_or_else(|| format!("completion is {g}"))
            },
        },
    ]
}

fn evaluate(c: &Criterion, cache: &str) -> Result<String, String> {
    let mut docs = Vec::new();
    let mut elapsed = Duration::ZERO;
    for inv in &c.runs {
        let (code, stdout, t) = inv.run(&["--no-cache"]);
        elapsed += t;
        if code != 0 {
            return Err(format!("exit {code}: {stdout}"));
        }
        docs.push(serde_json::from_str(&stdout).map_err(|e| format!("bad JSON: {e}"))?);
    }
    (c.check)(&docs)?;
    if elapsed > c.limit {
        return Err(format!("took {elapsed:.2?}, limit {:.0?}", c.limit));
    }
    // Warm the shared cache so that the determinism criterion sees hits.
    for inv in &c.runs {
        inv.run(&["--cache-dir", cache]);
    }
    Ok(format!("{elapsed:.2?}"))
}

/// Two uncached runs, a cache miss and a cache hit must agree byte for byte.
fn determinism(all: &[Criterion]) -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().to_str().ok_or("non-UTF-8 temp path")?;
    let mut compared = 0;
    for c in all {
        for inv in &c.runs {
            let outputs = [
                inv.run(&["--no-cache"]),
                inv.run(&["--no-cache"]),
                inv.run(&["--cache-dir", cache]),
                inv.run(&["--cache-dir", cache]),
            ];
            let (code, first, _) = &outputs[0];
            for (i, (c2, o, _)) in outputs.iter().enumerate().skip(1) {
                if c2 != code || o != first {
                    return Err(format!("criterion {}: run {i} of {:?} differs", c.id, inv.args));
                }
            }
            compared += 1;
        }
    }
    let entries = std::fs::read_dir(dir.path()).map_err(|e| e.to_string())?.count();
    if entries != compared {
        return Err(format!("{compared} invocations but {entries} cache entries"));
    }
    Ok(format!("{compared} invocations"))
}

fn main() {
    let all = criteria();
    let warm = tempfile::tempdir().expect("temp dir");
    let warm_path = warm.path().to_str().expect("UTF-8 temp path").to_owned();
    let mut failures = 0;
    for c in &all {
        match evaluate(c, &warm_path) {
            Ok(note) => println!("PASS {:>2}  {} ({note})", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2}  {}: {why}", c.id, c.title);
            }
        }
    }
    match determinism(&all) {
        Ok(note) => println!("PASS 10  outputs are byte-identical across runs, with and without cache ({note})"),
        Err(why) => {
            failures += 1;
            println!("FAIL 10  outputs are byte-identical across runs, with and without cache: {why}");
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
