//! Command dispatch for the `prisma` binary: one JSON document in, one JSON
//! document out.

pub mod cache;
mod commands;
pub mod json;
pub mod suites;

use prisma::{ExprError, LinError, PresentationError, TreeError};
use serde_json::{json, Value};
use thiserror::Error;

pub const COMMANDS: &[&str] = &[
    "hilbert",
    "saturate",
    "closure",
    "closure-in-subspace",
    "member",
    "span",
    "faces",
    "decompose",
    "tree-leq",
    "tree-join",
    "tree-cx",
    "certify",
    "grothendieck",
    "verify",
];

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Unsupported(_) => "unsupported",
            CliError::Io(_) => "io",
        }
    }
}

impl From<LinError> for CliError {
    fn from(e: LinError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Lin(l) => l.into(),
            other => CliError::Unsupported(other.to_string()),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::TooLarge { .. } | TreeError::NoInversePair => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Tunables shared by the commands and suites; `None` selects the
/// per-command default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub box_bound: Option<i64>,
    pub multipliers: Option<Vec<i64>>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub max_vertices: Option<usize>,
    pub dim: Option<usize>,
}

impl Options {
    fn to_json(&self) -> Value {
        json!({
            "box": self.box_bound,
            "multipliers": self.multipliers,
            "seed": self.seed,
            "trials": self.trials,
            "max_vertices": self.max_vertices,
            "dim": self.dim,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: String,
    pub suite: Option<String>,
    /// Raw input text; parsed here so that syntax errors map to exit 2.
    pub input: Option<String>,
    pub options: Options,
}

/// Exit code and rendered standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn from_json(code: i32, v: &Value) -> Outcome {
        let mut stdout = serde_json::to_string_pretty(v).expect("serializable");
        stdout.push('\n');
        Outcome { code, stdout }
    }

    fn from_error(e: &CliError) -> Outcome {
        Outcome::from_json(
            e.exit_code(),
            &json!({"error": {"kind": e.kind(), "message": e.to_string()}}),
        )
    }
}

fn parse_input(req: &Request) -> Result<Option<Value>, CliError> {
    req.input
        .as_deref()
        .map(|text| {
            serde_json::from_str(text).map_err(|e| {
                CliError::Input(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()))
            })
        })
        .transpose()
}

fn compute(req: &Request, input: Option<&Value>) -> Result<Outcome, CliError> {
    if req.command == "verify" {
        let suite = req
            .suite
            .as_deref()
            .ok_or_else(|| CliError::Input("verify needs a suite name".into()))?;
        let report = suites::run(suite, &req.options)?;
        let code = if report.passed { 0 } else { EXIT_VERIFICATION };
        return Ok(Outcome::from_json(code, &report.to_json()));
    }
    let input = input.ok_or_else(|| CliError::Input("no input document".into()))?;
    let (code, v) = commands::run(&req.command, input, &req.options)?;
    Ok(Outcome::from_json(code, &v))
}

/// Cache key: the command, suite, options and canonicalized input.
pub fn cache_key(req: &Request, input: Option<&Value>) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": req.command,
        "suite": req.suite,
        "options": req.options.to_json(),
        "input": input.map(json::canonical),
    })
}

/// Runs a request, consulting and filling the cache when one is given.
/// Errors are rendered as JSON documents with their exit codes and are
/// never cached.
pub fn run(req: &Request, store: Option<&cache::Cache>) -> Outcome {
    if !COMMANDS.contains(&req.command.as_str()) {
        return Outcome::from_error(&CliError::Input(format!("unknown command \"{}\"", req.command)));
    }
    let input = match parse_input(req) {
        Ok(v) => v,
        Err(e) => return Outcome::from_error(&e),
    };
    let key = cache_key(req, input.as_ref());
    if let Some(hit) = store.and_then(|c| c.get(&key)) {
        return hit;
    }
    match compute(req, input.as_ref()) {
        Ok(out) => {
            if let Some(c) = store {
                // A failed write only costs a recomputation later.
                let _ = c.put(&key, &out);
            }
            out
        }
        Err(e) => Outcome::from_error(&e),
    }
}

/// Recomputes a request and compares it with the cached entry; a missing
/// entry is written. Returns the fresh outcome, or a verification failure
/// when the cached bytes differ.
pub fn check_cache(req: &Request, store: &cache::Cache) -> Outcome {
    let fresh = run(req, None);
    let Ok(input) = parse_input(req) else { return fresh };
    let key = cache_key(req, input.as_ref());
    match store.get(&key) {
        Some(cached) if cached != fresh => Outcome::from_json(
            EXIT_VERIFICATION,
            &json!({"error": {"kind": "cache", "message": "cached result differs from a fresh computation"}}),
        ),
        Some(_) => fresh,
        None => {
            if fresh.code == 0 || fresh.code == EXIT_VERIFICATION {
                let _ = store.put(&key, &fresh);
            }
            fresh
        }
    }
}
