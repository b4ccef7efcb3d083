//! Reading and writing the JSON document formats. Parse errors carry the
//! JSON path of the offending value.

use std::str::FromStr;

use num_bigint::BigInt;
use prisma::exactlin::{IntMatrix, IntVector, Subspace};
use prisma::grothendieck::MonoidPresentation;
use prisma::hilbert::SaturatedMonoid;
use prisma::monoidexpr::MonoidExpr;
use prisma::treegroup::{ParasemifieldSpec, RootedTree};
use serde_json::{json, Map, Number, Value};

use crate::CliError;

/// A value together with its location in the input document.
#[derive(Clone, Copy)]
pub struct At<'a> {
    pub value: &'a Value,
    path: &'a Path<'a>,
}

pub enum Path<'a> {
    Root,
    Key(&'a Path<'a>, &'a str),
    Index(&'a Path<'a>, usize),
}

impl std::fmt::Display for Path<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Path::Root => write!(f, "$"),
            Path::Key(p, k) => write!(f, "{p}.{k}"),
            Path::Index(p, i) => write!(f, "{p}[{i}]"),
        }
    }
}

impl<'a> At<'a> {
    pub fn root(value: &'a Value) -> At<'a> {
        At {
            value,
            path: &Path::Root,
        }
    }

    pub fn error(&self, msg: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("{}: {msg}", self.path))
    }

    /// Runs `f` on the member `key`, failing if it is absent.
    pub fn field<T>(&self, key: &str, f: impl FnOnce(At<'_>) -> Result<T, CliError>) -> Result<T, CliError> {
        self.opt_field(key, f)?
            .ok_or_else(|| self.error(format!("missing field \"{key}\"")))
    }

    pub fn opt_field<T>(
        &self,
        key: &str,
        f: impl FnOnce(At<'_>) -> Result<T, CliError>,
    ) -> Result<Option<T>, CliError> {
        let obj = self.value.as_object().ok_or_else(|| self.error("expected an object"))?;
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => {
                let path = Path::Key(self.path, key);
                f(At { value: v, path: &path }).map(Some)
            }
        }
    }

    pub fn items<T>(&self, mut f: impl FnMut(At<'_>) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
        let arr = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        arr.iter()
            .enumerate()
            .map(|(i, v)| {
                let path = Path::Index(self.path, i);
                f(At { value: v, path: &path })
            })
            .collect()
    }

    pub fn int(&self) -> Result<BigInt, CliError> {
        match self.value {
            Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| self.error("expected an integer")),
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn usize(&self) -> Result<usize, CliError> {
        usize::try_from(self.int()?).map_err(|_| self.error("expected a nonnegative integer"))
    }

    pub fn i64(&self) -> Result<i64, CliError> {
        i64::try_from(self.int()?).map_err(|_| self.error("integer out of range"))
    }

    pub fn string(&self) -> Result<String, CliError> {
        self.value
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| self.error("expected a string"))
    }

    pub fn vector(&self) -> Result<IntVector, CliError> {
        Ok(IntVector::new(self.items(|x| x.int())?))
    }

    /// A vector of a known length.
    pub fn vector_of(&self, dim: usize) -> Result<IntVector, CliError> {
        let v = self.vector()?;
        if v.dim() != dim {
            return Err(self.error(format!("expected {dim} coordinates, found {}", v.dim())));
        }
        Ok(v)
    }

    /// Rejects object keys outside `allowed`.
    pub fn only_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        let obj = self.value.as_object().ok_or_else(|| self.error("expected an object"))?;
        match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(self.error(format!(
                "unexpected key \"{k}\" (allowed: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    /// A list of vectors, all of length `dim` when given, otherwise of a
    /// common length that is returned alongside.
    pub fn vectors(&self, dim: Option<usize>) -> Result<(Vec<IntVector>, Option<usize>), CliError> {
        let mut d = dim;
        let rows = self.items(|x| {
            let v = x.vector()?;
            match d {
                Some(n) if n != v.dim() => {
                    Err(x.error(format!("expected {n} coordinates, found {}", v.dim())))
                }
                _ => {
                    d = Some(v.dim());
                    Ok(v)
                }
            }
        })?;
        Ok((rows, d))
    }
}

fn need_dim(at: &At<'_>, found: Option<usize>) -> Result<usize, CliError> {
    match found {
        Some(n) => Ok(n),
        None => at.field("dim", |d| d.usize()),
    }
}

pub fn parse_expr(at: At<'_>) -> Result<MonoidExpr, CliError> {
    let kind = at.field("type", |t| t.string())?;
    let kind = kind.as_str();
    let explicit_dim = at.opt_field("dim", |d| d.usize())?;
    let e = match kind {
        "fingen" => {
            let (gens, d) = at.field("gens", |g| g.vectors(explicit_dim))?;
            let n = need_dim(&at, d)?;
            MonoidExpr::fingen(n, &gens).map_err(|e| at.error(e))?
        }
        "lex" => MonoidExpr::Lex(at.field("dim", |d| d.usize())?),
        "orthant" => MonoidExpr::Orthant(at.field("dim", |d| d.usize())?),
        "lattice" => MonoidExpr::FullLattice(at.field("dim", |d| d.usize())?),
        "intersect" | "product" => {
            let args = at.field("args", |a| a.items(parse_expr))?;
            let mut it = args.into_iter();
            let first = it.next().ok_or_else(|| at.error("\"args\" must be nonempty"))?;
            let folded = it.fold(first, |acc, e| {
                if kind == "intersect" {
                    MonoidExpr::intersect(acc, e)
                } else {
                    MonoidExpr::product(acc, e)
                }
            });
            folded.validate().map_err(|e| at.error(e))?;
            folded
        }
        "preimage" => {
            let arg = at.field("arg", parse_expr)?;
            let (rows, d) = at.field("matrix", |m| m.vectors(explicit_dim))?;
            if rows.len() != arg.ambient_dim() {
                return Err(at.error(format!(
                    "matrix has {} rows but its argument has dimension {}",
                    rows.len(),
                    arg.ambient_dim()
                )));
            }
            let n = need_dim(&at, d)?;
            let m = IntMatrix::new(n, rows).map_err(|e| at.error(e))?;
            MonoidExpr::preimage(m, arg).map_err(|e| at.error(e))?
        }
        "restrict" => {
            let arg = at.field("arg", parse_expr)?;
            let n = arg.ambient_dim();
            let w = at.field("subspace", |s| parse_subspace(s, n))?;
            MonoidExpr::restrict(arg, w).map_err(|e| at.error(e))?
        }
        "tree-negative" => MonoidExpr::TreeNegative(at.field("parents", parse_parents)?),
        other => return Err(at.error(format!("unknown expression type \"{other}\""))),
    };
    if let Some(d) = explicit_dim {
        if d != e.ambient_dim() {
            return Err(at.error(format!("\"dim\" is {d} but the expression has dimension {}", e.ambient_dim())));
        }
    }
    Ok(e)
}

/// A subspace given by spanning vectors.
pub fn parse_subspace(at: At<'_>, dim: usize) -> Result<Subspace, CliError> {
    let (gens, _) = at.vectors(Some(dim))?;
    Subspace::span(dim, &gens).map_err(|e| at.error(e))
}

fn parse_parents(at: At<'_>) -> Result<RootedTree, CliError> {
    let parents = at.items(|p| p.i64())?;
    RootedTree::from_signed(&parents).map_err(|e| at.error(e))
}

pub fn parse_spec(at: At<'_>) -> Result<ParasemifieldSpec, CliError> {
    let factors = at.field("factors", |f| f.items(|t| t.field("parents", parse_parents)))?;
    Ok(ParasemifieldSpec::new(factors))
}

/// `{"coords": [...]}`, or a list of such objects (one per factor) that is
/// concatenated.
pub fn parse_element(at: At<'_>, dim: usize) -> Result<IntVector, CliError> {
    let v = if at.value.is_array() {
        let parts = at.items(|p| p.field("coords", |c| c.vector()))?;
        IntVector::new(parts.into_iter().flat_map(IntVector::into_coords).collect())
    } else {
        at.field("coords", |c| c.vector())?
    };
    if v.dim() != dim {
        return Err(at.error(format!("expected {dim} coordinates, found {}", v.dim())));
    }
    Ok(v)
}

pub fn parse_presentation(at: At<'_>) -> Result<MonoidPresentation, CliError> {
    let g = at.field("generators", |g| g.usize())?;
    let relations = at.field("relations", |r| {
        r.items(|pair| {
            let sides = pair.items(|s| s.vector_of(g))?;
            match <[IntVector; 2]>::try_from(sides) {
                Ok([u, v]) => Ok((u, v)),
                Err(_) => Err(pair.error("a relation is a pair [u, v]")),
            }
        })
    })?;
    MonoidPresentation::new(g, relations).map_err(|e| at.error(e))
}

pub fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer"))
}

pub fn vector(v: &IntVector) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn vectors<'a>(vs: impl IntoIterator<Item = &'a IntVector>) -> Value {
    Value::Array(vs.into_iter().map(vector).collect())
}

pub fn saturated(s: &SaturatedMonoid) -> Value {
    json!({
        "lineality": vectors(s.lineality_basis.rows()),
        "hilbert_basis": vectors(&s.hilbert_basis),
    })
}

pub fn element(v: &IntVector) -> Value {
    json!({ "coords": vector(v) })
}

pub fn expr(e: &MonoidExpr) -> Value {
    match e {
        MonoidExpr::FinGen(m) => json!({"type": "fingen", "dim": m.ambient_dim(), "gens": vectors(m.gens())}),
        MonoidExpr::Lex(n) => json!({"type": "lex", "dim": n}),
        MonoidExpr::Orthant(n) => json!({"type": "orthant", "dim": n}),
        MonoidExpr::FullLattice(n) => json!({"type": "lattice", "dim": n}),
        MonoidExpr::Intersect(a, b) => json!({"type": "intersect", "args": [expr(a), expr(b)]}),
        MonoidExpr::Product(a, b) => json!({"type": "product", "args": [expr(a), expr(b)]}),
        MonoidExpr::Preimage(m, a) => json!({
            "type": "preimage",
            "dim": m.ncols(),
            "matrix": vectors(m.rows()),
            "arg": expr(a),
        }),
        MonoidExpr::Restrict(a, w) => json!({
            "type": "restrict",
            "subspace": vectors(w.basis().rows()),
            "arg": expr(a),
        }),
        MonoidExpr::TreeNegative(t) => json!({"type": "tree-negative", "parents": t.to_signed()}),
    }
}

/// Object keys sorted recursively, for hashing.
pub fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonical).collect()),
        other => other.clone(),
    }
}
