use prisma::cone::Cone;
use prisma::exactlin::{IntMatrix, IntVector};
use prisma::facedecomp::{decompose, verify_decomposition};
use prisma::hilbert::{hilbert_basis, saturate_monoid, AffineMonoid, Membership, DEFAULT_BUDGET};
use prisma::monoidexpr::{MonoidExpr, PrismalityCertificate, Verdict};
use prisma::treegroup::{GeneratorTuple, ParasemifieldSpec};
use serde_json::{json, Value};

use crate::json::{self, parse_element, parse_expr, parse_presentation, parse_spec, parse_subspace, At};
use crate::{CliError, Options, EXIT_VERIFICATION};

/// `{"rays": .., "lineality": ..}` or `{"equations": .., "inequalities": ..}`,
/// with `"dim"` required only when every list is empty.
fn parse_cone(at: At<'_>) -> Result<Cone, CliError> {
    at.only_keys(&["dim", "rays", "lineality", "equations", "inequalities"])?;
    let mut dim = at.opt_field("dim", |d| d.usize())?;
    let mut list = |key: &str| -> Result<Vec<IntVector>, CliError> {
        let found = at.opt_field(key, |l| l.vectors(dim))?;
        Ok(match found {
            Some((rows, d)) => {
                dim = dim.or(d);
                rows
            }
            None => vec![],
        })
    };
    let hrep = at.value.get("equations").is_some() || at.value.get("inequalities").is_some();
    let (a, b) = if hrep {
        (list("equations")?, list("inequalities")?)
    } else {
        (list("rays")?, list("lineality")?)
    };
    let n = dim.ok_or_else(|| at.error("cannot infer the dimension; add \"dim\""))?;
    Ok(if hrep {
        Cone::from_hrep(n, &a, &b)?
    } else {
        Cone::from_vrep(n, &a, &b)?
    })
}

fn parse_monoid(at: At<'_>) -> Result<AffineMonoid, CliError> {
    at.only_keys(&["dim", "gens"])?;
    let dim = at.opt_field("dim", |d| d.usize())?;
    let (gens, d) = at.field("gens", |g| g.vectors(dim))?;
    let n = d.ok_or_else(|| at.error("cannot infer the dimension; add \"dim\""))?;
    Ok(AffineMonoid::new(n, &gens)?)
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

fn certificate(c: &PrismalityCertificate) -> Value {
    let mut node = json!({
        "rule": c.rule.name(),
        "kind": c.expr.kind(),
        "dim": c.expr.ambient_dim(),
        "conclusion": match c.conclusion {
            prisma::monoidexpr::Conclusion::Prismal => "prismal",
            prisma::monoidexpr::Conclusion::AlmostPrismal => "almost-prismal",
        },
        "purity": match c.purity {
            prisma::monoidexpr::PurityEvidence::Structural => "structural",
            prisma::monoidexpr::PurityEvidence::SaturationCheck => "saturation-check",
            prisma::monoidexpr::PurityEvidence::Absent => "absent",
        },
    });
    if let Some(m) = &c.map {
        node["map"] = json::vectors(m.rows());
    }
    node["children"] = Value::Array(c.children.iter().map(certificate).collect());
    node
}

fn two_elements(at: At<'_>) -> Result<(ParasemifieldSpec, IntVector, IntVector), CliError> {
    let spec = at.field("spec", parse_spec)?;
    let m = spec.vertex_count();
    let a = at.field("a", |x| parse_element(x, m))?;
    let b = at.field("b", |x| parse_element(x, m))?;
    Ok((spec, a, b))
}

pub fn run(command: &str, input: &Value, opts: &Options) -> Result<(i32, Value), CliError> {
    let at = At::root(input);
    let out = match command {
        "hilbert" => json::saturated(&hilbert_basis(&parse_cone(at)?)),
        "saturate" => json::saturated(&saturate_monoid(&parse_monoid(at)?)),
        "closure" => json::saturated(&parse_expr(at)?.closure()?),
        "closure-in-subspace" => {
            let e = at.field("expr", parse_expr)?;
            let w = at.field("subspace", |s| parse_subspace(s, e.ambient_dim()))?;
            json::saturated(&e.closure_in_subspace(&w)?)
        }
        "member" => {
            let e = at.field("expr", parse_expr)?;
            let p = at.field("point", |p| p.vector_of(e.ambient_dim()))?;
            let v = e.member(&p)?;
            if v == Verdict::Unknown {
                return Err(CliError::Unsupported(
                    "membership undecided within the search budget".into(),
                ));
            }
            let mut out = json!({ "verdict": verdict(v) });
            if let MonoidExpr::FinGen(m) = &e {
                if let Membership::Yes(c) = m.membership(&p, DEFAULT_BUDGET)? {
                    out["coefficients"] = json::vector(&IntVector::new(c));
                    out["gens"] = json::vectors(m.gens());
                }
            }
            out
        }
        "span" => {
            let w = parse_expr(at)?.span()?;
            json!({ "dim": w.dim(), "basis": json::vectors(w.basis().rows()) })
        }
        "faces" => {
            let c = parse_cone(at)?;
            let faces: Vec<Value> = c
                .open_faces()
                .iter()
                .map(|f| {
                    json!({
                        "dim": f.dim,
                        "facets": f.facets,
                        "span": json::vectors(f.span.basis().rows()),
                        "rays": json::vectors(f.closed_face.rays()),
                        "lineality": json::vectors(f.closed_face.lineality().basis().rows()),
                    })
                })
                .collect();
            json!({
                "equations": json::vectors(c.equations().rows()),
                "inequalities": json::vectors(c.inequalities()),
                "faces": faces,
            })
        }
        "decompose" => {
            let e = parse_expr(at)?;
            let d = decompose(&e)?;
            let b = opts.box_bound.unwrap_or(4);
            let report = verify_decomposition(&d, -b, b, opts.trials.unwrap_or(40));
            let pieces: Vec<Value> = d
                .pieces
                .iter()
                .map(|p| {
                    json!({
                        "dim": p.dim,
                        "face_dim": p.face.dim,
                        "face_span": json::vectors(p.face.span.basis().rows()),
                        "closure": json::saturated(&p.closure),
                    })
                })
                .collect();
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({"property": v.property, "witnesses": json::vectors(&v.witnesses), "detail": v.detail}))
                .collect();
            let code = if report.passed() { 0 } else { EXIT_VERIFICATION };
            return Ok((
                code,
                json!({
                    "pieces": pieces,
                    "verification": {
                        "box": [-b, b],
                        "points_checked": report.points_checked,
                        "pairs_checked": report.pairs_checked,
                        "passed": report.passed(),
                        "violations": violations,
                    },
                }),
            ));
        }
        "tree-leq" => {
            let (spec, a, b) = two_elements(at)?;
            json!({ "leq": spec.leq(&a, &b)? })
        }
        "tree-join" => {
            let (spec, a, b) = two_elements(at)?;
            json!({
                "join": json::element(&spec.join(&a, &b)?),
                "meet": json::element(&spec.meet(&a, &b)?),
            })
        }
        "tree-cx" => {
            let spec = at.field("spec", parse_spec)?;
            let m = spec.vertex_count();
            let tuple = match at.opt_field("tuple", |t| t.items(|x| parse_element(x, m)))? {
                Some(cols) => GeneratorTuple::new(spec, IntMatrix::from_columns(m, &cols)?)?,
                None => spec.canonical_generators(),
            };
            let e = tuple.associated_monoid();
            json!({ "expr": json::expr(&e), "closure": json::saturated(&e.closure()?) })
        }
        "certify" => {
            let cert = parse_expr(at)?.prismality_certificate()?;
            let checked = cert.check();
            let out = json!({
                "checked": checked.is_ok(),
                "nodes": cert.node_count(),
                "certificate": certificate(&cert),
            });
            if let Err(msg) = checked {
                let mut out = out;
                out["check_error"] = Value::String(msg);
                return Ok((EXIT_VERIFICATION, out));
            }
            out
        }
        "grothendieck" => {
            let p = parse_presentation(at)?;
            let g = p.group_completion();
            json!({
                "free_rank": g.free_rank,
                "invariant_factors": g.invariant_factors.iter().map(json::int).collect::<Vec<_>>(),
                "class_map": json::vectors(&g.class_map),
                "trivial": g.is_trivial(),
                "group": g.to_string(),
            })
        }
        other => return Err(CliError::Input(format!("unknown command \"{other}\""))),
    };
    Ok((0, out))
}
