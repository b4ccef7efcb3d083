//! Prismality certificates: derivation trees over the closure rules for
//! prismal and almost prismal monoids.

use super::MonoidExpr;
use crate::error::ExprError;
use crate::exactlin::{smith_normal_form, solve_integer, IntMatrix, IntVector};
use crate::treegroup::{RootedTree, EXTENSION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    LexLeaf,
    OrthantLeaf,
    LatticeLeaf,
    FinGenLeaf,
    /// The tree negative cone as the intersection, over all chain
    /// extensions, of permuted lex monoids.
    ChainExtensions,
    Intersection,
    Cartesian,
    Epimorphism,
    Embedding,
    Restriction,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::LexLeaf => "lex-leaf",
            Rule::OrthantLeaf => "orthant-leaf",
            Rule::LatticeLeaf => "lattice-leaf",
            Rule::FinGenLeaf => "fingen-leaf",
            Rule::ChainExtensions => "chain-extensions",
            Rule::Intersection => "intersection",
            Rule::Cartesian => "cartesian-product",
            Rule::Epimorphism => "epimorphism-preimage",
            Rule::Embedding => "embedding-preimage",
            Rule::Restriction => "subspace-restriction",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conclusion {
    AlmostPrismal,
    Prismal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PurityEvidence {
    /// Pure by the shape of the node and the purity of its children.
    Structural,
    /// A finitely generated monoid shown equal to its saturation.
    SaturationCheck,
    /// Not shown to be pure.
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrismalityCertificate {
    pub rule: Rule,
    pub expr: MonoidExpr,
    pub conclusion: Conclusion,
    pub purity: PurityEvidence,
    /// The map used by preimage rules.
    pub map: Option<IntMatrix>,
    pub children: Vec<PrismalityCertificate>,
}

impl PrismalityCertificate {
    fn leaf(rule: Rule, expr: &MonoidExpr) -> Self {
        PrismalityCertificate {
            rule,
            expr: expr.clone(),
            conclusion: Conclusion::Prismal,
            purity: PurityEvidence::Structural,
            map: None,
            children: vec![],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }

    /// Re-derives every node from its children and rule.
    pub fn check(&self) -> Result<(), String> {
        for c in &self.children {
            c.check()?;
        }
        let fail = |msg: &str| Err(format!("{} node: {msg}", self.rule.name()));
        let child_conclusion = self
            .children
            .iter()
            .map(|c| c.conclusion)
            .min()
            .unwrap_or(Conclusion::Prismal);
        let all_pure = self.children.iter().all(|c| c.conclusion == Conclusion::Prismal);
        let expected_purity = if all_pure {
            PurityEvidence::Structural
        } else {
            PurityEvidence::Absent
        };
        match (self.rule, &self.expr) {
            (Rule::LexLeaf, MonoidExpr::Lex(_))
            | (Rule::OrthantLeaf, MonoidExpr::Orthant(_))
            | (Rule::LatticeLeaf, MonoidExpr::FullLattice(_)) => {
                if !self.children.is_empty() || self.conclusion != Conclusion::Prismal {
                    return fail("leaf must be prismal without premises");
                }
            }
            (Rule::FinGenLeaf, MonoidExpr::FinGen(m)) => {
                let saturated = m.is_saturated() == Some(true);
                let expected = if saturated {
                    (Conclusion::Prismal, PurityEvidence::SaturationCheck)
                } else {
                    (Conclusion::AlmostPrismal, PurityEvidence::Absent)
                };
                if !self.children.is_empty() || (self.conclusion, self.purity) != expected {
                    return fail("conclusion does not match the saturation check");
                }
            }
            (Rule::ChainExtensions, MonoidExpr::TreeNegative(t)) => {
                let expected = extension_preimages(t).map_err(|e| e.to_string())?;
                let got: Vec<&MonoidExpr> = self.children.iter().map(|c| &c.expr).collect();
                if got != expected.iter().collect::<Vec<_>>() {
                    return fail("premises are not the chain-extension lex preimages");
                }
                if !all_pure || self.conclusion != Conclusion::Prismal {
                    return fail("all premises must be prismal");
                }
            }
            (Rule::Intersection, MonoidExpr::Intersect(a, b)) => {
                if self.children.len() != 2
                    || &self.children[0].expr != a.as_ref()
                    || &self.children[1].expr != b.as_ref()
                {
                    return fail("premises do not match the intersected monoids");
                }
                if self.conclusion != child_conclusion || self.purity != expected_purity {
                    return fail("conclusion does not follow from the premises");
                }
            }
            (Rule::Cartesian, MonoidExpr::Product(a, b)) => {
                if self.children.len() != 2
                    || &self.children[0].expr != a.as_ref()
                    || &self.children[1].expr != b.as_ref()
                {
                    return fail("premises do not match the factors");
                }
                if !all_pure || self.conclusion != Conclusion::Prismal {
                    return fail("factors must be prismal");
                }
            }
            (Rule::Restriction, MonoidExpr::Restrict(e, _)) => {
                if self.children.len() != 1 || &self.children[0].expr != e.as_ref() {
                    return fail("premise does not match the restricted monoid");
                }
                if self.conclusion != child_conclusion || self.purity != expected_purity {
                    return fail("conclusion does not follow from the premise");
                }
            }
            (Rule::Embedding, MonoidExpr::Preimage(m, e)) => {
                if self.map.as_ref() != Some(m) || m.rank() != m.ncols() {
                    return fail("map must be the node's injective map");
                }
                if self.children.len() != 1 || &self.children[0].expr != e.as_ref() {
                    return fail("premise does not match the inner monoid");
                }
                if !all_pure || self.conclusion != Conclusion::Prismal {
                    return fail("premise must be prismal");
                }
            }
            (Rule::Epimorphism, MonoidExpr::Preimage(m, e)) => {
                let Some(eps) = &self.map else {
                    return fail("missing map");
                };
                if eps.rank() != eps.nrows() {
                    return fail("map is not an epimorphism");
                }
                if self.children.len() != 1 {
                    return fail("expects one premise");
                }
                let premise = &self.children[0];
                if &premise.expr == e.as_ref() {
                    if eps != m {
                        return fail("map differs from the node's map");
                    }
                } else {
                    let MonoidExpr::Preimage(iota, inner) = &premise.expr else {
                        return fail("premise is neither the inner monoid nor a factor");
                    };
                    if premise.rule != Rule::Embedding || inner != e {
                        return fail("factored premise must embed the inner monoid");
                    }
                    if iota.mul(eps).ok().as_ref() != Some(m) {
                        return fail("factors do not compose to the node's map");
                    }
                }
                if self.conclusion != child_conclusion || self.purity != expected_purity {
                    return fail("conclusion does not follow from the premise");
                }
            }
            _ => return fail(&format!("rule does not apply to a {} node", self.expr.kind())),
        }
        Ok(())
    }
}

/// `Preimage(P_σ, Lex(m))` for each chain extension `σ`, in order.
pub(crate) fn extension_preimages(t: &RootedTree) -> Result<Vec<MonoidExpr>, ExprError> {
    let m = t.vertex_count();
    let exts = t
        .chain_extensions()
        .map_err(|e| ExprError::CertificateUnavailable(e.to_string()))?;
    Ok(exts
        .into_iter()
        .map(|sigma| {
            let rows = sigma.iter().map(|&v| IntVector::unit(m, v)).collect();
            MonoidExpr::Preimage(
                IntMatrix::new(m, rows).expect("permutation rows"),
                Box::new(MonoidExpr::Lex(m)),
            )
        })
        .collect())
}

fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.nrows();
    let cols: Vec<IntVector> = (0..n)
        .map(|j| solve_integer(u, &IntVector::unit(n, j)).expect("unimodular"))
        .collect();
    IntMatrix::from_columns(n, &cols).expect("square")
}

/// `M = ι·ε` with `ε` onto `Z^r` and `ι` injective, `r = rank M`.
fn factor_map(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (d, u, v) = smith_normal_form(m);
    let r = m.rank();
    let u_inv = unimodular_inverse(&u);
    let v_inv = unimodular_inverse(&v);
    let iota_cols: Vec<IntVector> = (0..r)
        .map(|j| u_inv.column(j).scale(d.entry(j, j)))
        .collect();
    let iota = IntMatrix::from_columns(m.nrows(), &iota_cols).expect("columns");
    let eps = IntMatrix::new(m.ncols(), v_inv.rows()[..r].to_vec()).expect("rows");
    debug_assert_eq!(iota.mul(&eps).as_ref(), Ok(m));
    (iota, eps)
}

fn unavailable(msg: &str) -> ExprError {
    ExprError::CertificateUnavailable(msg.into())
}

pub(crate) fn certify(e: &MonoidExpr) -> Result<PrismalityCertificate, ExprError> {
    let derived = |rule: Rule, children: Vec<PrismalityCertificate>, map: Option<IntMatrix>| {
        let conclusion = children
            .iter()
            .map(|c| c.conclusion)
            .min()
            .unwrap_or(Conclusion::Prismal);
        PrismalityCertificate {
            rule,
            expr: e.clone(),
            conclusion,
            purity: if conclusion == Conclusion::Prismal {
                PurityEvidence::Structural
            } else {
                PurityEvidence::Absent
            },
            map,
            children,
        }
    };
    Ok(match e {
        MonoidExpr::Lex(_) => PrismalityCertificate::leaf(Rule::LexLeaf, e),
        MonoidExpr::Orthant(_) => PrismalityCertificate::leaf(Rule::OrthantLeaf, e),
        MonoidExpr::FullLattice(_) => PrismalityCertificate::leaf(Rule::LatticeLeaf, e),
        MonoidExpr::FinGen(m) => {
            let saturated = m.is_saturated() == Some(true);
            PrismalityCertificate {
                rule: Rule::FinGenLeaf,
                expr: e.clone(),
                conclusion: if saturated {
                    Conclusion::Prismal
                } else {
                    Conclusion::AlmostPrismal
                },
                purity: if saturated {
                    PurityEvidence::SaturationCheck
                } else {
                    PurityEvidence::Absent
                },
                map: None,
                children: vec![],
            }
        }
        MonoidExpr::TreeNegative(t) => {
            if t.vertex_count() > EXTENSION_CAP {
                return Err(unavailable(&format!(
                    "tree with {} vertices exceeds the chain-extension cap of {EXTENSION_CAP}",
                    t.vertex_count()
                )));
            }
            let children = extension_preimages(t)?
                .iter()
                .map(certify)
                .collect::<Result<Vec<_>, _>>()?;
            derived(Rule::ChainExtensions, children, None)
        }
        MonoidExpr::Intersect(a, b) => derived(Rule::Intersection, vec![certify(a)?, certify(b)?], None),
        MonoidExpr::Product(a, b) => {
            let children = vec![certify(a)?, certify(b)?];
            if children.iter().any(|c| c.conclusion != Conclusion::Prismal) {
                return Err(unavailable("cartesian products need prismal factors"));
            }
            derived(Rule::Cartesian, children, None)
        }
        MonoidExpr::Restrict(inner, _) => derived(Rule::Restriction, vec![certify(inner)?], None),
        MonoidExpr::Preimage(m, inner) => {
            let child = certify(inner)?;
            let r = m.rank();
            if r == m.nrows() {
                derived(Rule::Epimorphism, vec![child], Some(m.clone()))
            } else {
                if child.conclusion != Conclusion::Prismal {
                    return Err(unavailable(
                        "preimage under a map that is not onto needs a prismal argument",
                    ));
                }
                let embed = |map: IntMatrix, child: PrismalityCertificate| PrismalityCertificate {
                    rule: Rule::Embedding,
                    expr: MonoidExpr::Preimage(map.clone(), inner.clone()),
                    conclusion: Conclusion::Prismal,
                    purity: PurityEvidence::Structural,
                    map: Some(map),
                    children: vec![child],
                };
                if r == m.ncols() {
                    embed(m.clone(), child)
                } else {
                    let (iota, eps) = factor_map(m);
                    derived(Rule::Epimorphism, vec![embed(iota, child)], Some(eps))
                }
            }
        }
    })
}
