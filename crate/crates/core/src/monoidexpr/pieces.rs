//! Locally closed polyhedral normal form.
//!
//! Each piece is `{x : E x = 0, S x > 0, N x >= 0}`. Emptiness of a piece
//! is decided by Fourier–Motzkin elimination that tracks strictness.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{MonoidExpr, Verdict};
use crate::cone::Cone;
use crate::error::ExprError;
use crate::exactlin::{IntVector, Subspace};
use crate::hilbert::{hilbert_basis, AffineMonoid, Membership, SaturatedMonoid, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Piece {
    pub equations: Vec<IntVector>,
    pub strict: Vec<IntVector>,
    pub nonstrict: Vec<IntVector>,
}

/// Zero rows are trivially satisfied except as strict rows, where one is
/// kept to mark the piece empty.
fn tidy(rows: &mut Vec<IntVector>, strict: bool) {
    for r in rows.iter_mut() {
        *r = r.primitive();
    }
    if !strict {
        rows.retain(|r| !r.is_zero());
    }
    rows.sort();
    rows.dedup();
}

impl Piece {
    fn normalized(mut self) -> Piece {
        tidy(&mut self.equations, false);
        tidy(&mut self.strict, true);
        tidy(&mut self.nonstrict, false);
        self
    }

    fn meet(&self, other: &Piece) -> Piece {
        Piece {
            equations: [&self.equations[..], &other.equations[..]].concat(),
            strict: [&self.strict[..], &other.strict[..]].concat(),
            nonstrict: [&self.nonstrict[..], &other.nonstrict[..]].concat(),
        }
        .normalized()
    }

    fn map_rows(&self, f: impl Fn(&IntVector) -> IntVector) -> Piece {
        Piece {
            equations: self.equations.iter().map(&f).collect(),
            strict: self.strict.iter().map(&f).collect(),
            nonstrict: self.nonstrict.iter().map(&f).collect(),
        }
        .normalized()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.equations.iter().all(|a| a.dot(x).is_zero())
            && self.strict.iter().all(|a| a.dot(x).is_positive())
            && self.nonstrict.iter().all(|a| !a.dot(x).is_negative())
    }

    /// Exact feasibility over the rationals.
    pub fn is_empty(&self) -> bool {
        // Strictness flag per row; equations are eliminated first.
        let mut rows: Vec<(IntVector, bool)> = self
            .strict
            .iter()
            .map(|r| (r.clone(), true))
            .chain(self.nonstrict.iter().map(|r| (r.clone(), false)))
            .collect();
        let mut eqs = self.equations.clone();
        while let Some(e) = eqs.pop() {
            let Some(j) = e.leading_index() else { continue };
            let c = e[j].clone();
            let sign = BigInt::from(if c.is_negative() { -1 } else { 1 });
            let c_abs = c.abs();
            let sub = |r: &IntVector| -> IntVector {
                let t = &r[j] * &sign;
                IntVector::combine(&c_abs, r, &-t, &e).primitive()
            };
            for (r, _) in rows.iter_mut() {
                if !r[j].is_zero() {
                    *r = sub(r);
                }
            }
            for r in eqs.iter_mut() {
                if !r[j].is_zero() {
                    *r = sub(r);
                }
            }
        }
        let dim = self
            .equations
            .first()
            .or(self.strict.first())
            .or(self.nonstrict.first())
            .map_or(0, IntVector::dim);
        for j in 0..dim {
            if rows.iter().any(|(r, s)| *s && r.is_zero()) {
                return true;
            }
            let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|(r, _)| r[j].is_positive());
            let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(r, _)| r[j].is_negative());
            let mut next = zero;
            for (p, ps) in &pos {
                for (n, ns) in &neg {
                    let combined = IntVector::combine(&-&n[j], p, &p[j], n).primitive();
                    next.push((combined, *ps || *ns));
                }
            }
            next.sort();
            next.dedup();
            rows = next;
        }
        rows.iter().any(|(r, s)| *s && r.is_zero())
    }

    /// The topological closure of a nonempty piece.
    pub fn closed_cone(&self, dim: usize) -> Cone {
        let ineqs: Vec<IntVector> = self.strict.iter().chain(&self.nonstrict).cloned().collect();
        Cone::from_hrep(dim, &self.equations, &ineqs).expect("piece rows match the ambient dimension")
    }
}

/// Lattice points of a union of pieces, optionally cut down by finitely
/// generated monoids that are not saturated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceUnion {
    pub ambient_dim: usize,
    pub pieces: Vec<Piece>,
    pub filters: Vec<AffineMonoid>,
}

impl PieceUnion {
    pub fn contains(&self, x: &IntVector) -> Verdict {
        if !self.pieces.iter().any(|p| p.contains(x)) {
            return Verdict::No;
        }
        self.filters
            .iter()
            .map(|m| match m.membership(x, DEFAULT_BUDGET) {
                Ok(Membership::Yes(_)) => Verdict::Yes,
                Ok(Membership::No) => Verdict::No,
                _ => Verdict::Unknown,
            })
            .fold(Verdict::Yes, Verdict::and)
    }

    fn closed_cones(&self) -> Vec<Cone> {
        self.pieces.iter().map(|p| p.closed_cone(self.ambient_dim)).collect()
    }

    /// Sum of the spans of the pieces. Filters do not change it: a filter
    /// contains a positive multiple of every lattice point of its cone, and
    /// pieces are closed under positive scaling.
    pub fn span(&self) -> Subspace {
        self.closed_cones()
            .iter()
            .fold(Subspace::zero(self.ambient_dim), |acc, c| {
                acc.sum(c.span()).expect("same ambient dimension")
            })
    }

    /// Hilbert basis of the closed convex hull: the Minkowski sum of the
    /// pieces' closures (same scaling argument for filters).
    pub fn closure(&self) -> SaturatedMonoid {
        let mut rays = Vec::new();
        let mut lin = Vec::new();
        for c in self.closed_cones() {
            rays.extend(c.rays().iter().cloned());
            lin.extend(c.lineality().basis().rows().iter().cloned());
        }
        hilbert_basis(&Cone::from_vrep(self.ambient_dim, &rays, &lin).expect("piece dimensions"))
    }
}

fn lex_pieces(n: usize) -> Vec<Piece> {
    let mut out = vec![Piece {
        equations: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        ..Piece::default()
    }];
    for i in 0..n {
        out.push(
            Piece {
                equations: (0..i).map(|k| IntVector::unit(n, k)).collect(),
                strict: vec![-IntVector::unit(n, i)],
                nonstrict: vec![],
            }
            .normalized(),
        );
    }
    out
}

fn tree_negative_pieces(t: &crate::treegroup::RootedTree, v: usize) -> Vec<Piece> {
    let m = t.vertex_count();
    let mut out = vec![Piece {
        strict: vec![-IntVector::unit(m, v)],
        ..Piece::default()
    }];
    let mut combos = vec![Piece {
        equations: vec![IntVector::unit(m, v)],
        ..Piece::default()
    }];
    for c in t.children(v) {
        let sub = tree_negative_pieces(t, c);
        combos = combos
            .iter()
            .flat_map(|a| sub.iter().map(move |b| a.meet(b)))
            .collect();
    }
    out.extend(combos);
    out
}

fn prune(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::new();
    for p in pieces {
        if !p.is_empty() && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn compile_node(
    e: &MonoidExpr,
    allow_filters: bool,
) -> Result<(Vec<Piece>, Vec<AffineMonoid>), ExprError> {
    let n = e.ambient_dim();
    Ok(match e {
        MonoidExpr::FinGen(m) => {
            let c = m.cone();
            let piece = Piece {
                equations: c.equations().rows().to_vec(),
                strict: vec![],
                nonstrict: c.inequalities().to_vec(),
            }
            .normalized();
            let filters = if m.is_saturated() == Some(true) {
                vec![]
            } else if allow_filters {
                vec![m.clone()]
            } else {
                return Err(ExprError::UnsupportedShape(
                    "a finitely generated monoid that is not saturated may only appear \
                     under intersections and restrictions"
                        .into(),
                ));
            };
            (vec![piece], filters)
        }
        MonoidExpr::Lex(n) => (lex_pieces(*n), vec![]),
        MonoidExpr::Orthant(n) => (
            vec![Piece {
                nonstrict: (0..*n).map(|i| IntVector::unit(*n, i)).collect(),
                ..Piece::default()
            }],
            vec![],
        ),
        MonoidExpr::FullLattice(_) => (vec![Piece::default()], vec![]),
        MonoidExpr::Intersect(a, b) => {
            let (pa, mut fa) = compile_node(a, allow_filters)?;
            let (pb, fb) = compile_node(b, allow_filters)?;
            fa.extend(fb);
            let pieces = pa
                .iter()
                .flat_map(|x| pb.iter().map(move |y| x.meet(y)))
                .collect();
            (prune(pieces), fa)
        }
        MonoidExpr::Product(a, b) => {
            let (ka, kb) = (a.ambient_dim(), b.ambient_dim());
            let (pa, _) = compile_node(a, false)?;
            let (pb, _) = compile_node(b, false)?;
            let pieces = pa
                .iter()
                .flat_map(|x| {
                    let left = x.map_rows(|r| r.padded(0, kb));
                    pb.iter()
                        .map(move |y| left.meet(&y.map_rows(|r| r.padded(ka, 0))))
                })
                .collect();
            (pieces, vec![])
        }
        MonoidExpr::Preimage(map, inner) => {
            let (p, _) = compile_node(inner, false)?;
            let pulled = p
                .iter()
                .map(|x| x.map_rows(|r| map.left_apply(r).expect("validated")))
                .collect();
            (prune(pulled), vec![])
        }
        MonoidExpr::Restrict(inner, v) => {
            let (p, f) = compile_node(inner, allow_filters)?;
            let eqs = Piece {
                equations: v.equations().into_rows(),
                ..Piece::default()
            };
            (prune(p.iter().map(|x| x.meet(&eqs)).collect()), f)
        }
        MonoidExpr::TreeNegative(t) => (tree_negative_pieces(t, 0), vec![]),
    })
    .map(|(p, f)| {
        debug_assert!(p.iter().all(|x| x
            .equations
            .iter()
            .chain(&x.strict)
            .chain(&x.nonstrict)
            .all(|r| r.dim() == n)));
        (p, f)
    })
}

pub(crate) fn compile(e: &MonoidExpr) -> Result<PieceUnion, ExprError> {
    let (pieces, filters) = compile_node(e, true)?;
    Ok(PieceUnion {
        ambient_dim: e.ambient_dim(),
        pieces: prune(pieces),
        filters,
    })
}
