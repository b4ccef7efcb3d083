//! Decomposition of a monoid along the relatively open faces of its closed
//! convex hull, and a box-sampling check of the decomposition's properties.

use crate::cone::{Cone, OpenFace};
use crate::error::ExprError;
use crate::exactlin::{IntVector, Subspace};
use crate::hilbert::SaturatedMonoid;
use crate::monoidexpr::{MonoidExpr, Piece, PieceUnion, Verdict};
use crate::sampling::box_points;

/// `A⁰ ∩ C` for an open face `A` of the hull of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidFacePiece {
    pub face: OpenFace,
    /// The piece as a union of locally closed sets (without the origin
    /// unless the face contains it).
    pub pieces: PieceUnion,
    pub span: Subspace,
    pub dim: usize,
    /// The closure of the piece itself.
    pub closure: SaturatedMonoid,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub hull: Cone,
    pub monoid: PieceUnion,
    pub pieces: Vec<MonoidFacePiece>,
}

fn face_constraints(hull: &Cone, face: &OpenFace) -> Piece {
    let mut equations = hull.equations().rows().to_vec();
    let mut strict = Vec::new();
    for (i, a) in hull.inequalities().iter().enumerate() {
        if face.facets.contains(&i) {
            equations.push(a.clone());
        } else {
            strict.push(a.clone());
        }
    }
    Piece {
        equations,
        strict,
        nonstrict: vec![],
    }
}

fn meet(a: &Piece, b: &Piece) -> Piece {
    Piece {
        equations: [&a.equations[..], &b.equations[..]].concat(),
        strict: [&a.strict[..], &b.strict[..]].concat(),
        nonstrict: [&a.nonstrict[..], &b.nonstrict[..]].concat(),
    }
}

/// A nonempty piece without strict rows contains the origin; it has other
/// points only if its closure is not the zero cone.
fn has_nonzero_point(p: &Piece, dim: usize) -> bool {
    !p.is_empty() && (!p.strict.is_empty() || !p.closed_cone(dim).is_zero())
}

impl Decomposition {
    pub fn ambient_dim(&self) -> usize {
        self.hull.ambient_dim()
    }

    /// Membership in `C`.
    pub fn contains(&self, x: &IntVector) -> Verdict {
        self.monoid.contains(x)
    }

    /// Index of the piece containing a nonzero `x ∈ C`.
    pub fn locate(&self, x: &IntVector) -> Option<usize> {
        if x.is_zero() || self.contains(x) != Verdict::Yes {
            return None;
        }
        self.pieces
            .iter()
            .position(|p| !p.face.span.is_zero() && p.face.contains(&self.hull, x))
    }

    pub fn piece_contains(&self, index: usize, x: &IntVector) -> bool {
        x.is_zero()
            || (self.pieces[index].face.contains(&self.hull, x) && self.contains(x) == Verdict::Yes)
    }
}

pub fn decompose(e: &MonoidExpr) -> Result<Decomposition, ExprError> {
    let monoid = e.compile()?;
    let hull = monoid.closure().cone;
    let n = e.ambient_dim();
    let mut pieces = Vec::new();
    for face in hull.open_faces() {
        let fc = face_constraints(&hull, &face);
        let parts: Vec<Piece> = monoid
            .pieces
            .iter()
            .map(|p| meet(p, &fc))
            .filter(|p| has_nonzero_point(p, n))
            .collect();
        let is_zero_face = face.span.is_zero();
        if parts.is_empty() && !is_zero_face {
            continue;
        }
        let union = PieceUnion {
            ambient_dim: n,
            pieces: if is_zero_face {
                vec![fc.clone()]
            } else {
                parts
            },
            filters: monoid.filters.clone(),
        };
        let span = union.span();
        let closure = union.closure();
        pieces.push(MonoidFacePiece {
            dim: span.dim(),
            face,
            pieces: union,
            span,
            closure,
        });
    }
    Ok(Decomposition {
        hull,
        monoid,
        pieces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub property: &'static str,
    pub witnesses: Vec<IntVector>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionReport {
    pub points_checked: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, property: &'static str, witnesses: Vec<IntVector>, detail: String) {
        if !self.violations.iter().any(|v| v.property == property) {
            self.violations.push(Violation {
                property,
                witnesses,
                detail,
            });
        }
    }
}

/// Picks at most `cap` evenly spaced items.
fn spread<T: Clone>(items: &[T], cap: usize) -> Vec<T> {
    if items.len() <= cap || cap == 0 {
        return items.to_vec();
    }
    (0..cap).map(|i| items[i * items.len() / cap].clone()).collect()
}

/// Checks the partition property, the closure properties (i)–(iv) and
/// purity of every piece on the lattice points of `[lo, hi]^n`. At most
/// `pair_cap` elements per side are paired for (iii) and (iv).
pub fn verify_decomposition(
    d: &Decomposition,
    lo: i64,
    hi: i64,
    pair_cap: usize,
) -> DecompositionReport {
    let n = d.ambient_dim();
    let mut report = DecompositionReport::default();
    let points: Vec<IntVector> = box_points(n, lo, hi).collect();
    let in_c: Vec<IntVector> = points
        .iter()
        .filter(|x| d.contains(x) == Verdict::Yes)
        .cloned()
        .collect();
    report.points_checked = points.len();

    for x in in_c.iter().filter(|x| !x.is_zero()) {
        let hits: Vec<usize> = (0..d.pieces.len()).filter(|&i| d.piece_contains(i, x)).collect();
        if hits.len() != 1 {
            report.record(
                "partition",
                vec![x.clone()],
                format!("point lies in {} pieces", hits.len()),
            );
        }
    }

    // (i) holds by construction; a piece whose closure failed to come out
    // finitely generated could not have been built.
    let c_closure = d.monoid.closure();
    let c_dim = d.monoid.span().dim();
    let full: Vec<&MonoidFacePiece> = d.pieces.iter().filter(|p| p.dim == c_dim).collect();
    if full.is_empty() {
        report.record("ii", vec![], "no piece has the dimension of the monoid".into());
    }
    for p in &full {
        if let Some(x) = points
            .iter()
            .find(|x| p.closure.contains(x) != c_closure.contains(x))
        {
            report.record(
                "ii",
                vec![x.clone()],
                "closure of the full-dimensional piece differs from the closure of C".into(),
            );
        }
    }

    for (i, piece) in d.pieces.iter().enumerate() {
        let members: Vec<IntVector> = in_c
            .iter()
            .filter(|x| !x.is_zero() && d.piece_contains(i, x))
            .cloned()
            .collect();
        let alphas = spread(&members, pair_cap);
        let outside: Vec<IntVector> = in_c
            .iter()
            .filter(|b| !piece.closure.contains(b))
            .cloned()
            .collect();
        let in_closure: Vec<IntVector> = points
            .iter()
            .filter(|g| piece.closure.contains(g))
            .cloned()
            .collect();
        for a in &alphas {
            for b in spread(&outside, pair_cap) {
                report.pairs_checked += 1;
                let s = a + &b;
                let ok = d.locate(&s).is_some_and(|j| d.pieces[j].dim > piece.dim);
                if !ok {
                    report.record(
                        "iii",
                        vec![a.clone(), b.clone()],
                        "sum does not land in a piece of larger dimension".into(),
                    );
                }
            }
            for g in spread(&in_closure, pair_cap) {
                report.pairs_checked += 1;
                if !d.piece_contains(i, &(a + &g)) {
                    report.record(
                        "iv",
                        vec![a.clone(), g.clone()],
                        "sum leaves the piece".into(),
                    );
                }
            }
        }
        for x in &points {
            for k in [2i64, 3] {
                if d.piece_contains(i, &x.scale(&k.into())) && !d.piece_contains(i, x) {
                    report.record("purity", vec![x.clone()], format!("{k}·x is in the piece but x is not"));
                }
            }
        }
    }
    report
}
