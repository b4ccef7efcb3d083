//! Describable submonoids of `Z^n` and their closures.
//!
//! `Lex(n)` is `{0} ∪ {α : the first nonzero coordinate of α is negative}`.
//! With this sign the negative cone of a chain ℓ-group is a lex monoid, and
//! the closure of `Lex(n)` is the halfspace `α_1 <= 0`.

mod certificate;
mod closure;
mod pieces;

pub use certificate::{Conclusion, PrismalityCertificate, PurityEvidence, Rule};
pub use closure::{closure_of_intersection, ProbeOutcome};
pub use pieces::{Piece, PieceUnion};

use num_traits::{Signed, Zero};

use crate::error::ExprError;
use crate::exactlin::{IntMatrix, IntVector, Subspace};
use crate::hilbert::{AffineMonoid, Membership, DEFAULT_BUDGET};
use crate::treegroup::{ParasemifieldSpec, RootedTree};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidExpr {
    FinGen(AffineMonoid),
    Lex(usize),
    Orthant(usize),
    FullLattice(usize),
    Intersect(Box<MonoidExpr>, Box<MonoidExpr>),
    Product(Box<MonoidExpr>, Box<MonoidExpr>),
    /// `{α : map·α ∈ e}`; `map` sends `Z^ambient` to `Z^{e.ambient}`.
    Preimage(IntMatrix, Box<MonoidExpr>),
    Restrict(Box<MonoidExpr>, Subspace),
    /// The negative cone `{g <= 0}` of the tree ℓ-group.
    TreeNegative(RootedTree),
}

/// Three-valued membership answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Yes, _) | (_, Verdict::Yes) => Verdict::Yes,
            (Verdict::No, Verdict::No) => Verdict::No,
            _ => Verdict::Unknown,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

fn mismatch(expected: usize, found: usize) -> ExprError {
    ExprError::Lin(crate::error::LinError::DimensionMismatch { expected, found })
}

impl MonoidExpr {
    pub fn fingen(dim: usize, gens: &[IntVector]) -> Result<MonoidExpr, ExprError> {
        Ok(MonoidExpr::FinGen(AffineMonoid::new(dim, gens)?))
    }

    pub fn intersect(a: MonoidExpr, b: MonoidExpr) -> MonoidExpr {
        MonoidExpr::Intersect(Box::new(a), Box::new(b))
    }

    pub fn product(a: MonoidExpr, b: MonoidExpr) -> MonoidExpr {
        MonoidExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn preimage(map: IntMatrix, e: MonoidExpr) -> Result<MonoidExpr, ExprError> {
        if map.nrows() != e.ambient_dim() {
            return Err(mismatch(e.ambient_dim(), map.nrows()));
        }
        Ok(MonoidExpr::Preimage(map, Box::new(e)))
    }

    pub fn restrict(e: MonoidExpr, v: Subspace) -> Result<MonoidExpr, ExprError> {
        if v.ambient_dim() != e.ambient_dim() {
            return Err(mismatch(e.ambient_dim(), v.ambient_dim()));
        }
        Ok(MonoidExpr::Restrict(Box::new(e), v))
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            MonoidExpr::FinGen(m) => m.ambient_dim(),
            MonoidExpr::Lex(n) | MonoidExpr::Orthant(n) | MonoidExpr::FullLattice(n) => *n,
            MonoidExpr::Intersect(a, _) => a.ambient_dim(),
            MonoidExpr::Product(a, b) => a.ambient_dim() + b.ambient_dim(),
            MonoidExpr::Preimage(m, _) => m.ncols(),
            MonoidExpr::Restrict(e, _) => e.ambient_dim(),
            MonoidExpr::TreeNegative(t) => t.vertex_count(),
        }
    }

    /// Checks that ambient dimensions fit together throughout the tree.
    pub fn validate(&self) -> Result<(), ExprError> {
        match self {
            MonoidExpr::Intersect(a, b) => {
                a.validate()?;
                b.validate()?;
                if a.ambient_dim() != b.ambient_dim() {
                    return Err(mismatch(a.ambient_dim(), b.ambient_dim()));
                }
            }
            MonoidExpr::Product(a, b) => {
                a.validate()?;
                b.validate()?;
            }
            MonoidExpr::Preimage(m, e) => {
                e.validate()?;
                if m.nrows() != e.ambient_dim() {
                    return Err(mismatch(e.ambient_dim(), m.nrows()));
                }
            }
            MonoidExpr::Restrict(e, v) => {
                e.validate()?;
                if v.ambient_dim() != e.ambient_dim() {
                    return Err(mismatch(e.ambient_dim(), v.ambient_dim()));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Semantic membership, evaluated node by node.
    pub fn member(&self, alpha: &IntVector) -> Result<Verdict, ExprError> {
        if alpha.dim() != self.ambient_dim() {
            return Err(mismatch(self.ambient_dim(), alpha.dim()));
        }
        Ok(self.member_unchecked(alpha))
    }

    fn member_unchecked(&self, alpha: &IntVector) -> Verdict {
        match self {
            MonoidExpr::FinGen(m) if m.is_saturated() == Some(true) => {
                Verdict::from_bool(m.saturation().contains(alpha))
            }
            MonoidExpr::FinGen(m) => match m.membership(alpha, DEFAULT_BUDGET) {
                Ok(Membership::Yes(_)) => Verdict::Yes,
                Ok(Membership::No) => Verdict::No,
                _ => Verdict::Unknown,
            },
            MonoidExpr::Lex(_) => Verdict::from_bool(
                alpha
                    .iter()
                    .find(|x| !x.is_zero())
                    .is_none_or(|x| x.is_negative()),
            ),
            MonoidExpr::Orthant(_) => Verdict::from_bool(alpha.iter().all(|x| !x.is_negative())),
            MonoidExpr::FullLattice(_) => Verdict::Yes,
            MonoidExpr::Intersect(a, b) => {
                let va = a.member_unchecked(alpha);
                if va == Verdict::No {
                    return va;
                }
                va.and(b.member_unchecked(alpha))
            }
            MonoidExpr::Product(a, b) => {
                let k = a.ambient_dim();
                let va = a.member_unchecked(&alpha.slice(0, k));
                if va == Verdict::No {
                    return va;
                }
                va.and(b.member_unchecked(&alpha.slice(k, alpha.dim())))
            }
            MonoidExpr::Preimage(m, e) => {
                e.member_unchecked(&m.apply(alpha).expect("validated dimensions"))
            }
            MonoidExpr::Restrict(e, v) => {
                if !v.contains(alpha) {
                    return Verdict::No;
                }
                e.member_unchecked(alpha)
            }
            MonoidExpr::TreeNegative(t) => Verdict::from_bool(
                ParasemifieldSpec::single(t.clone())
                    .q_membership(alpha)
                    .expect("dimension checked"),
            ),
        }
    }

    /// Purity known from the shape of the expression: every leaf is pure
    /// (a finitely generated leaf only when saturated) and each operation
    /// preserves purity.
    pub fn certified_pure(&self) -> bool {
        match self {
            MonoidExpr::FinGen(m) => m.is_saturated() == Some(true),
            MonoidExpr::Lex(_)
            | MonoidExpr::Orthant(_)
            | MonoidExpr::FullLattice(_)
            | MonoidExpr::TreeNegative(_) => true,
            MonoidExpr::Intersect(a, b) | MonoidExpr::Product(a, b) => {
                a.certified_pure() && b.certified_pure()
            }
            MonoidExpr::Preimage(_, e) | MonoidExpr::Restrict(e, _) => e.certified_pure(),
        }
    }

    pub fn compile(&self) -> Result<PieceUnion, ExprError> {
        self.validate()?;
        pieces::compile(self)
    }

    /// The linear span of the monoid.
    pub fn span(&self) -> Result<Subspace, ExprError> {
        Ok(self.compile()?.span())
    }

    pub fn closure(&self) -> Result<crate::hilbert::SaturatedMonoid, ExprError> {
        Ok(self.compile()?.closure())
    }

    /// The closure of `e ∩ V`.
    pub fn closure_in_subspace(
        &self,
        v: &Subspace,
    ) -> Result<crate::hilbert::SaturatedMonoid, ExprError> {
        MonoidExpr::restrict(self.clone(), v.clone())?.closure()
    }

    /// Checks `kα ∈ e ⇒ α ∈ e` for every `α` in `[lo, hi]^n` and every
    /// multiplier `k`.
    pub fn purity_probe(
        &self,
        lo: i64,
        hi: i64,
        multipliers: &[i64],
    ) -> Result<ProbeOutcome, ExprError> {
        closure::purity_probe(self, lo, hi, multipliers)
    }

    pub fn prismality_certificate(&self) -> Result<PrismalityCertificate, ExprError> {
        self.validate()?;
        certificate::certify(self)
    }

    /// Short name of the node kind.
    pub fn kind(&self) -> &'static str {
        match self {
            MonoidExpr::FinGen(_) => "fingen",
            MonoidExpr::Lex(_) => "lex",
            MonoidExpr::Orthant(_) => "orthant",
            MonoidExpr::FullLattice(_) => "lattice",
            MonoidExpr::Intersect(..) => "intersect",
            MonoidExpr::Product(..) => "product",
            MonoidExpr::Preimage(..) => "preimage",
            MonoidExpr::Restrict(..) => "restrict",
            MonoidExpr::TreeNegative(_) => "tree-negative",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    #[test]
    fn member_examples() {
        let lex = MonoidExpr::Lex(2);
        assert_eq!(lex.member(&v(&[-1, 100])).unwrap(), Verdict::Yes);
        assert_eq!(lex.member(&v(&[0, 1])).unwrap(), Verdict::No);
        assert_eq!(lex.member(&v(&[0, 0])).unwrap(), Verdict::Yes);
        assert!(lex.member(&v(&[0])).is_err());
        let fg = MonoidExpr::fingen(2, &[v(&[2, 0])]).unwrap();
        assert_eq!(fg.member(&v(&[0, 0])).unwrap(), Verdict::Yes);
        assert_eq!(fg.member(&v(&[1, 0])).unwrap(), Verdict::No);
    }

    #[test]
    fn validation_catches_mismatch() {
        let bad = MonoidExpr::intersect(MonoidExpr::Lex(2), MonoidExpr::Orthant(3));
        assert!(bad.validate().is_err());
        assert!(MonoidExpr::preimage(IntMatrix::identity(3), MonoidExpr::Lex(2)).is_err());
    }
}
