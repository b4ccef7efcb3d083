//! Rooted-tree ℓ-groups `G(T, v0)`.
//!
//! Everything is written additively: the parasemifield product is group
//! addition, the parasemifield sum is the join `∨`, and `1_S` is the zero
//! element. An element of a product of trees is the concatenation of one
//! integer per vertex, factors in order and the root first within a factor.

mod tree;

pub use tree::{RootedTree, EXTENSION_CAP};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::TreeError;
use crate::exactlin::{IntMatrix, IntVector};
use crate::monoidexpr::MonoidExpr;

/// A finite product of tree ℓ-groups; the empty product is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParasemifieldSpec {
    factors: Vec<RootedTree>,
}

impl ParasemifieldSpec {
    pub fn new(factors: Vec<RootedTree>) -> ParasemifieldSpec {
        ParasemifieldSpec { factors }
    }

    pub fn trivial() -> ParasemifieldSpec {
        ParasemifieldSpec { factors: vec![] }
    }

    pub fn single(tree: RootedTree) -> ParasemifieldSpec {
        ParasemifieldSpec {
            factors: vec![tree],
        }
    }

    pub fn factors(&self) -> &[RootedTree] {
        &self.factors
    }

    pub fn vertex_count(&self) -> usize {
        self.factors.iter().map(RootedTree::vertex_count).sum()
    }

    /// `(offset, tree)` per factor.
    fn blocks(&self) -> impl Iterator<Item = (usize, &RootedTree)> {
        self.factors.iter().scan(0, |off, t| {
            let start = *off;
            *off += t.vertex_count();
            Some((start, t))
        })
    }

    fn check(&self, a: &IntVector) -> Result<(), TreeError> {
        if a.dim() != self.vertex_count() {
            return Err(TreeError::SpecMismatch {
                expected: self.vertex_count(),
                found: a.dim(),
            });
        }
        Ok(())
    }

    /// `a <= b` in the product order.
    pub fn leq(&self, a: &IntVector, b: &IntVector) -> Result<bool, TreeError> {
        self.check(a)?;
        self.check(b)?;
        let g = b - a;
        Ok(self
            .blocks()
            .all(|(off, t)| subtree_nonnegative(t, &g.coords()[off..], 0)))
    }

    /// `a <= b` checked against every chain extension of every factor.
    pub fn leq_oracle(&self, a: &IntVector, b: &IntVector) -> Result<bool, TreeError> {
        self.check(a)?;
        self.check(b)?;
        let g = b - a;
        for (off, t) in self.blocks() {
            for ext in t.chain_extensions()? {
                let first = ext.iter().map(|&v| &g[off + v]).find(|x| !x.is_zero());
                if first.is_some_and(|x| x.is_negative()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn join(&self, a: &IntVector, b: &IntVector) -> Result<IntVector, TreeError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![BigInt::zero(); a.dim()];
        for (off, t) in self.blocks() {
            let m = t.vertex_count();
            join_subtree(
                t,
                &a.coords()[off..off + m],
                &b.coords()[off..off + m],
                0,
                &mut out[off..off + m],
            );
        }
        Ok(IntVector::new(out))
    }

    pub fn meet(&self, a: &IntVector, b: &IntVector) -> Result<IntVector, TreeError> {
        Ok(-self.join(&-a, &-b)?)
    }

    /// `a ∈ Q_S`, i.e. `a <= 1_S`.
    pub fn q_membership(&self, a: &IntVector) -> Result<bool, TreeError> {
        self.leq(a, &IntVector::zeros(self.vertex_count()))
    }

    /// The tuple `(e_w, -e_w)` over all vertices, or `(1_S, 1_S)` for the
    /// trivial parasemifield.
    pub fn canonical_generators(&self) -> GeneratorTuple {
        let m = self.vertex_count();
        let columns: Vec<IntVector> = if m == 0 {
            vec![IntVector::zeros(0), IntVector::zeros(0)]
        } else {
            (0..m)
                .flat_map(|w| {
                    let e = IntVector::unit(m, w);
                    [e.clone(), -e]
                })
                .collect()
        };
        GeneratorTuple {
            spec: self.clone(),
            matrix: IntMatrix::from_columns(m, &columns).expect("unit columns"),
        }
    }

    /// `{g : g <= 0}` as a monoid expression.
    pub fn negative_cone(&self) -> MonoidExpr {
        self.factors
            .iter()
            .map(|t| MonoidExpr::TreeNegative(t.clone()))
            .reduce(MonoidExpr::product)
            .unwrap_or(MonoidExpr::FullLattice(0))
    }
}

/// `g >= 0` on the subtree rooted at `v` (coordinates local to the factor).
fn subtree_nonnegative(t: &RootedTree, g: &[BigInt], v: usize) -> bool {
    match g[v].sign() {
        num_bigint::Sign::Plus => true,
        num_bigint::Sign::Minus => false,
        num_bigint::Sign::NoSign => t
            .children(v)
            .into_iter()
            .all(|c| subtree_nonnegative(t, g, c)),
    }
}

fn copy_subtree(t: &RootedTree, src: &[BigInt], v: usize, out: &mut [BigInt]) {
    out[v] = src[v].clone();
    for c in t.children(v) {
        copy_subtree(t, src, c, out);
    }
}

fn join_subtree(t: &RootedTree, a: &[BigInt], b: &[BigInt], v: usize, out: &mut [BigInt]) {
    match a[v].cmp(&b[v]) {
        Ordering::Greater => copy_subtree(t, a, v, out),
        Ordering::Less => copy_subtree(t, b, v, out),
        Ordering::Equal => {
            out[v] = a[v].clone();
            for c in t.children(v) {
                join_subtree(t, a, b, c, out);
            }
        }
    }
}

/// A tuple of elements, as the columns of a matrix in the vertex basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTuple {
    pub spec: ParasemifieldSpec,
    pub matrix: IntMatrix,
}

impl GeneratorTuple {
    pub fn new(spec: ParasemifieldSpec, matrix: IntMatrix) -> Result<GeneratorTuple, TreeError> {
        if matrix.nrows() != spec.vertex_count() {
            return Err(TreeError::SpecMismatch {
                expected: spec.vertex_count(),
                found: matrix.nrows(),
            });
        }
        Ok(GeneratorTuple { spec, matrix })
    }

    pub fn len(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element(&self, j: usize) -> IntVector {
        self.matrix.column(j)
    }

    /// `C_X(S) = {α ∈ N0^n : Σ α_j x_j <= 0}`.
    pub fn associated_monoid(&self) -> MonoidExpr {
        let n = self.len();
        MonoidExpr::intersect(
            MonoidExpr::Orthant(n),
            MonoidExpr::preimage(self.matrix.clone(), self.spec.negative_cone())
                .expect("matrix rows match the spec"),
        )
    }

    /// Direct evaluation of membership in the associated monoid.
    pub fn associated_member(&self, alpha: &IntVector) -> Result<bool, TreeError> {
        if alpha.dim() != self.len() {
            return Err(TreeError::SpecMismatch {
                expected: self.len(),
                found: alpha.dim(),
            });
        }
        if alpha.iter().any(|a| a.is_negative()) {
            return Ok(false);
        }
        self.spec.q_membership(&self.matrix.apply(alpha)?)
    }
}

/// A tuple `X` written as monomials in a basis tuple `Y`:
/// `x_j = Σ_i a_{i,j} y_i` with nonnegative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialTuple {
    pub basis: GeneratorTuple,
    pub exponents: IntMatrix,
}

impl MonomialTuple {
    pub fn new(basis: GeneratorTuple, exponents: IntMatrix) -> Result<MonomialTuple, TreeError> {
        if exponents.nrows() != basis.len() {
            return Err(TreeError::SpecMismatch {
                expected: basis.len(),
                found: exponents.nrows(),
            });
        }
        if exponents.rows().iter().flatten().any(|a| a.is_negative()) {
            return Err(TreeError::InvalidTree("exponents must be nonnegative".into()));
        }
        Ok(MonomialTuple { basis, exponents })
    }

    /// The tuple itself in the vertex basis.
    pub fn tuple(&self) -> GeneratorTuple {
        GeneratorTuple {
            spec: self.basis.spec.clone(),
            matrix: self.basis.matrix.mul(&self.exponents).expect("shapes checked"),
        }
    }

    /// `N0^n ∩ ν^{-1}(C_Y)` with `ν` given by the exponent matrix.
    pub fn associated_monoid(&self) -> MonoidExpr {
        MonoidExpr::intersect(
            MonoidExpr::Orthant(self.exponents.ncols()),
            MonoidExpr::preimage(self.exponents.clone(), self.basis.associated_monoid())
                .expect("exponent rows match the basis"),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.exponents.rank() == self.exponents.ncols()
    }

    /// Duplicates `y_1` until the exponent matrix has full column rank,
    /// using `y_1 + y_2 = 0` so that every `x_j` is unchanged.
    pub fn embedify(&self) -> Result<MonomialTuple, TreeError> {
        if self.is_injective() {
            return Ok(self.clone());
        }
        let b = &self.basis;
        if b.len() < 2 || !(&b.element(0) + &b.element(1)).is_zero() {
            return Err(TreeError::NoInversePair);
        }
        let mut basis_cols = b.matrix.columns();
        let mut rows: Vec<IntVector> = self.exponents.rows().to_vec();
        let n = self.exponents.ncols();
        loop {
            let a = IntMatrix::new(n, rows.clone())?;
            let rank = a.rank();
            if rank == n {
                break;
            }
            let cols = a.columns();
            let j0 = (0..n)
                .find(|&j| {
                    let others: Vec<IntVector> = (0..n)
                        .filter(|&i| i != j)
                        .map(|i| cols[i].clone())
                        .collect();
                    crate::exactlin::rank_of(&others) == rank
                })
                .expect("some column is dependent when rank < n");
            let mut second = rows[1].clone().into_coords();
            second[j0] += 1;
            rows[1] = IntVector::new(second);
            rows.push(IntVector::unit(n, j0));
            basis_cols.push(basis_cols[0].clone());
        }
        let m = b.spec.vertex_count();
        Ok(MonomialTuple {
            basis: GeneratorTuple {
                spec: b.spec.clone(),
                matrix: IntMatrix::from_columns(m, &basis_cols)?,
            },
            exponents: IntMatrix::new(n, rows)?,
        })
    }
}
