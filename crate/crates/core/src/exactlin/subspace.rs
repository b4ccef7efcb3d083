use num_traits::Zero;

use super::normal_form::{hermite_basis, kernel_lattice, saturate_lattice};
use super::{IntMatrix, IntVector};
use crate::error::LinError;

/// A linear subspace of `R^n` defined over `Q`.
///
/// Stored as the Hermite basis of the saturated lattice `V ∩ Z^n`; this form
/// is unique, so derived equality is subspace equality. Every basis row is
/// primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: IntMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: IntMatrix::empty(ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            basis: IntMatrix::identity(ambient_dim),
        }
    }

    /// The span of the given vectors.
    pub fn span(ambient_dim: usize, gens: &[IntVector]) -> Result<Self, LinError> {
        let m = IntMatrix::new(ambient_dim, gens.to_vec())?;
        Ok(Self::span_of_rows(&m))
    }

    pub fn span_of_rows(m: &IntMatrix) -> Self {
        Subspace {
            basis: saturate_lattice(m),
        }
    }

    /// The solution space of `E x = 0`.
    pub fn from_equations(eqs: &IntMatrix) -> Self {
        Subspace {
            basis: kernel_lattice(eqs),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Canonical basis of `V ∩ Z^n`.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The orthogonal complement.
    pub fn complement(&self) -> Subspace {
        Subspace::from_equations(&self.basis)
    }

    /// Rows `a` such that `x ∈ V ⇔ a·x = 0` for every row (a basis of the
    /// complement lattice).
    pub fn equations(&self) -> IntMatrix {
        kernel_lattice(&self.basis)
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        if x.dim() != self.ambient_dim() {
            return false;
        }
        if x.is_zero() || self.is_full() {
            return true;
        }
        self.equations().rows().iter().all(|a| a.dot(x).is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.basis.rows().iter().all(|b| other.contains(b))
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_same_ambient(other)?;
        let eqs = self.equations().vstack(&other.equations())?;
        Ok(Subspace::from_equations(&eqs))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_same_ambient(other)?;
        Ok(Subspace::span_of_rows(&self.basis.vstack(&other.basis)?))
    }

    /// `{x : map·x ∈ self}` for a map `Z^map.ncols → Z^self.ambient_dim`.
    pub fn preimage(&self, map: &IntMatrix) -> Result<Subspace, LinError> {
        if map.nrows() != self.ambient_dim() {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: map.nrows(),
            });
        }
        let eqs = self.equations();
        if eqs.nrows() == 0 {
            return Ok(Subspace::full(map.ncols()));
        }
        Ok(Subspace::from_equations(&eqs.mul(map)?))
    }

    /// `map(self)` for a map `Z^self.ambient_dim → Z^map.nrows`.
    pub fn image(&self, map: &IntMatrix) -> Result<Subspace, LinError> {
        if map.ncols() != self.ambient_dim() {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: map.ncols(),
            });
        }
        let images = self
            .basis
            .rows()
            .iter()
            .map(|b| map.apply(b))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(map.nrows(), &images)
    }

    /// `V × R^0`-style embedding: pads every basis vector with zeros.
    pub fn padded(&self, before: usize, after: usize) -> Subspace {
        let rows = self
            .basis
            .rows()
            .iter()
            .map(|r| r.padded(before, after))
            .collect();
        let m = IntMatrix::new(self.ambient_dim() + before + after, rows).expect("rectangular");
        Subspace {
            basis: hermite_basis(&m),
        }
    }
}
