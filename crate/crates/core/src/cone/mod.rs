//! Rational polyhedral cones in double description.
//!
//! A [`Cone`] always carries both representations in canonical form:
//!
//! * V-side: the lineality space (as a [`Subspace`]) and the extreme rays of
//!   the pointed part, each projected onto the orthogonal complement of the
//!   lineality space, primitive and sorted;
//! * H-side: the linear span (its equations) and the facet inequalities
//!   `a·x >= 0`, each projected into the span, primitive and sorted.
//!
//! Both sides are computed eagerly on construction, so a `Cone` is immutable
//! and `Send + Sync`, and derived equality is equality of sets.

mod dd;
mod faces;

pub use faces::OpenFace;

use num_traits::{Signed, Zero};

use crate::error::LinError;
use crate::exactlin::{project_onto_complement, IntMatrix, IntVector, Subspace};
use dd::double_description;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_dim: usize,
    lineality: Subspace,
    rays: Vec<IntVector>,
    span: Subspace,
    equations: IntMatrix,
    inequalities: Vec<IntVector>,
}

/// Membership modes for [`Cone::contains`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Closed,
    RelativeInterior,
}

fn check_dims(dim: usize, rows: &[IntVector]) -> Result<(), LinError> {
    match rows.iter().find(|r| r.dim() != dim) {
        Some(r) => Err(LinError::DimensionMismatch {
            expected: dim,
            found: r.dim(),
        }),
        None => Ok(()),
    }
}

fn canonical_directions(rows: Vec<IntVector>, modulo: &Subspace) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = rows
        .iter()
        .map(|r| project_onto_complement(r, modulo.basis()))
        .filter(|r| !r.is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn hrep_to_vrep(dim: usize, eqs: &[IntVector], ineqs: &[IntVector]) -> (Subspace, Vec<IntVector>) {
    let out = double_description(dim, eqs, ineqs);
    let lineality = Subspace::span(dim, &out.lineality).expect("dd output dims");
    let rays = canonical_directions(out.rays, &lineality);
    (lineality, rays)
}

fn vrep_to_hrep(dim: usize, rays: &[IntVector], lin: &[IntVector]) -> (Subspace, Vec<IntVector>) {
    // Facets of C are the extreme rays of the dual cone, whose lineality
    // space is the orthogonal complement of span(C).
    let dual = double_description(dim, lin, rays);
    let normals = Subspace::span(dim, &dual.lineality).expect("dd output dims");
    let span = normals.complement();
    let facets = canonical_directions(dual.rays, &normals);
    (span, facets)
}

impl Cone {
    fn assemble(
        dim: usize,
        lineality: Subspace,
        rays: Vec<IntVector>,
        span: Subspace,
        inequalities: Vec<IntVector>,
    ) -> Cone {
        let equations = span.equations();
        Cone {
            ambient_dim: dim,
            lineality,
            rays,
            span,
            equations,
            inequalities,
        }
    }

    /// The cone generated by `rays` (nonnegative combinations) plus the
    /// linear span of `lineality`.
    pub fn from_vrep(
        dim: usize,
        rays: &[IntVector],
        lineality: &[IntVector],
    ) -> Result<Cone, LinError> {
        check_dims(dim, rays)?;
        check_dims(dim, lineality)?;
        let (span, facets) = vrep_to_hrep(dim, rays, lineality);
        let (lin, ext) = hrep_to_vrep(dim, span.equations().rows(), &facets);
        Ok(Cone::assemble(dim, lin, ext, span, facets))
    }

    pub fn from_generators(dim: usize, gens: &[IntVector]) -> Result<Cone, LinError> {
        Cone::from_vrep(dim, gens, &[])
    }

    /// `{x : E x = 0, I x >= 0}`.
    pub fn from_hrep(
        dim: usize,
        equations: &[IntVector],
        inequalities: &[IntVector],
    ) -> Result<Cone, LinError> {
        check_dims(dim, equations)?;
        check_dims(dim, inequalities)?;
        let (lin, rays) = hrep_to_vrep(dim, equations, inequalities);
        let (span, facets) = vrep_to_hrep(dim, &rays, lin.basis().rows());
        Ok(Cone::assemble(dim, lin, rays, span, facets))
    }

    pub fn zero(dim: usize) -> Cone {
        Cone::assemble(dim, Subspace::zero(dim), Vec::new(), Subspace::zero(dim), Vec::new())
    }

    pub fn full(dim: usize) -> Cone {
        Cone::assemble(dim, Subspace::full(dim), Vec::new(), Subspace::full(dim), Vec::new())
    }

    pub fn orthant(dim: usize) -> Cone {
        let mut units: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
        units.sort();
        Cone::assemble(
            dim,
            Subspace::zero(dim),
            units.clone(),
            Subspace::full(dim),
            units,
        )
    }

    pub fn from_subspace(v: &Subspace) -> Cone {
        Cone::assemble(v.ambient_dim(), v.clone(), Vec::new(), v.clone(), Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the cone (of its linear span).
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    /// Extreme rays of the pointed part, modulo the lineality space.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn equations(&self) -> &IntMatrix {
        &self.equations
    }

    /// Facet normals `a` with `a·x >= 0` on the cone.
    pub fn inequalities(&self) -> &[IntVector] {
        &self.inequalities
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    /// Rays followed by `±` lineality basis vectors: a generating set.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.rays.clone();
        for l in self.lineality.basis().rows() {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }

    fn check_point(&self, p: &IntVector) -> Result<(), LinError> {
        if p.dim() != self.ambient_dim {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.dim(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &IntVector, mode: Mode) -> Result<bool, LinError> {
        self.check_point(p)?;
        if !self.equations.rows().iter().all(|e| e.dot(p).is_zero()) {
            return Ok(false);
        }
        Ok(match mode {
            Mode::Closed => self.inequalities.iter().all(|a| !a.dot(p).is_negative()),
            Mode::RelativeInterior => self.inequalities.iter().all(|a| a.dot(p).is_positive()),
        })
    }

    /// Shorthand for closed membership; panics on dimension mismatch.
    pub fn contains_point(&self, p: &IntVector) -> bool {
        self.contains(p, Mode::Closed).expect("point dimension")
    }

    /// Indices of the facets vanishing at `p`.
    pub fn tight_facets(&self, p: &IntVector) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, a)| a.dot(p).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    fn check_same_ambient(&self, other: &Cone) -> Result<(), LinError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, LinError> {
        self.check_same_ambient(other)?;
        let eqs: Vec<IntVector> = self
            .equations
            .rows()
            .iter()
            .chain(other.equations.rows())
            .cloned()
            .collect();
        let ineqs: Vec<IntVector> = self
            .inequalities
            .iter()
            .chain(&other.inequalities)
            .cloned()
            .collect();
        Cone::from_hrep(self.ambient_dim, &eqs, &ineqs)
    }

    pub fn minkowski_sum(&self, other: &Cone) -> Result<Cone, LinError> {
        self.check_same_ambient(other)?;
        let rays: Vec<IntVector> = self.rays.iter().chain(&other.rays).cloned().collect();
        let lin: Vec<IntVector> = self
            .lineality
            .basis()
            .rows()
            .iter()
            .chain(other.lineality.basis().rows())
            .cloned()
            .collect();
        Cone::from_vrep(self.ambient_dim, &rays, &lin)
    }

    pub fn intersect_subspace(&self, v: &Subspace) -> Result<Cone, LinError> {
        self.intersect(&Cone::from_subspace(v))
    }

    /// Image under a linear map `Z^ambient -> Z^map.nrows`.
    pub fn image(&self, map: &IntMatrix) -> Result<Cone, LinError> {
        let rays = self
            .rays
            .iter()
            .map(|r| map.apply(r))
            .collect::<Result<Vec<_>, _>>()?;
        let lin = self
            .lineality
            .basis()
            .rows()
            .iter()
            .map(|r| map.apply(r))
            .collect::<Result<Vec<_>, _>>()?;
        Cone::from_vrep(map.nrows(), &rays, &lin)
    }

    /// Preimage under a linear map `Z^map.ncols -> Z^ambient`.
    pub fn preimage(&self, map: &IntMatrix) -> Result<Cone, LinError> {
        if map.nrows() != self.ambient_dim {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.nrows(),
            });
        }
        let pull = |a: &IntVector| map.left_apply(a).expect("checked");
        let eqs: Vec<IntVector> = self.equations.rows().iter().map(pull).collect();
        let ineqs: Vec<IntVector> = self.inequalities.iter().map(pull).collect();
        Cone::from_hrep(map.ncols(), &eqs, &ineqs)
    }

    /// `self` is contained in `other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rays.iter().all(|r| other.contains_point(r))
            && self
                .lineality
                .basis()
                .rows()
                .iter()
                .all(|l| other.contains_point(l) && other.contains_point(&-l))
    }

    /// A relative-interior point: the sum of all generators.
    pub fn interior_point(&self) -> IntVector {
        let mut acc = IntVector::zeros(self.ambient_dim);
        for r in &self.rays {
            acc = &acc + r;
        }
        for l in self.lineality.basis().rows() {
            acc = &acc + l;
        }
        acc
    }

    /// A vector `w` with `w·x > 0` for every nonzero `x` in a pointed cone.
    pub fn grading(&self) -> Option<IntVector> {
        if !self.is_pointed() {
            return None;
        }
        let mut w = IntVector::zeros(self.ambient_dim);
        for a in &self.inequalities {
            w = &w + a;
        }
        if self.inequalities.is_empty() && !self.is_zero() {
            return None;
        }
        debug_assert!(self.rays.iter().all(|r| w.dot(r).is_positive()));
        Some(w)
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    pub fn open_faces(&self) -> Vec<OpenFace> {
        faces::open_faces(self)
    }

    /// Cartesian product `self × other`.
    pub fn product(&self, other: &Cone) -> Cone {
        let (a, b) = (self.ambient_dim, other.ambient_dim);
        let eqs: Vec<IntVector> = self
            .equations
            .rows()
            .iter()
            .map(|r| r.padded(0, b))
            .chain(other.equations.rows().iter().map(|r| r.padded(a, 0)))
            .collect();
        let ineqs: Vec<IntVector> = self
            .inequalities
            .iter()
            .map(|r| r.padded(0, b))
            .chain(other.inequalities.iter().map(|r| r.padded(a, 0)))
            .collect();
        Cone::from_hrep(a + b, &eqs, &ineqs).expect("padded dims")
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cone(rays: [")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "], lineality: {})", self.lineality.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    #[test]
    fn orthant_hrep() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(c.inequalities(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c, Cone::orthant(2));
    }

    #[test]
    fn halfplane_vrep() {
        let c = Cone::from_hrep(2, &[], &[v(&[-1, 0])]).unwrap();
        assert_eq!(c.rays(), &[v(&[-1, 0])]);
        assert_eq!(c.lineality(), &Subspace::span(2, &[v(&[0, 1])]).unwrap());
    }

    #[test]
    fn wedge_hrep() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
        assert_eq!(c.inequalities(), &[v(&[0, 1]), v(&[2, -1])]);
        // Both reps agree on all lattice points of the box [-3, 3]^2.
        for x in -3..=3 {
            for y in -3..=3 {
                let p = v(&[x, y]);
                let by_h = y >= 0 && 2 * x - y >= 0;
                assert_eq!(c.contains_point(&p), by_h, "{p}");
            }
        }
    }

    #[test]
    fn relative_interior_membership() {
        let o = Cone::orthant(2);
        assert!(o.contains(&v(&[1, 1]), Mode::RelativeInterior).unwrap());
        assert!(!o.contains(&v(&[1, 0]), Mode::RelativeInterior).unwrap());
        assert!(o.contains(&v(&[1, 0]), Mode::Closed).unwrap());
        let w = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
        assert!(w.contains(&v(&[1, 1]), Mode::RelativeInterior).unwrap());
        assert!(o.contains(&v(&[1, 1, 1]), Mode::Closed).is_err());
    }

    #[test]
    fn combine_examples() {
        let o = Cone::orthant(2);
        let half = Cone::from_hrep(2, &[], &[v(&[-1, 0])]).unwrap();
        let meet = o.intersect(&half).unwrap();
        assert_eq!(meet, Cone::from_generators(2, &[v(&[0, 1])]).unwrap());
        let a = Cone::from_generators(2, &[v(&[1, 0])]).unwrap();
        let b = Cone::from_generators(2, &[v(&[0, 1])]).unwrap();
        assert_eq!(a.minkowski_sum(&b).unwrap(), o);
        assert_eq!(o.intersect(&o).unwrap(), o);
    }

    #[test]
    fn zero_and_full() {
        assert_eq!(Cone::from_generators(3, &[]).unwrap(), Cone::zero(3));
        assert_eq!(Cone::from_hrep(3, &[], &[]).unwrap(), Cone::full(3));
        assert!(Cone::zero(3).contains_point(&v(&[0, 0, 0])));
        assert!(!Cone::zero(3).contains_point(&v(&[0, 1, 0])));
    }

    #[test]
    fn lineality_rays_are_canonical() {
        // Same halfplane written with a skewed ray.
        let a = Cone::from_vrep(2, &[v(&[-1, 5])], &[v(&[0, 2])]).unwrap();
        let b = Cone::from_hrep(2, &[], &[v(&[-1, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[2, 0])]).unwrap();
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }
}
