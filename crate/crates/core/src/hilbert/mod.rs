//! Hilbert bases of rational cones, saturation of finitely generated
//! monoids and monoid membership.
//!
//! The lattice points of a cone `C` split as `(C ∩ L) + lift(C' ∩ Z^k)` where
//! `L` is the lineality space and `C'` the (pointed) image of `C` under a
//! surjection `Z^n -> Z^k` with kernel `L ∩ Z^n`. `C'` is then expressed in
//! coordinates of its own span lattice, where it is full-dimensional, and
//! handled by a placing triangulation.

mod membership;
mod simplicial;

pub use membership::{AffineMonoid, Membership, DEFAULT_BUDGET};

use crate::cone::Cone;
use crate::exactlin::{
    kernel_lattice, reduce_modulo_hermite, solve_integer, IntMatrix, IntVector,
};
use simplicial::{parallelepiped_points, placing_triangulation};

/// The lattice points of a rational cone, as a lineality lattice basis plus
/// the minimal generators of the pointed part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaturatedMonoid {
    pub lineality_basis: IntMatrix,
    pub hilbert_basis: Vec<IntVector>,
    pub cone: Cone,
}

impl SaturatedMonoid {
    pub fn ambient_dim(&self) -> usize {
        self.cone.ambient_dim()
    }

    pub fn contains(&self, p: &IntVector) -> bool {
        self.cone.contains_point(p)
    }

    /// Monoid generators: Hilbert basis followed by `±` lineality vectors.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.hilbert_basis.clone();
        for l in self.lineality_basis.rows() {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.cone.is_zero()
    }

    /// `self ∩ other` as lattice-point sets.
    pub fn intersect(&self, other: &SaturatedMonoid) -> SaturatedMonoid {
        hilbert_basis(&self.cone.intersect(&other.cone).expect("same ambient dimension"))
    }
}

/// Minimal generators of a full-dimensional pointed cone in `Z^d`.
fn pointed_full_dim(d: usize, rays: &[IntVector]) -> Vec<IntVector> {
    let cone = Cone::from_generators(d, rays).expect("ray dimensions");
    let mut candidates: Vec<IntVector> = rays.to_vec();
    for simplex in placing_triangulation(d, rays) {
        let gens: Vec<IntVector> = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(&gens));
    }
    candidates.sort();
    candidates.dedup();
    // A candidate is reducible iff subtracting some other candidate stays in
    // the cone: its irreducible summands are themselves candidates.
    let mut basis: Vec<IntVector> = candidates
        .iter()
        .filter(|h| {
            !candidates
                .iter()
                .any(|c| c != *h && cone.contains_point(&(*h - c)))
        })
        .cloned()
        .collect();
    basis.sort();
    basis
}

/// `Z^n ∩ cone(gens)`, the saturation of a finitely generated monoid.
pub fn saturate_monoid(m: &AffineMonoid) -> SaturatedMonoid {
    m.saturation().clone()
}

/// The Hilbert basis of `c ∩ Z^n`.
pub fn hilbert_basis(c: &Cone) -> SaturatedMonoid {
    let n = c.ambient_dim();
    let lin = c.lineality().basis().clone();
    // Surjection with kernel L ∩ Z^n (a saturated lattice has unit invariant
    // factors, so its orthogonal lattice basis maps onto Z^k).
    let quotient = if lin.nrows() == 0 {
        IntMatrix::identity(n)
    } else {
        kernel_lattice(&lin)
    };
    let k = quotient.nrows();
    let images: Vec<IntVector> = c
        .rays()
        .iter()
        .map(|r| quotient.apply(r).expect("ambient dimension"))
        .collect();

    let pointed = Cone::from_generators(k, &images).expect("quotient dimension");
    let span = pointed.span().basis().clone();
    let d = span.nrows();
    let span_t = span.transpose();
    let local: Vec<IntVector> = pointed
        .rays()
        .iter()
        .map(|r| solve_integer(&span_t, r).expect("ray in its span lattice"))
        .collect();

    let mut basis: Vec<IntVector> = pointed_full_dim(d, &local)
        .iter()
        .map(|y| {
            let q = span.left_apply(y).expect("span coordinates");
            let x = if lin.nrows() == 0 {
                q
            } else {
                let lift = solve_integer(&quotient, &q).expect("quotient map is onto");
                reduce_modulo_hermite(&lift, &lin)
            };
            debug_assert!(c.contains_point(&x));
            x
        })
        .collect();
    basis.sort();
    SaturatedMonoid {
        lineality_basis: lin,
        hilbert_basis: basis,
        cone: c.clone(),
    }
}
