//! Face lattice enumeration.
//!
//! A face is identified by the set of facets vanishing on it. Starting from
//! the cone itself, each face is intersected with every facet hyperplane not
//! already tight on it; the result is closed under "facets tight on all of
//! its rays" and deduplicated.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use super::Cone;
use crate::exactlin::{IntVector, Subspace};

/// A relatively open face of a cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenFace {
    /// Indices into the parent's facet list that vanish on this face.
    pub facets: Vec<usize>,
    pub span: Subspace,
    pub closed_face: Cone,
    pub dim: usize,
}

impl OpenFace {
    /// Membership in the relatively open face.
    pub fn contains(&self, parent: &Cone, p: &IntVector) -> bool {
        parent.contains_point(p) && parent.tight_facets(p) == self.facets
    }
}

fn tight_on(cone: &Cone, rays: &[usize]) -> Vec<usize> {
    cone.inequalities()
        .iter()
        .enumerate()
        .filter(|(_, a)| rays.iter().all(|&r| a.dot(&cone.rays()[r]).is_zero()))
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn open_faces(cone: &Cone) -> Vec<OpenFace> {
    let all: Vec<usize> = (0..cone.rays().len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut queue = VecDeque::new();
    let top = tight_on(cone, &all);
    seen.insert(top.clone());
    queue.push_back((top, all));
    while let Some((facets, rays)) = queue.pop_front() {
        for (i, a) in cone.inequalities().iter().enumerate() {
            if facets.contains(&i) {
                continue;
            }
            let sub: Vec<usize> = rays
                .iter()
                .copied()
                .filter(|&r| a.dot(&cone.rays()[r]).is_zero())
                .collect();
            let s = tight_on(cone, &sub);
            if seen.insert(s.clone()) {
                queue.push_back((s, sub));
            }
        }
        found.push((facets, rays));
    }

    let lin = cone.lineality().basis().rows();
    let mut out: Vec<OpenFace> = found
        .into_iter()
        .map(|(facets, rays)| {
            let gens: Vec<IntVector> = rays.iter().map(|&r| cone.rays()[r].clone()).collect();
            let closed_face =
                Cone::from_vrep(cone.ambient_dim(), &gens, lin).expect("face dims");
            OpenFace {
                facets,
                span: closed_face.span().clone(),
                dim: closed_face.dim(),
                closed_face,
            }
        })
        .collect();
    out.sort_by(|x, y| (x.dim, &x.span).cmp(&(y.dim, &y.span)));
    out
}

impl Cone {
    /// The open face whose relative interior contains `p`.
    pub fn face_of(&self, p: &IntVector) -> Option<OpenFace> {
        if !self.contains_point(p) {
            return None;
        }
        let t = self.tight_facets(p);
        self.open_faces().into_iter().find(|f| f.facets == t)
    }
}
