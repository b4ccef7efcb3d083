//! Incremental double description.
//!
//! Starts from the whole space (lineality = standard basis, no rays) and
//! inserts one homogeneous constraint at a time. While the constraint is not
//! identically zero on the current lineality space, one lineality direction
//! is consumed; afterwards rays are split by sign and adjacent pairs are
//! combined. Adjacency uses the algebraic (rank) test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlin::{rank_of, IntVector};

pub(crate) struct DdOutput {
    /// A basis of the lineality space (not canonical).
    pub lineality: Vec<IntVector>,
    /// Extreme rays of the cone modulo the lineality space.
    pub rays: Vec<IntVector>,
}

struct Ray {
    v: IntVector,
    /// `tight[j]` iff processed constraint `j` vanishes on this ray.
    tight: Vec<bool>,
}

fn prepare(rows: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = rows
        .iter()
        .filter(|r| !r.is_zero())
        .map(IntVector::primitive)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Computes `{x : E x = 0, I x >= 0}` in double description.
pub(crate) fn double_description(
    dim: usize,
    equations: &[IntVector],
    inequalities: &[IntVector],
) -> DdOutput {
    let mut lineality: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<IntVector> = Vec::new();

    let constraints = prepare(equations)
        .into_iter()
        .map(|a| (a, true))
        .chain(prepare(inequalities).into_iter().map(|a| (a, false)));

    for (a, is_eq) in constraints {
        if let Some(idx) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut pivot = lineality.remove(idx);
            let mut s = a.dot(&pivot);
            if s.is_negative() {
                pivot = -pivot;
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = a.dot(l);
                if !t.is_zero() {
                    *l = IntVector::combine(&s, l, &-t, &pivot).primitive();
                }
            }
            for r in rays.iter_mut() {
                let t = a.dot(&r.v);
                if !t.is_zero() {
                    r.v = IntVector::combine(&s, &r.v, &-t, &pivot).primitive();
                }
                r.tight.push(true);
            }
            if !is_eq {
                let mut tight = vec![true; processed.len()];
                tight.push(false);
                rays.push(Ray {
                    v: pivot.primitive(),
                    tight,
                });
            }
            processed.push(a);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pointed_rank = dim - lineality.len();
        let mut next: Vec<Ray> = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            let keep = v.is_zero() || (v.is_positive() && !is_eq);
            if keep {
                let mut tight = r.tight.clone();
                tight.push(v.is_zero());
                next.push(Ray {
                    v: r.v.clone(),
                    tight,
                });
            }
        }
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if let Some(target) = pointed_rank.checked_sub(2) {
            for &p in &positive {
                for &q in &negative {
                    if !adjacent(&rays[p], &rays[q], &processed, target) {
                        continue;
                    }
                    let v = IntVector::combine(&values[p], &rays[q].v, &-&values[q], &rays[p].v)
                        .primitive();
                    let mut tight: Vec<bool> = rays[p]
                        .tight
                        .iter()
                        .zip(&rays[q].tight)
                        .map(|(x, y)| *x && *y)
                        .collect();
                    tight.push(true);
                    next.push(Ray { v, tight });
                }
            }
        }
        next.sort_by(|x, y| x.v.cmp(&y.v));
        next.dedup_by(|x, y| x.v == y.v);
        rays = next;
        processed.push(a);
    }

    DdOutput {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

fn adjacent(p: &Ray, q: &Ray, processed: &[IntVector], target_rank: usize) -> bool {
    let common: Vec<IntVector> = processed
        .iter()
        .enumerate()
        .filter(|(j, _)| p.tight[*j] && q.tight[*j])
        .map(|(_, a)| a.clone())
        .collect();
    if common.len() < target_rank {
        return false;
    }
    rank_of(&common) == target_rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    #[test]
    fn orthant_from_inequalities() {
        let out = double_description(2, &[], &[v(&[1, 0]), v(&[0, 1])]);
        assert!(out.lineality.is_empty());
        let mut rays = out.rays;
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // x3 >= |x1|, x3 >= |x2|: four facets, four extreme rays.
        let ineqs = [v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        let out = double_description(3, &[], &ineqs);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays.len(), 4);
        for r in &out.rays {
            assert!(ineqs.iter().all(|a| !a.dot(r).is_negative()));
        }
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let out = double_description(2, &[], &[v(&[-1, 0])]);
        assert_eq!(out.lineality.len(), 1);
        assert_eq!(out.rays.len(), 1);
    }

    #[test]
    fn equation_cuts_dimension() {
        let out = double_description(3, &[v(&[0, 0, 1])], &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(out.lineality.is_empty());
        let mut rays = out.rays;
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }
}
