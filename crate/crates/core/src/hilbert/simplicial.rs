//! Placing triangulation of a full-dimensional pointed cone and lattice
//! points of half-open fundamental parallelepipeds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactlin::{hermite_basis, rank_of, solve_rational, IntMatrix, IntVector};

fn det_of(vectors: &[&IntVector]) -> BigInt {
    let dim = vectors.first().map_or(0, |v| v.dim());
    IntMatrix::new(dim, vectors.iter().map(|v| (*v).clone()).collect())
        .and_then(|m| m.determinant())
        .expect("square by construction")
}

/// Placing triangulation of the cone spanned by `rays` (full-dimensional in
/// `Z^dim`, pointed). Simplices are sorted index lists into `rays`.
pub(crate) fn placing_triangulation(dim: usize, rays: &[IntVector]) -> Vec<Vec<usize>> {
    if dim == 0 {
        return Vec::new();
    }
    let mut first: Vec<usize> = Vec::new();
    let mut chosen: Vec<IntVector> = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        chosen.push(r.clone());
        if rank_of(&chosen) == chosen.len() {
            first.push(i);
            if first.len() == dim {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    assert_eq!(first.len(), dim, "rays must span the ambient space");

    let mut simplices: Vec<Vec<usize>> = vec![first.clone()];
    for u in 0..rays.len() {
        if first.contains(&u) {
            continue;
        }
        // Facets lying in exactly one simplex, with the opposite vertex.
        let mut count: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
        for s in &simplices {
            for (k, &opp) in s.iter().enumerate() {
                let mut f = s.clone();
                f.remove(k);
                count.entry(f).and_modify(|e| e.0 += 1).or_insert((1, opp));
            }
        }
        let mut added = Vec::new();
        for (facet, (n, opp)) in count {
            if n != 1 {
                continue;
            }
            let mut with_u: Vec<&IntVector> = facet.iter().map(|&i| &rays[i]).collect();
            let mut with_opp = with_u.clone();
            with_u.push(&rays[u]);
            with_opp.push(&rays[opp]);
            let du = det_of(&with_u);
            let dv = det_of(&with_opp);
            if !du.is_zero() && du.signum() != dv.signum() {
                let mut s = facet.clone();
                s.push(u);
                s.sort_unstable();
                added.push(s);
            }
        }
        simplices.extend(added);
    }
    simplices
}

/// Nonzero lattice points `Σ λ_i g_i` with `0 <= λ_i < 1` for linearly
/// independent generators `g_1..g_d` of `Z^d`-cone.
pub(crate) fn parallelepiped_points(gens: &[IntVector]) -> Vec<IntVector> {
    let d = gens.len();
    let g = IntMatrix::new(d, gens.to_vec()).expect("square generator matrix");
    let h = hermite_basis(&g);
    let diag: Vec<BigInt> = (0..d).map(|i| h.entry(i, i).clone()).collect();
    if diag.iter().all(One::is_one) {
        return Vec::new();
    }
    // Inverse of G^T, column by column: lambda = (G^T)^{-1} x.
    let gt = g.transpose();
    let inv_cols: Vec<Vec<BigRational>> = (0..d)
        .map(|j| solve_rational(&gt, &IntVector::unit(d, j)).expect("nonsingular"))
        .collect();

    let mut out = Vec::new();
    let mut digits = vec![BigInt::zero(); d];
    loop {
        if digits.iter().any(|x| !x.is_zero()) {
            let mut point = vec![BigRational::zero(); d];
            for (i, gi) in gens.iter().enumerate() {
                let mut lambda = BigRational::zero();
                for (j, x) in digits.iter().enumerate() {
                    if !x.is_zero() {
                        lambda += &inv_cols[j][i] * BigRational::from_integer(x.clone());
                    }
                }
                let frac = &lambda - lambda.floor();
                if frac.is_zero() {
                    continue;
                }
                for (p, c) in point.iter_mut().zip(gi.iter()) {
                    *p += &frac * BigRational::from_integer(c.clone());
                }
            }
            let coords: Vec<BigInt> = point
                .into_iter()
                .map(|q| {
                    debug_assert!(q.is_integer());
                    q.to_integer()
                })
                .collect();
            let v = IntVector::new(coords);
            if !v.is_zero() {
                out.push(v);
            }
        }
        // Mixed-radix increment over 0 <= digits[i] < diag[i].
        let mut i = 0;
        loop {
            if i == d {
                out.sort();
                out.dedup();
                return out;
            }
            digits[i] += 1;
            if digits[i] < diag[i] {
                break;
            }
            digits[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// `|det|` of the generator matrix, the number of parallelepiped points.
#[cfg(test)]
fn multiplicity(gens: &[IntVector]) -> BigInt {
    let refs: Vec<&IntVector> = gens.iter().collect();
    det_of(&refs).abs()
}
