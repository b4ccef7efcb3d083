#![allow(dead_code)]

use prisma::exactlin::{IntMatrix, IntVector, Subspace};
use proptest::prelude::*;

pub fn v(c: &[i64]) -> IntVector {
    IntVector::from_i64s(c)
}

pub fn vec_in(dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(lo..=hi, dim).prop_map(|c| IntVector::from_i64s(&c))
}

pub fn vecs_in(
    dim: usize,
    count: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<IntVector>> {
    prop::collection::vec(vec_in(dim, lo, hi), count)
}

pub fn matrix_in(
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(vec_in(cols, lo, hi), rows)
        .prop_map(move |r| IntMatrix::new(cols, r).unwrap())
}

/// A random subspace spanned by up to `dim` small vectors.
pub fn subspace_in(dim: usize) -> impl Strategy<Value = Subspace> {
    vecs_in(dim, 0..=dim, -2, 2).prop_map(move |g| Subspace::span(dim, &g).unwrap())
}
