//! Exact integer and rational linear algebra.
//!
//! Everything is arbitrary precision: intermediate values of the cone and
//! Hilbert basis routines overflow 64-bit integers even on small inputs.

mod matrix;
mod normal_form;
mod rational;
mod subspace;
mod vector;

pub use matrix::{rank_of, IntMatrix};
pub use normal_form::{
    hermite_basis, hermite_normal_form, invariant_factors, kernel_lattice, reduce_modulo_hermite,
    saturate_lattice, smith_normal_form, solve_integer,
};
pub use rational::{project_onto_complement, solve_rational};
pub use subspace::Subspace;
pub use vector::IntVector;

pub type Int = num_bigint::BigInt;
