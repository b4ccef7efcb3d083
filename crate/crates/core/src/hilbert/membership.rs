use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{hilbert_basis, SaturatedMonoid};
use crate::cone::Cone;
use crate::error::LinError;
use crate::exactlin::{solve_integer, IntMatrix, IntVector};

/// Node budget for [`AffineMonoid::membership`].
pub const DEFAULT_BUDGET: usize = 200_000;

/// A finitely generated submonoid of `Z^n`.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    ambient_dim: usize,
    gens: Vec<IntVector>,
    cone: OnceLock<Cone>,
    saturation: OnceLock<SaturatedMonoid>,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.gens == other.gens
    }
}

impl Eq for AffineMonoid {}

impl std::hash::Hash for AffineMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.gens.hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Nonnegative coefficients, one per generator.
    Yes(Vec<BigInt>),
    No,
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

impl AffineMonoid {
    pub fn new(ambient_dim: usize, gens: &[IntVector]) -> Result<AffineMonoid, LinError> {
        if let Some(g) = gens.iter().find(|g| g.dim() != ambient_dim) {
            return Err(LinError::DimensionMismatch {
                expected: ambient_dim,
                found: g.dim(),
            });
        }
        let mut gens: Vec<IntVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        gens.sort();
        gens.dedup();
        Ok(AffineMonoid {
            ambient_dim,
            gens,
            cone: OnceLock::new(),
            saturation: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn gens(&self) -> &[IntVector] {
        &self.gens
    }

    pub fn cone(&self) -> &Cone {
        self.cone
            .get_or_init(|| Cone::from_generators(self.ambient_dim, &self.gens).expect("checked"))
    }

    /// `{α : kα ∈ M for some k >= 1}`, which is `cone(M) ∩ Z^n`.
    pub fn saturation(&self) -> &SaturatedMonoid {
        self.saturation.get_or_init(|| hilbert_basis(self.cone()))
    }

    /// Whether the monoid equals its saturation; `None` if a membership
    /// query ran out of budget.
    pub fn is_saturated(&self) -> Option<bool> {
        let sat = self.saturation();
        for g in sat.generators() {
            match self.membership(&g, DEFAULT_BUDGET).ok()? {
                Membership::Yes(_) => {}
                Membership::No => return Some(false),
                Membership::Unknown => return None,
            }
        }
        Some(true)
    }

    /// Decides `p ∈ M`. Generators in the lineality space of the cone
    /// generate a group; the rest are strictly positive under a grading, so
    /// a depth-first search over them terminates.
    pub fn membership(&self, p: &IntVector, budget: usize) -> Result<Membership, LinError> {
        if p.dim() != self.ambient_dim {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.dim(),
            });
        }
        let m = self.gens.len();
        if p.is_zero() {
            return Ok(Membership::Yes(vec![BigInt::zero(); m]));
        }
        let cone = self.cone();
        if !cone.contains_point(p) {
            return Ok(Membership::No);
        }
        let all = IntMatrix::from_columns(self.ambient_dim, &self.gens)?;
        if solve_integer(&all, p).is_none() {
            return Ok(Membership::No);
        }

        let lin = cone.lineality();
        let (group, free): (Vec<usize>, Vec<usize>) =
            (0..m).partition(|&i| lin.contains(&self.gens[i]));
        let mut w = IntVector::zeros(self.ambient_dim);
        for a in cone.inequalities() {
            w = &w + a;
        }
        let group_cols: Vec<IntVector> = group.iter().map(|&i| self.gens[i].clone()).collect();
        let group_mat = IntMatrix::from_columns(self.ambient_dim, &group_cols)?;

        let mut search = Search {
            gens: &self.gens,
            free: &free,
            weights: free.iter().map(|&i| w.dot(&self.gens[i])).collect(),
            w: &w,
            cone,
            group_mat: &group_mat,
            failed: HashSet::new(),
            nodes: 0,
            budget,
            counts: vec![BigInt::zero(); m],
        };
        let found = search.run(p.clone());
        let Some(residual) = found else {
            return Ok(if search.nodes > budget {
                Membership::Unknown
            } else {
                Membership::No
            });
        };
        let mut coeffs = search.counts;
        if !group.is_empty() {
            let t = solve_integer(&group_mat, &residual).expect("checked by search");
            let z = positive_relation(&group_mat);
            // t + K z is nonnegative for large enough K.
            let mut k = BigInt::zero();
            for (ti, zi) in t.iter().zip(z.iter()) {
                if ti.is_negative() {
                    let need = (-ti + zi - 1u32) / zi;
                    if need > k {
                        k = need;
                    }
                }
            }
            for (j, &gi) in group.iter().enumerate() {
                coeffs[gi] += &t[j] + &k * &z[j];
            }
        }
        Ok(Membership::Yes(coeffs))
    }
}

/// A relation `Σ z_j g_j = 0` with every `z_j > 0`; exists because the
/// columns positively span a linear space.
fn positive_relation(cols: &IntMatrix) -> IntVector {
    let m = cols.ncols();
    let units: Vec<IntVector> = (0..m).map(|j| IntVector::unit(m, j)).collect();
    let kernel = Cone::from_hrep(m, cols.rows(), &units).expect("dimensions");
    let z = kernel.interior_point();
    debug_assert!(z.iter().all(|x| x.is_positive()));
    z
}

struct Search<'a> {
    gens: &'a [IntVector],
    free: &'a [usize],
    weights: Vec<BigInt>,
    w: &'a IntVector,
    cone: &'a Cone,
    group_mat: &'a IntMatrix,
    failed: HashSet<(IntVector, usize)>,
    nodes: usize,
    budget: usize,
    counts: Vec<BigInt>,
}

struct Frame {
    q: IntVector,
    start: usize,
    next: usize,
    level: BigInt,
}

impl Search<'_> {
    fn in_group(&self, q: &IntVector) -> bool {
        if self.group_mat.ncols() == 0 {
            q.is_zero()
        } else {
            solve_integer(self.group_mat, q).is_some()
        }
    }

    /// Depth-first search with an explicit stack, subtracting generators in
    /// nonincreasing index order. Returns the residual left for the group
    /// part on success; the generators taken are recorded in `counts`.
    fn run(&mut self, p: IntVector) -> Option<IntVector> {
        let mut stack: Vec<Frame> = Vec::new();
        let mut pending = Some((p, 0));
        loop {
            if let Some((q, start)) = pending.take() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return None;
                }
                if self.in_group(&q) {
                    for f in &stack {
                        self.counts[self.free[f.next - 1]] += 1;
                    }
                    return Some(q);
                }
                if !self.failed.contains(&(q.clone(), start)) {
                    let level = self.w.dot(&q);
                    stack.push(Frame {
                        q,
                        start,
                        next: start,
                        level,
                    });
                }
                continue;
            }
            let frame = stack.last_mut()?;
            while frame.next < self.free.len() {
                let k = frame.next;
                frame.next += 1;
                if self.weights[k] > frame.level {
                    continue;
                }
                let next = &frame.q - &self.gens[self.free[k]];
                if self.cone.contains_point(&next) {
                    pending = Some((next, k));
                    break;
                }
            }
            if pending.is_none() {
                let f = stack.pop().expect("nonempty");
                self.failed.insert((f.q, f.start));
            }
        }
    }
}
