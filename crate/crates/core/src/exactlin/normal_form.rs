//! Hermite and Smith normal forms, kernels and lattice saturation.
//!
//! All routines use exact big-integer arithmetic with a fixed pivot rule
//! (leftmost column, smallest absolute value, lowest row index on ties), so
//! the output is reproducible bit for bit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVector};

type Rows = Vec<Vec<BigInt>>;

fn to_rows(m: &IntMatrix) -> Rows {
    m.rows().iter().map(|r| r.coords().to_vec()).collect()
}

fn from_rows(ncols: usize, rows: Rows) -> IntMatrix {
    IntMatrix::new(ncols, rows.into_iter().map(IntVector::new).collect())
        .expect("internal rows are rectangular")
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// `rows[target] -= q * rows[source]`
fn row_sub(rows: &mut Rows, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn row_neg(rows: &mut Rows, i: usize) {
    for c in rows[i].iter_mut() {
        *c = -&*c;
    }
}

/// `cols[target] -= q * cols[source]` on a row-major matrix.
fn col_sub(rows: &mut Rows, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in rows.iter_mut() {
        let s = r[source].clone();
        r[target] -= q * s;
    }
}

fn col_swap(rows: &mut Rows, a: usize, b: usize) {
    for r in rows.iter_mut() {
        r.swap(a, b);
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`.
///
/// `H` is in row echelon form, pivots are positive, entries above a pivot lie
/// in `[0, pivot)`, and zero rows are at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut h = to_rows(m);
    let mut u = identity_rows(nrows);
    let mut prow = 0;
    for col in 0..ncols {
        if prow == nrows {
            break;
        }
        let mut have_pivot = false;
        loop {
            let best = (prow..nrows)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            have_pivot = true;
            h.swap(prow, best);
            u.swap(prow, best);
            let mut cleared = true;
            for i in prow + 1..nrows {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[prow][col]);
                row_sub(&mut h, i, prow, &q);
                row_sub(&mut u, i, prow, &q);
                if !h[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if !have_pivot {
            continue;
        }
        if h[prow][col].is_negative() {
            row_neg(&mut h, prow);
            row_neg(&mut u, prow);
        }
        for i in 0..prow {
            let q = h[i][col].div_floor(&h[prow][col]);
            row_sub(&mut h, i, prow, &q);
            row_sub(&mut u, i, prow, &q);
        }
        prow += 1;
    }
    (from_rows(ncols, h), from_rows(nrows, u))
}

/// The nonzero rows of the Hermite normal form: a canonical basis of the row
/// lattice.
pub fn hermite_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let rows = h.into_rows().into_iter().filter(|r| !r.is_zero()).collect();
    IntMatrix::new(m.ncols(), rows).expect("rectangular")
}

/// Smith normal form: returns `(D, U, V)` with `U * M * V = D`, `U`, `V`
/// unimodular, `D` diagonal with nonnegative entries `d1 | d2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut d = to_rows(m);
    let mut u = identity_rows(nrows);
    let mut v = identity_rows(ncols);
    let steps = nrows.min(ncols);

    for t in 0..steps {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if d[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        col_swap(&mut d, t, bj);
        col_swap(&mut v, t, bj);

        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..ncols {
                let q = d[t][j].div_floor(&d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                // A remainder smaller than the pivot survived; make it the pivot.
                let mut best = (t, t);
                for i in t + 1..nrows {
                    if !d[i][t].is_zero() && d[i][t].abs() < d[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..ncols {
                    if !d[t][j].is_zero() && d[t][j].abs() < d[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap(t, best.0);
                    u.swap(t, best.0);
                }
                if best.1 != t {
                    col_swap(&mut d, t, best.1);
                    col_swap(&mut v, t, best.1);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility on the block.
            let offender = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[i][j].is_multiple_of(&d[t][t]));
            match offender {
                Some((i, _)) => {
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut d, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            row_neg(&mut d, t);
            row_neg(&mut u, t);
        }
    }
    (
        from_rows(ncols, d),
        from_rows(nrows, u),
        from_rows(ncols, v),
    )
}

/// The diagonal of a Smith normal form, `min(nrows, ncols)` entries.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = smith_normal_form(m);
    (0..m.nrows().min(m.ncols()))
        .map(|i| d.entry(i, i).clone())
        .collect()
}

/// A basis of `{x in Z^ncols : M x = 0}` in Hermite normal form.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let n = m.ncols();
    if m.nrows() == 0 || m.is_zero() {
        return IntMatrix::identity(n);
    }
    let (h, u) = hermite_normal_form(&m.transpose());
    let rows: Vec<IntVector> = h
        .rows()
        .iter()
        .zip(u.rows())
        .filter(|(hr, _)| hr.is_zero())
        .map(|(_, ur)| ur.clone())
        .collect();
    let basis = IntMatrix::new(n, rows).expect("rectangular");
    hermite_basis(&basis)
}

/// A canonical basis of `span(L) ∩ Z^n`, the saturation of the group
/// generated by the rows of `L`.
pub fn saturate_lattice(l: &IntMatrix) -> IntMatrix {
    if l.is_zero() {
        return IntMatrix::empty(l.ncols());
    }
    let normals = kernel_lattice(l);
    kernel_lattice(&normals)
}

/// Some integer solution of `M x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &IntVector) -> Option<IntVector> {
    assert_eq!(m.nrows(), b.dim(), "right-hand side length");
    let (d, u, v) = smith_normal_form(m);
    // M = U^-1 D V^-1, so M x = b  <=>  D y = U b  with  x = V y.
    let ub = u.apply(b).expect("dimensions checked");
    let mut y = IntVector::zeros(m.ncols()).into_coords();
    for i in 0..m.nrows() {
        let di = if i < m.ncols() {
            d.entry(i, i).clone()
        } else {
            BigInt::zero()
        };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(v.apply(&IntVector::new(y)).expect("dimensions checked"))
}

/// Reduces `x` modulo the row lattice of a matrix already in Hermite normal
/// form, giving a canonical coset representative.
pub fn reduce_modulo_hermite(x: &IntVector, hermite: &IntMatrix) -> IntVector {
    let mut x = x.clone();
    for row in hermite.rows() {
        let Some(p) = row.leading_index() else {
            continue;
        };
        let q = x[p].div_floor(&row[p]);
        if !q.is_zero() {
            x = IntVector::combine(&BigInt::from(1), &x, &(-q), row);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_row_hermite(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for (i, r) in h.rows().iter().enumerate() {
            match r.leading_index() {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !r[p].is_positive() {
                        return false;
                    }
                    for above in &h.rows()[..i] {
                        if above[p].is_negative() || above[p] >= r[p] {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(2);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let z = IntMatrix::from_i64_rows(2, &[&[0, 0]]);
        let (h, _) = hermite_normal_form(&z);
        assert_eq!(h, z);
    }

    #[test]
    fn hnf_preserves_determinant() {
        let m = IntMatrix::from_i64_rows(2, &[&[2, 6], &[4, 8]]);
        let (h, u) = hermite_normal_form(&m);
        assert!(is_row_hermite(&h));
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(h.determinant().unwrap().abs(), BigInt::from(8));
        assert_eq!(h, IntMatrix::from_i64_rows(2, &[&[2, 2], &[0, 4]]));
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(smith_normal_form(&id).0, id);

        let m = IntMatrix::from_i64_rows(2, &[&[2, 6], &[4, 8]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(d, IntMatrix::from_i64_rows(2, &[&[2, 0], &[0, 4]]));
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d);

        let r = IntMatrix::from_i64_rows(2, &[&[2, -2]]);
        let (d, u, v) = smith_normal_form(&r);
        assert_eq!(d, IntMatrix::from_i64_rows(2, &[&[2, 0]]));
        assert_eq!(u.mul(&r).unwrap().mul(&v).unwrap(), d);
    }

    #[test]
    fn kernel_examples() {
        let m = IntMatrix::from_i64_rows(2, &[&[1, 1]]);
        assert_eq!(kernel_lattice(&m), IntMatrix::from_i64_rows(2, &[&[1, -1]]));
        assert_eq!(kernel_lattice(&IntMatrix::identity(2)).nrows(), 0);
        let z = IntMatrix::from_i64_rows(2, &[&[0, 0]]);
        assert_eq!(kernel_lattice(&z), IntMatrix::identity(2));
    }

    #[test]
    fn saturation_examples() {
        let a = IntMatrix::from_i64_rows(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(saturate_lattice(&a), IntMatrix::identity(2));
        let b = IntMatrix::from_i64_rows(2, &[&[2, 4]]);
        assert_eq!(saturate_lattice(&b), IntMatrix::from_i64_rows(2, &[&[1, 2]]));
        // (1,0) is in the saturation: 4*(1,0) = 2*(2,2) - (0,4).
        let c = IntMatrix::from_i64_rows(2, &[&[2, 2], &[0, 4]]);
        assert_eq!(saturate_lattice(&c), IntMatrix::identity(2));
    }

    #[test]
    fn integer_solve() {
        let m = IntMatrix::from_i64_rows(2, &[&[2, 4]]);
        assert!(solve_integer(&m, &IntVector::from_i64s(&[3])).is_none());
        let x = solve_integer(&m, &IntVector::from_i64s(&[6])).unwrap();
        assert_eq!(m.apply(&x).unwrap(), IntVector::from_i64s(&[6]));
    }

    #[test]
    fn coset_representative() {
        let h = IntMatrix::from_i64_rows(2, &[&[1, 1], &[0, 3]]);
        let r = reduce_modulo_hermite(&IntVector::from_i64s(&[5, 11]), &h);
        assert_eq!(r, IntVector::from_i64s(&[0, 0]));
        let r = reduce_modulo_hermite(&IntVector::from_i64s(&[5, 10]), &h);
        assert_eq!(r, IntVector::from_i64s(&[0, 2]));
    }
}
