use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMatrix, IntVector};

/// Solves the square system `A x = b` over `Q`; `None` when `A` is singular.
pub fn solve_rational(a: &IntMatrix, b: &IntVector) -> Option<Vec<BigRational>> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "square system");
    assert_eq!(b.dim(), n, "right-hand side length");
    let mut m: Vec<Vec<BigRational>> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            r.iter()
                .chain(std::iter::once(bi))
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &pivot;
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..=n {
                let v = &m[i][j] - &f * &m[col][j];
                m[i][j] = v;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Clears denominators of a rational vector, returning the primitive integer
/// vector pointing in the same direction.
pub(crate) fn primitive_direction(x: &[BigRational]) -> IntVector {
    let lcm = x
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coords = x
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    IntVector::new(coords).primitive()
}

/// The orthogonal projection of `x` onto the complement of the row span of
/// `basis`, scaled to a primitive integer vector (zero if `x` lies in the
/// span). `basis` rows must be linearly independent.
pub fn project_onto_complement(x: &IntVector, basis: &IntMatrix) -> IntVector {
    if basis.nrows() == 0 {
        return x.primitive();
    }
    let gram = basis.mul(&basis.transpose()).expect("square gram matrix");
    let rhs = basis.apply(x).expect("matching dimension");
    let coeffs = solve_rational(&gram, &rhs).expect("independent basis rows");
    let proj: Vec<BigRational> = (0..x.dim())
        .map(|j| {
            let shift: BigRational = basis
                .rows()
                .iter()
                .zip(&coeffs)
                .map(|(r, c)| c * BigRational::from_integer(r[j].clone()))
                .sum();
            BigRational::from_integer(x[j].clone()) - shift
        })
        .collect();
    primitive_direction(&proj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = IntMatrix::from_i64_rows(2, &[&[2, 1], &[1, 3]]);
        let b = IntVector::from_i64s(&[3, 5]);
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::new(4.into(), 5.into()));
        assert_eq!(x[1], BigRational::new(7.into(), 5.into()));
        let s = IntMatrix::from_i64_rows(2, &[&[1, 2], &[2, 4]]);
        assert!(solve_rational(&s, &b).is_none());
    }

    #[test]
    fn projection_removes_span_component() {
        let basis = IntMatrix::from_i64_rows(2, &[&[0, 1]]);
        let p = project_onto_complement(&IntVector::from_i64s(&[-2, 7]), &basis);
        assert_eq!(p, IntVector::from_i64s(&[-1, 0]));
        let diag = IntMatrix::from_i64_rows(2, &[&[1, 1]]);
        let p = project_onto_complement(&IntVector::from_i64s(&[3, 1]), &diag);
        assert_eq!(p, IntVector::from_i64s(&[1, -1]));
    }
}
