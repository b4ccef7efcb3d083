use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntVector;
use crate::error::LinError;

/// A dense integer matrix stored by rows.
///
/// `ncols` is tracked separately so that matrices without rows still know
/// the dimension of the space they act on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(ncols: usize, rows: Vec<IntVector>) -> Result<Self, LinError> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(LinError::DimensionMismatch {
                expected: ncols,
                found: bad.dim(),
            });
        }
        Ok(IntMatrix { rows, ncols })
    }

    /// Panics when the rows have differing lengths; intended for literals.
    pub fn from_i64_rows(ncols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::new(ncols, rows).expect("rows must share the column count")
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: (0..nrows).map(|_| IntVector::zeros(ncols)).collect(),
            ncols,
        }
    }

    pub fn empty(ncols: usize) -> Self {
        IntMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n).map(|i| IntVector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[IntVector]) -> Result<Self, LinError> {
        if let Some(bad) = columns.iter().find(|c| c.dim() != nrows) {
            return Err(LinError::DimensionMismatch {
                expected: nrows,
                found: bad.dim(),
            });
        }
        let rows = (0..nrows)
            .map(|i| IntVector::new(columns.iter().map(|c| c[i].clone()).collect()))
            .collect();
        Ok(IntMatrix {
            rows,
            ncols: columns.len(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector::new(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(IntVector::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix {
            rows: self.columns(),
            ncols: self.nrows(),
        }
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinError> {
        if self.ncols != rhs.nrows() {
            return Err(LinError::DimensionMismatch {
                expected: self.ncols,
                found: rhs.nrows(),
            });
        }
        let cols = rhs.columns();
        let rows = self
            .rows
            .iter()
            .map(|r| IntVector::new(cols.iter().map(|c| r.dot(c)).collect()))
            .collect();
        Ok(IntMatrix {
            rows,
            ncols: rhs.ncols,
        })
    }

    /// `self * x` for a column vector `x`.
    pub fn apply(&self, x: &IntVector) -> Result<IntVector, LinError> {
        if x.dim() != self.ncols {
            return Err(LinError::DimensionMismatch {
                expected: self.ncols,
                found: x.dim(),
            });
        }
        Ok(IntVector::new(self.rows.iter().map(|r| r.dot(x)).collect()))
    }

    /// `y^T * self` for a row vector `y`.
    pub fn left_apply(&self, y: &IntVector) -> Result<IntVector, LinError> {
        if y.dim() != self.nrows() {
            return Err(LinError::DimensionMismatch {
                expected: self.nrows(),
                found: y.dim(),
            });
        }
        let mut acc = IntVector::zeros(self.ncols);
        for (c, r) in y.iter().zip(&self.rows) {
            if !c.is_zero() {
                acc = IntVector::combine(&BigInt::one(), &acc, c, r);
            }
        }
        Ok(acc)
    }

    /// Stacks the rows of `other` below those of `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinError> {
        if self.ncols != other.ncols {
            return Err(LinError::DimensionMismatch {
                expected: self.ncols,
                found: other.ncols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(IntMatrix {
            rows,
            ncols: self.ncols,
        })
    }

    /// Drops the columns whose index is not listed, keeping the given order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| IntVector::new(keep.iter().map(|&j| r[j].clone()).collect()))
            .collect();
        IntMatrix {
            rows,
            ncols: keep.len(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinError> {
        if self.nrows() != self.ncols {
            return Err(LinError::NotSquare {
                rows: self.nrows(),
                cols: self.ncols,
            });
        }
        let n = self.ncols;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(d) if d.abs().is_one())
    }
}

/// Rank of a list of equal-length integer vectors.
pub fn rank_of(rows: &[IntVector]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.coords().to_vec())
        .collect();
    if a.is_empty() {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let (f, g) = (a[rank][col].clone(), a[i][col].clone());
            for j in col..ncols {
                let v = &a[i][j] * &f - &a[rank][j] * &g;
                a[i][j] = v;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}
