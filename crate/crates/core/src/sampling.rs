//! Lattice points of boxes, for oracles and probes.

use crate::exactlin::IntVector;

/// All points of `[lo, hi]^dim` in lexicographic order.
pub fn box_points(dim: usize, lo: i64, hi: i64) -> BoxPoints {
    BoxPoints {
        lo,
        hi,
        next: if lo <= hi { Some(vec![lo; dim]) } else { None },
    }
}

pub struct BoxPoints {
    lo: i64,
    hi: i64,
    next: Option<Vec<i64>>,
}

impl Iterator for BoxPoints {
    type Item = IntVector;

    fn next(&mut self) -> Option<IntVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        self.next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if succ[i] < self.hi {
                succ[i] += 1;
                break Some(succ);
            }
            succ[i] = self.lo;
        };
        Some(IntVector::from_i64s(&current))
    }
}
