//! Group completion of finitely presented commutative monoids.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::PresentationError;
use crate::exactlin::{smith_normal_form, IntMatrix, IntVector};

/// Generators `0..g` subject to relations `u·gens = v·gens` with `u, v` in
/// `N^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: usize,
    relations: Vec<(IntVector, IntVector)>,
}

impl MonoidPresentation {
    pub fn new(
        generators: usize,
        relations: Vec<(IntVector, IntVector)>,
    ) -> Result<Self, PresentationError> {
        for (r, (u, v)) in relations.iter().enumerate() {
            for w in [u, v] {
                if w.dim() != generators {
                    return Err(PresentationError::Length {
                        relation: r,
                        expected: generators,
                        found: w.dim(),
                    });
                }
                if let Some(c) = w.iter().position(|x| x.is_negative()) {
                    return Err(PresentationError::NegativeExponent {
                        relation: r,
                        coordinate: c,
                    });
                }
            }
        }
        Ok(MonoidPresentation {
            generators,
            relations,
        })
    }

    pub fn free(generators: usize) -> Self {
        MonoidPresentation {
            generators,
            relations: vec![],
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[(IntVector, IntVector)] {
        &self.relations
    }

    /// Adds `g = g + g` for every generator.
    pub fn with_idempotents(&self) -> Self {
        let mut relations = self.relations.clone();
        for i in 0..self.generators {
            let e = IntVector::unit(self.generators, i);
            relations.push((e.clone(), e.scale(&BigInt::from(2))));
        }
        MonoidPresentation {
            generators: self.generators,
            relations,
        }
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        let rows = self.relations.iter().map(|(u, v)| u - v).collect();
        IntMatrix::new(self.generators, rows).expect("lengths checked")
    }

    pub fn group_completion(&self) -> CompletionGroup {
        CompletionGroup::of(self)
    }

    pub fn class_is_zero(&self, u: &IntVector) -> bool {
        self.group_completion().class_of(u).is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.group_completion().is_trivial()
    }
}

/// `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r` with `1 < d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionGroup {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    /// Row `j` gives coordinate `j` of a class, torsion coordinates first.
    coordinates: IntMatrix,
    /// Classes of the generators.
    pub class_map: Vec<IntVector>,
}

impl CompletionGroup {
    fn of(p: &MonoidPresentation) -> Self {
        let g = p.generators;
        let r = p.relation_matrix();
        // U·R·V = D, so x ↦ Vᵀx carries the row lattice of R onto that of D.
        let (d, _, v) = smith_normal_form(&r);
        let vt = v.transpose();
        let diag: Vec<BigInt> = (0..g)
            .map(|j| {
                if j < r.nrows() {
                    d.entry(j, j).clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        let mut invariant_factors = Vec::new();
        for (j, dj) in diag.iter().enumerate() {
            if dj.is_zero() {
                free.push(vt.row(j).clone());
            } else if !dj.is_one() {
                torsion.push(vt.row(j).clone());
                invariant_factors.push(dj.clone());
            }
        }
        let free_rank = free.len();
        torsion.extend(free);
        let mut group = CompletionGroup {
            invariant_factors,
            free_rank,
            coordinates: IntMatrix::new(g, torsion).expect("rectangular"),
            class_map: vec![],
        };
        group.class_map = (0..g)
            .map(|i| group.class_of(&IntVector::unit(g, i)))
            .collect();
        group
    }

    /// Normal form of the class of `u`: torsion coordinates reduced into
    /// `[0, d)`, then the free coordinates.
    pub fn class_of(&self, u: &IntVector) -> IntVector {
        let y = self.coordinates.apply(u).expect("length matches generators");
        let coords = y
            .iter()
            .enumerate()
            .map(|(j, c)| match self.invariant_factors.get(j) {
                Some(d) => c.mod_floor(d),
                None => c.clone(),
            })
            .collect();
        IntVector::new(coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

impl std::fmt::Display for CompletionGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
