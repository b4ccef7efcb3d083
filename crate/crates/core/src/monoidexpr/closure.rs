use super::{MonoidExpr, Verdict};
use crate::error::ExprError;
use crate::exactlin::{IntVector, Subspace};
use crate::hilbert::SaturatedMonoid;
use crate::sampling::box_points;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// No violation among `checked` box points.
    Pure { checked: usize },
    /// `k·α` lies in the monoid but `α` does not.
    CounterexampleFound { alpha: IntVector, multiplier: i64 },
}

pub(crate) fn purity_probe(
    e: &MonoidExpr,
    lo: i64,
    hi: i64,
    multipliers: &[i64],
) -> Result<ProbeOutcome, ExprError> {
    let union = e.compile().ok();
    let member = |x: &IntVector| -> Result<Verdict, ExprError> {
        match &union {
            Some(u) => Ok(u.contains(x)),
            None => e.member(x),
        }
    };
    let mut checked = 0;
    for alpha in box_points(e.ambient_dim(), lo, hi) {
        checked += 1;
        let mut in_e = None;
        for &k in multipliers {
            let scaled = alpha.scale(&k.into());
            if member(&scaled)? != Verdict::Yes {
                continue;
            }
            let v = *in_e.get_or_insert(member(&alpha)?);
            match v {
                Verdict::Yes => break,
                Verdict::No => {
                    return Ok(ProbeOutcome::CounterexampleFound {
                        alpha,
                        multiplier: k,
                    })
                }
                Verdict::Unknown => return Err(ExprError::Undecided(alpha.to_string())),
            }
        }
    }
    Ok(ProbeOutcome::Pure { checked })
}

/// `closure((C ∩ D) ∩ V)` through `closure(C ∩ W) ∩ closure(D ∩ W)` with
/// `W = span(C ∩ D ∩ V)`; valid for pure `C` and `D` only.
pub fn closure_of_intersection(
    c: &MonoidExpr,
    d: &MonoidExpr,
    v: &Subspace,
) -> Result<SaturatedMonoid, ExprError> {
    for (name, e) in [("left", c), ("right", d)] {
        if !e.certified_pure() {
            return Err(ExprError::PurityRequired(format!(
                "{name} argument ({}) is not known to be pure",
                e.kind()
            )));
        }
    }
    let cdv = MonoidExpr::restrict(MonoidExpr::intersect(c.clone(), d.clone()), v.clone())?;
    let w = cdv.span()?;
    let cw = c.closure_in_subspace(&w)?;
    let dw = d.closure_in_subspace(&w)?;
    Ok(cw.intersect(&dw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::IntMatrix;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    fn remark_pair() -> (MonoidExpr, MonoidExpr) {
        let c = MonoidExpr::intersect(
            MonoidExpr::Orthant(2),
            MonoidExpr::preimage(IntMatrix::from_i64_rows(2, &[&[1, -1], &[1, 0]]), MonoidExpr::Lex(2))
                .unwrap(),
        );
        let d = MonoidExpr::intersect(
            MonoidExpr::Orthant(2),
            MonoidExpr::preimage(IntMatrix::from_i64_rows(2, &[&[-1, 1], &[0, 1]]), MonoidExpr::Lex(2))
                .unwrap(),
        );
        (c, d)
    }

    #[test]
    fn remark_closures() {
        let (c, d) = remark_pair();
        let cd = MonoidExpr::intersect(c.clone(), d.clone());
        let both = cd.closure().unwrap();
        assert!(both.hilbert_basis.is_empty() && both.lineality_basis.nrows() == 0);
        assert!(cd.span().unwrap().is_zero());
        let meet = c.closure().unwrap().intersect(&d.closure().unwrap());
        assert_eq!(meet.hilbert_basis, vec![v(&[1, 1])]);
    }

    #[test]
    fn lex_closures_in_subspaces() {
        let lex = MonoidExpr::Lex(2);
        let diag = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(lex.closure_in_subspace(&diag).unwrap().hilbert_basis, vec![v(&[-1, -1])]);
        let axis = Subspace::span(2, &[v(&[0, 1])]).unwrap();
        assert_eq!(lex.closure_in_subspace(&axis).unwrap().hilbert_basis, vec![v(&[0, -1])]);
        let full = lex.closure().unwrap();
        assert_eq!(full.hilbert_basis, vec![v(&[-1, 0])]);
        assert_eq!(full.lineality_basis.rows(), &[v(&[0, 1])]);
        assert_eq!(lex.span().unwrap(), Subspace::full(2));
    }

    #[test]
    fn orthant_closure_is_itself() {
        let o = MonoidExpr::Orthant(3).closure().unwrap();
        assert_eq!(o.hilbert_basis, vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn probes() {
        let (c, _) = remark_pair();
        assert!(matches!(c.purity_probe(-6, 6, &[2, 3]).unwrap(), ProbeOutcome::Pure { .. }));
        let fg = MonoidExpr::fingen(2, &[v(&[2, 0])]).unwrap();
        assert_eq!(
            fg.purity_probe(-3, 3, &[2, 3]).unwrap(),
            ProbeOutcome::CounterexampleFound {
                alpha: v(&[1, 0]),
                multiplier: 2
            }
        );
        assert!(matches!(
            MonoidExpr::Lex(3).purity_probe(-2, 2, &[2, 3]).unwrap(),
            ProbeOutcome::Pure { .. }
        ));
    }

    #[test]
    fn intersection_formula_needs_purity() {
        let fg = MonoidExpr::fingen(1, &[v(&[2])]).unwrap();
        let err = closure_of_intersection(&fg, &MonoidExpr::Orthant(1), &Subspace::full(1));
        assert!(matches!(err, Err(ExprError::PurityRequired(_))));
        let (c, d) = remark_pair();
        let r = closure_of_intersection(&c, &d, &Subspace::full(2)).unwrap();
        assert!(r.hilbert_basis.is_empty());
    }
}
