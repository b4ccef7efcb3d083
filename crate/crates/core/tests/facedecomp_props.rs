mod common;

use common::vecs_in;
use prisma::facedecomp::{decompose, verify_decomposition};
use prisma::hilbert::{saturate_monoid, AffineMonoid};
use prisma::monoidexpr::MonoidExpr;
use proptest::prelude::*;

fn saturated(n: usize) -> impl Strategy<Value = MonoidExpr> {
    vecs_in(n, 0..=3, 0, 4).prop_map(move |g| {
        let sat = saturate_monoid(&AffineMonoid::new(n, &g).unwrap());
        MonoidExpr::fingen(n, &sat.generators()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saturated_monoids_decompose(e in (1usize..=3).prop_flat_map(saturated)) {
        let d = decompose(&e).unwrap();
        let r = verify_decomposition(&d, 0, 8, 30);
        prop_assert!(r.passed(), "{:?}", r.violations);
        let c_dim = e.span().unwrap().dim();
        prop_assert!(d.pieces.iter().any(|p| p.dim == c_dim));
        for p in &d.pieces {
            prop_assert!(p.dim <= c_dim);
        }
    }
}

#[test]
fn orthant_has_four_pieces() {
    let d = decompose(&MonoidExpr::Orthant(2)).unwrap();
    assert_eq!(d.pieces.len(), 4);
    assert!(verify_decomposition(&d, 0, 8, 30).passed());
}

#[test]
fn pure_non_finitely_generated_monoid() {
    let e = MonoidExpr::intersect(
        MonoidExpr::Orthant(3),
        MonoidExpr::TreeNegative(prisma::treegroup::RootedTree::chain(3)),
    );
    let d = decompose(&e).unwrap();
    let r = verify_decomposition(&d, -3, 3, 25);
    assert!(r.passed(), "{:?}", r.violations);
}
