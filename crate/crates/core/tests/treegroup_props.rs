mod common;

use common::vec_in;
use prisma::exactlin::{IntMatrix, IntVector};
use prisma::monoidexpr::{MonoidExpr, ProbeOutcome};
use prisma::sampling::box_points;
use prisma::treegroup::{GeneratorTuple, ParasemifieldSpec, RootedTree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec_strategy(max: usize) -> impl Strategy<Value = ParasemifieldSpec> {
    let trees = RootedTree::all_up_to(max);
    prop::collection::vec(prop::sample::select(trees), 1..=2).prop_map(ParasemifieldSpec::new)
}

fn spec_and_elems(max: usize, k: usize, lo: i64, hi: i64) -> impl Strategy<Value = (ParasemifieldSpec, Vec<IntVector>)> {
    spec_strategy(max).prop_flat_map(move |s| {
        let m = s.vertex_count();
        (Just(s), prop::collection::vec(vec_in(m, lo, hi), k))
    })
}

#[test]
fn order_matches_chain_extension_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for t in RootedTree::all_up_to(5) {
        let m = t.vertex_count();
        let spec = ParasemifieldSpec::single(t);
        let points: Vec<IntVector> = box_points(m, -2, 2).collect();
        let pairs = points.len() * points.len();
        let mut check = |a: &IntVector, b: &IntVector| {
            assert_eq!(spec.leq(a, b).unwrap(), spec.leq_oracle(a, b).unwrap(), "{a} <= {b} in {spec:?}");
            compared += 1;
        };
        if pairs <= 20_000 {
            for a in &points {
                for b in &points {
                    check(a, b);
                }
            }
        } else {
            for _ in 0..20_000 {
                let a = &points[rng.gen_range(0..points.len())];
                let b = &points[rng.gen_range(0..points.len())];
                check(a, b);
            }
        }
    }
    assert!(compared > 300_000);
}

#[test]
fn chain_intersection_identity() {
    for t in RootedTree::all_up_to(4) {
        let m = t.vertex_count();
        let canon = ParasemifieldSpec::single(t.clone()).canonical_generators();
        let chains: Vec<GeneratorTuple> = t
            .chain_extensions()
            .unwrap()
            .into_iter()
            .map(|order| {
                let rows = order.iter().map(|&w| canon.matrix.row(w).clone()).collect();
                let spec = ParasemifieldSpec::single(RootedTree::chain(m));
                GeneratorTuple::new(spec, IntMatrix::new(2 * m, rows).unwrap()).unwrap()
            })
            .collect();
        for a in box_points(2 * m, 0, 3) {
            let lhs = canon.associated_member(&a).unwrap();
            let rhs = chains.iter().all(|c| c.associated_member(&a).unwrap());
            assert_eq!(lhs, rhs, "{a} for tree {:?}", t.to_signed());
        }
    }
}

#[test]
fn associated_monoids_are_pure() {
    for t in RootedTree::all_up_to(4) {
        let m = t.vertex_count();
        let e = ParasemifieldSpec::single(t.clone()).canonical_generators().associated_monoid();
        let hi = if m >= 4 { 2 } else { 3 };
        let probe = e.purity_probe(0, hi, &[2, 3]).unwrap();
        assert!(matches!(probe, ProbeOutcome::Pure { .. }), "{:?}: {probe:?}", t.to_signed());
    }
}

#[test]
fn root_extraction() {
    for t in RootedTree::all_up_to(5) {
        let m = t.vertex_count();
        let spec = ParasemifieldSpec::single(t);
        let zero = IntVector::zeros(m);
        for a in box_points(m, -3, 3) {
            for n in [2i64, 3, 4] {
                if spec.leq(&a.scale(&n.into()), &zero).unwrap() {
                    assert!(spec.leq(&a, &zero).unwrap(), "{a}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn identity_is_idempotent() {
    for t in RootedTree::all_up_to(5) {
        let spec = ParasemifieldSpec::new(vec![t.clone(), t]);
        let one = IntVector::zeros(spec.vertex_count());
        assert_eq!(spec.join(&one, &one).unwrap(), one);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn join_is_a_semilattice((s, e) in spec_and_elems(4, 3, -3, 3)) {
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        let ab = s.join(a, b).unwrap();
        prop_assert_eq!(&ab, &s.join(b, a).unwrap());
        prop_assert_eq!(s.join(&ab, c).unwrap(), s.join(a, &s.join(b, c).unwrap()).unwrap());
        prop_assert_eq!(&s.join(a, a).unwrap(), a);
        prop_assert_eq!(s.leq(a, b).unwrap(), &ab == b);
        let m = s.meet(a, b).unwrap();
        prop_assert!(s.leq(&m, a).unwrap() && s.leq(&m, b).unwrap());
        prop_assert_eq!(&s.join(a, &m).unwrap(), a);
    }

    #[test]
    fn join_is_least((s, e) in spec_and_elems(3, 2, -2, 2)) {
        let (a, b) = (&e[0], &e[1]);
        let ab = s.join(a, b).unwrap();
        prop_assert!(s.leq(a, &ab).unwrap() && s.leq(b, &ab).unwrap());
        for c in box_points(s.vertex_count(), -3, 3) {
            if s.leq(a, &c).unwrap() && s.leq(b, &c).unwrap() {
                prop_assert!(s.leq(&ab, &c).unwrap(), "{} is a smaller bound", c);
            }
        }
    }

    #[test]
    fn associated_monoid_expression_matches_direct(s in spec_strategy(2), alpha in vec_in(8, 0, 3)) {
        let canon = s.canonical_generators();
        let a = IntVector::new(alpha.coords()[..canon.len()].to_vec());
        let expr: MonoidExpr = canon.associated_monoid();
        prop_assert_eq!(expr.member(&a).unwrap().is_yes(), canon.associated_member(&a).unwrap());
    }
}
