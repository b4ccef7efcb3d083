mod common;

use common::{v, vecs_in};
use prisma::cone::{Cone, Mode};
use prisma::sampling::box_points;
use proptest::prelude::*;

fn cone_strategy(dim: usize) -> impl Strategy<Value = Cone> {
    (vecs_in(dim, 0..=4, -3, 3), vecs_in(dim, 0..=1, -2, 2))
        .prop_map(move |(rays, lin)| Cone::from_vrep(dim, &rays, &lin).unwrap())
}

fn any_cone() -> impl Strategy<Value = Cone> {
    (1usize..=3).prop_flat_map(cone_strategy)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn faces_partition_lattice_points(c in any_cone()) {
        let faces = c.open_faces();
        for p in box_points(c.ambient_dim(), -4, 4).filter(|p| c.contains_point(p)) {
            let hits = faces.iter().filter(|f| f.contains(&c, &p)).count();
            prop_assert_eq!(hits, 1, "{} in {}", p, c);
        }
    }

    #[test]
    fn double_description_round_trip(c in any_cone()) {
        let h = Cone::from_hrep(c.ambient_dim(), c.equations().rows(), c.inequalities()).unwrap();
        prop_assert_eq!(&h, &c);
        let back = Cone::from_vrep(c.ambient_dim(), h.rays(), h.lineality().basis().rows()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn ri_of_intersection(gk in vecs_in(3, 0..=3, -3, 3), gl in vecs_in(3, 0..=3, -3, 3)) {
        // A shared full-dimensional core keeps the three spans equal.
        let core = [v(&[2, 1, 1]), v(&[1, 2, 1]), v(&[1, 1, 2])];
        let k = Cone::from_generators(3, &[&gk[..], &core[..]].concat()).unwrap();
        let l = Cone::from_generators(3, &[&gl[..], &core[..]].concat()).unwrap();
        let kl = k.intersect(&l).unwrap();
        for p in box_points(3, -3, 3) {
            let lhs = kl.contains(&p, Mode::RelativeInterior).unwrap();
            let rhs = k.contains(&p, Mode::RelativeInterior).unwrap()
                && l.contains(&p, Mode::RelativeInterior).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", p);
        }
    }

    #[test]
    fn closed_plus_interior_is_interior(c in any_cone()) {
        let r = c.interior_point();
        prop_assert!(c.contains(&r, Mode::RelativeInterior).unwrap());
        for p in box_points(c.ambient_dim(), -3, 3).filter(|p| c.contains_point(p)) {
            prop_assert!(c.contains(&(&p + &r), Mode::RelativeInterior).unwrap());
        }
    }

    #[test]
    fn sum_and_intersection_bound_each_other(k in cone_strategy(2), l in cone_strategy(2)) {
        let meet = k.intersect(&l).unwrap();
        let sum = k.minkowski_sum(&l).unwrap();
        prop_assert!(meet.is_subset_of(&k) && meet.is_subset_of(&l));
        prop_assert!(k.is_subset_of(&sum) && l.is_subset_of(&sum));
    }
}

#[test]
fn examples() {
    let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
    assert_eq!(c.inequalities(), &[v(&[0, 1]), v(&[2, -1])]);
    assert!(!c.contains(&v(&[1, 0]), Mode::RelativeInterior).unwrap());
    assert!(c.contains(&v(&[2, 1]), Mode::RelativeInterior).unwrap());
    assert_eq!(c.open_faces().len(), 4);
    let half = Cone::from_hrep(2, &[], &[v(&[-1, 0])]).unwrap();
    assert_eq!(half.rays(), &[v(&[-1, 0])]);
    assert_eq!(half.lineality().dim(), 1);
}
