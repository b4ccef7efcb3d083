mod common;

use common::{matrix_in, subspace_in, v, vec_in};
use prisma::exactlin::{
    hermite_normal_form, kernel_lattice, saturate_lattice, smith_normal_form, solve_integer,
    IntMatrix, IntVector,
};
use prisma::sampling::box_points;
use proptest::prelude::*;

fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    let n = a.ncols();
    let in_lattice = |l: &IntMatrix, x: &IntVector| {
        if l.nrows() == 0 {
            return x.is_zero();
        }
        solve_integer(&l.transpose(), x).is_some()
    };
    a.rows().iter().all(|r| in_lattice(b, r))
        && b.rows().iter().all(|r| in_lattice(a, r))
        && a.ncols() == n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_idempotent(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| matrix_in(r, c, -6, 6))) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        let (h2, _) = hermite_normal_form(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn snf_is_idempotent(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| matrix_in(r, c, -6, 6))) {
        let (d, u, w) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&w).unwrap(), d.clone());
        let (d2, _, _) = smith_normal_form(&d);
        prop_assert_eq!(d2, d.clone());
        let k = m.nrows().min(m.ncols());
        for i in 1..k {
            let (a, b) = (d.entry(i - 1, i - 1), d.entry(i, i));
            prop_assert!(b.is_zero_or_multiple(a));
        }
    }

    #[test]
    fn saturation_is_extensive_and_idempotent(l in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| matrix_in(r, c, -4, 4))) {
        let s = saturate_lattice(&l);
        for r in l.rows() {
            prop_assert!(s.nrows() > 0 || r.is_zero());
            if !r.is_zero() {
                prop_assert!(solve_integer(&s.transpose(), r).is_some());
            }
        }
        prop_assert!(same_lattice(&saturate_lattice(&s), &s));
    }

    #[test]
    fn saturated_image_of_subspace(nu in matrix_in(3, 2, -3, 3), w in subspace_in(2)) {
        prop_assume!(nu.rank() == 2);
        // ν(V ∩ Z^n) saturated equals ν(V) ∩ Z^m, compared on a box.
        let img: Vec<IntVector> = w.basis().rows().iter().map(|b| nu.apply(b).unwrap()).collect();
        let gens = if img.is_empty() { IntMatrix::empty(3) } else { IntMatrix::new(3, img).unwrap() };
        let sat = saturate_lattice(&gens);
        let target = w.image(&nu).unwrap();
        for x in box_points(3, -4, 4) {
            let in_sat = x.is_zero() || (sat.nrows() > 0 && solve_integer(&sat.transpose(), &x).is_some());
            prop_assert_eq!(in_sat, target.contains(&x), "{}", x);
        }
    }

    #[test]
    fn kernel_covers_box(m in (1usize..3, 2usize..4).prop_flat_map(|(r, c)| matrix_in(r, c, -3, 3))) {
        let k = kernel_lattice(&m);
        for r in k.rows() {
            prop_assert!(m.apply(r).unwrap().is_zero());
        }
        for x in box_points(m.ncols(), -5, 5) {
            if m.apply(&x).unwrap().is_zero() && !x.is_zero() {
                prop_assert!(k.nrows() > 0 && solve_integer(&k.transpose(), &x).is_some(), "{}", x);
            }
        }
    }

    #[test]
    fn solve_integer_is_exact(m in matrix_in(2, 3, -4, 4), x in vec_in(3, -5, 5)) {
        let b = m.apply(&x).unwrap();
        let y = solve_integer(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.apply(&y).unwrap(), b);
    }
}

trait MultipleOf {
    fn is_zero_or_multiple(&self, d: &Self) -> bool;
}

impl MultipleOf for num_bigint::BigInt {
    fn is_zero_or_multiple(&self, d: &Self) -> bool {
        use num_integer::Integer;
        use num_traits::Zero;
        self.is_zero() || (!d.is_zero() && self.is_multiple_of(d))
    }
}

#[test]
fn saturate_examples() {
    let l = IntMatrix::new(2, vec![v(&[2, 4]), v(&[-4, -8])]).unwrap();
    let s = saturate_lattice(&l);
    assert!(solve_integer(&s.transpose(), &v(&[1, 2])).is_some());
    assert!(solve_integer(&s.transpose(), &v(&[0, 1])).is_none());
    let full = IntMatrix::new(2, vec![v(&[2, 2]), v(&[0, 4])]).unwrap();
    assert!(same_lattice(&saturate_lattice(&full), &IntMatrix::identity(2)));
}
