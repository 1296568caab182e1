mod common;

use proptest::prelude::*;

use cochain_operads::algebra_core::{perm_compose_partial, Coefficients, FormalSum, Permutation};
use cochain_operads::barratt_eccles::{e_differential, ESimplex};
use cochain_operads::surjections::{x_differential, Surjection};
use cochain_operads::table_reduction::{section, tr, tr_linear};

const Z: Coefficients = Coefficients::INTEGERS;

fn perm(r: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=r).collect::<Vec<_>>()).prop_shuffle()
}

/// Tuples of permutations of one arity with adjacent repeats removed.
fn e_simplex(rmax: usize, dmax: usize) -> impl Strategy<Value = ESimplex> {
    (1..=rmax).prop_flat_map(move |r| prop::collection::vec(perm(r), 1..=dmax + 1)).prop_map(|mut rows| {
        rows.dedup();
        ESimplex::from_vecs(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap()
    })
}

/// Nondegenerate surjections, possibly after dropping adjacent repeats.
fn surjection(rmax: usize, len: usize) -> impl Strategy<Value = Surjection> {
    (1..=rmax)
        .prop_flat_map(move |r| (Just(r), prop::collection::vec(1..=r, r..=len)))
        .prop_filter_map("not surjective", |(r, mut seq)| {
            seq.dedup();
            Surjection::new(r, seq).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn e_differential_squares_to_zero(w in e_simplex(5, 5)) {
        let x = FormalSum::single(Z, w);
        prop_assert!(e_differential(&e_differential(&x)).is_zero());
    }

    #[test]
    fn x_differential_matches_reference(u in surjection(5, 9)) {
        let got: common::Terms<Vec<usize>> =
            x_differential(&FormalSum::single(Z, u.clone())).iter().map(|(v, &c)| (v.to_vec(), c)).collect();
        prop_assert_eq!(got, common::x_differential(&u.to_vec()));
    }

    #[test]
    fn table_reduction_is_a_chain_map(w in e_simplex(4, 3)) {
        let x = FormalSum::single(Z, w.clone());
        prop_assert_eq!(tr_linear(&e_differential(&x)), x_differential(&tr(&w, Z)));
    }

    #[test]
    fn section_is_a_right_inverse(u in surjection(5, 8)) {
        prop_assert_eq!(tr(&section(&u), Z), FormalSum::single(Z, u));
    }

    #[test]
    fn permutation_composition_is_associative(
        (a, b, c) in (1..=4usize, 1..=4usize, 1..=4usize).prop_flat_map(|(r, s, t)| (perm(r), perm(s), perm(t))),
        k in 1..=4usize,
        l in 1..=4usize,
    ) {
        let (a, b, c) = (Permutation::new(a).unwrap(), Permutation::new(b).unwrap(), Permutation::new(c).unwrap());
        let (k, l) = (1 + (k - 1) % a.arity(), 1 + (l - 1) % b.arity());
        let lhs = perm_compose_partial(&perm_compose_partial(&a, k, &b).unwrap(), k + l - 1, &c).unwrap();
        let rhs = perm_compose_partial(&a, k, &perm_compose_partial(&b, l, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs.to_vec(), common::perm_compose(&a.to_vec(), k, &common::perm_compose(&b.to_vec(), l, &c.to_vec())));
        prop_assert_eq!(lhs, rhs);
    }
}
