use proptest::prelude::*;

use qyd::combinatorics::{Composition, PackedWord, Permutation};
use qyd::diagrams::{eval_on, interlacing_alphabet, YoungDiagram};
use qyd::exactalg::Scalar;
use qyd::qsym::{expand_on_alphabet, virtual_x, QSymElement};
use qyd::stanley::{h_value, HExpansion};
use qyd::wqsym::{virtual_expand, WQSymElement};

fn composition(max_len: usize, max_part: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|v| Composition::new(v).unwrap())
}

fn qsym(max_len: usize) -> impl Strategy<Value = QSymElement> {
    prop::collection::vec((composition(max_len, 2), -3i64..=3), 1..=3)
        .prop_map(|ts| QSymElement::from_terms(ts.into_iter().map(|(i, c)| (i, Scalar::from_int(c)))))
}

fn packed(max_len: usize) -> impl Strategy<Value = PackedWord> {
    prop::collection::vec(1u32..=3, 0..=max_len).prop_map(|v| qyd::combinatorics::pack(&v))
}

fn wqsym(max_len: usize) -> impl Strategy<Value = WQSymElement> {
    prop::collection::vec((packed(max_len), -2i64..=2), 1..=2)
        .prop_map(|ts| WQSymElement::from_terms(ts.into_iter().map(|(u, c)| (u, Scalar::from_int(c)))))
}

fn diagram(max_rows: usize, max_part: u32) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1..=max_part, 0..=max_rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qsym_product_commutative_associative(f in qsym(2), g in qsym(2), h in qsym(1)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn antipode_is_an_involution(f in qsym(3)) {
        prop_assert_eq!(f.antipode().antipode(), f);
    }

    #[test]
    fn virtual_expansion_is_multiplicative(f in qsym(2), g in qsym(2), n in 0usize..=3) {
        let a = virtual_x(n);
        prop_assert_eq!(expand_on_alphabet(&(&f * &g), &a), &expand_on_alphabet(&f, &a) * &expand_on_alphabet(&g, &a));
    }

    #[test]
    fn diagram_evaluation_is_multiplicative(f in qsym(2), g in qsym(2), lam in diagram(3, 4)) {
        let a = interlacing_alphabet(lam.interlacing().xs());
        prop_assert_eq!(eval_on(&(&f * &g), &a), &eval_on(&f, &a) * &eval_on(&g, &a));
    }

    #[test]
    fn coordinates_round_trip(lam in diagram(5, 6)) {
        prop_assert_eq!(lam.interlacing().to_diagram(), lam.clone());
        prop_assert_eq!(lam.multirect().to_diagram(), lam.clone());
        prop_assert_eq!(lam.frobenius().to_diagram(), lam.clone());
        let xs = lam.interlacing();
        let alternating: i64 = xs.xs().iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum();
        prop_assert_eq!(alternating, 0);
    }

    #[test]
    fn h_shuffle_product_matches_values(i in composition(2, 3), j in composition(2, 3), lam in diagram(3, 3)) {
        prop_assume!(i.last_part() != Some(1) && j.last_part() != Some(1));
        let e = HExpansion::basis(i.clone()).unwrap();
        let f = HExpansion::basis(j.clone()).unwrap();
        prop_assert_eq!(e.product(&f).value(&lam), &h_value(&i, &lam) * &h_value(&j, &lam));
    }

    #[test]
    fn wqsym_product_associative_and_realized(f in wqsym(2), g in wqsym(2), h in wqsym(1), n in 0usize..=3) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(virtual_expand(&(&f * &g), n), &virtual_expand(&f, n) * &virtual_expand(&g, n));
        prop_assert_eq!((&f * &g).commutative_image(), &f.commutative_image() * &g.commutative_image());
    }

    #[test]
    fn place_action_composes(u in prop::collection::vec(1u32..=3, 3), s in 0usize..6, t in 0usize..6) {
        let perms = qyd::combinatorics::all_permutations(3);
        let u = qyd::combinatorics::pack(&u);
        let (sigma, tau): (&Permutation, &Permutation) = (&perms[s], &perms[t]);
        prop_assert_eq!(u.act(sigma).unwrap().act(tau).unwrap(), u.act(&sigma.then(tau)).unwrap());
    }
}
