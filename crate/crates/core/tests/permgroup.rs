use malle_core::permgroup::{
    catalog, cyclic_group, symmetric_group, wreath_decompose, wreath_product, CyclotomicAction,
    GroupError, InvariantRecord, PermGroup, Permutation, DEFAULT_ORDER_CAP,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn group(n: usize, gens: &str) -> PermGroup {
    PermGroup::from_cycle_strings(n, gens, DEFAULT_ORDER_CAP).unwrap()
}

#[test]
fn parse_examples() {
    let t = Permutation::parse("(1,2)", 4).unwrap();
    assert!(t.is_transposition());
    assert!(Permutation::parse("()", 3).unwrap().is_identity());
    let p = Permutation::parse("(1,2,3)(4,5)", 5).unwrap();
    assert_eq!(p.cycle_type(), vec![3, 2]);
    assert_eq!(p.order(), 6);
    for bad in ["(1,1)", "(1,6)", "(1,2", "1,2)", "(a)"] {
        assert!(
            matches!(Permutation::parse(bad, 5), Err(GroupError::Parse { .. })),
            "{bad}"
        );
    }
}

#[test]
fn generation_and_cap() {
    let s3 = group(3, "(1,2);(1,2,3)");
    assert_eq!((s3.order(), s3.is_transitive()), (6, true));
    let c4 = group(4, "(1,2,3,4)");
    assert_eq!(c4.order(), 4);
    assert_eq!(
        PermGroup::from_cycle_strings(8, "(1,2);(1,2,3,4,5,6,7,8)", 1000).unwrap_err(),
        GroupError::TooLarge { cap: 1000 }
    );
    assert!(!group(4, "(1,2)").is_transitive());
}

#[test]
fn invariant_records() {
    let d4 = InvariantRecord::of(&group(4, "(1,2,3,4);(1,3)")).unwrap();
    assert_eq!(
        (d4.order, d4.ind, d4.a_num, d4.a_den, d4.b_q, d4.primitive),
        (8, 1, 1, 1, 1, false)
    );
    let a4 = InvariantRecord::of(&group(4, "(1,2,3);(2,3,4)")).unwrap();
    assert_eq!(
        (a4.ind, a4.a_num, a4.a_den, a4.b_q, a4.primitive),
        (2, 1, 2, 2, true)
    );
    let c5 = InvariantRecord::of(&cyclic_group(5).unwrap()).unwrap();
    assert_eq!((c5.ind, c5.b_q), (4, 1));
}

#[test]
fn b_depends_on_the_base_field() {
    let c3 = cyclic_group(3).unwrap();
    assert_eq!(c3.b_invariant(&CyclotomicAction::rationals(3)).unwrap(), 1);
    assert_eq!(
        c3.b_invariant(&CyclotomicAction::with_roots_of_unity(3))
            .unwrap(),
        2
    );
}

#[test]
fn block_systems_of_wreath_products() {
    let c2 = cyclic_group(2).unwrap();
    let s3 = symmetric_group(3, DEFAULT_ORDER_CAP).unwrap();
    let w = wreath_product(&c2, &s3, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(w.order(), 48);
    let b = w.block_systems().unwrap();
    assert!(!b.primitive);
    assert!(b.systems.iter().any(|s| s.block_size() == 2));
    for s in &b.systems {
        assert!(s.is_invariant_under(&w));
    }
    assert!(symmetric_group(5, DEFAULT_ORDER_CAP)
        .unwrap()
        .is_primitive()
        .unwrap());
}

#[test]
fn decomposition_round_trip() {
    let s2 = symmetric_group(2, DEFAULT_ORDER_CAP).unwrap();
    let c3 = cyclic_group(3).unwrap();
    let w = wreath_product(&s2, &c3, DEFAULT_ORDER_CAP).unwrap();
    let dec = wreath_decompose(&w).unwrap().unwrap();
    assert_eq!(dec.block_size, 2);
    assert_eq!(dec.top.order(), 3);
    assert!(wreath_decompose(&cyclic_group(4).unwrap())
        .unwrap()
        .is_none());
}

#[test]
fn catalog_is_transitive_and_classes_sum() {
    for e in catalog().unwrap() {
        let g = &e.group;
        assert!(g.is_transitive(), "{}", e.name);
        let total: usize = g.classes().classes().iter().map(|c| c.size).sum();
        assert_eq!(total, g.order(), "{}", e.name);
        assert_eq!(
            (1..=g.degree()).product::<usize>() % g.order(),
            0,
            "{}: order must divide n!",
            e.name
        );
    }
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn composition_is_associative(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn inverse_and_order(a in arb_perm(8)) {
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order()).is_identity());
        prop_assert_eq!(a.ind() as usize, 8 - a.orbit_count());
    }

    #[test]
    fn conjugation_preserves_cycle_type(a in arb_perm(6), s in arb_perm(6)) {
        prop_assert_eq!(a.conjugate_by(&s).cycle_type(), a.cycle_type());
    }

    #[test]
    fn generated_groups_are_closed(a in arb_perm(5), b in arb_perm(5)) {
        let g = PermGroup::generate(5, vec![a, b], DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        for x in g.elements().iter().take(20) {
            for y in g.elements().iter().take(20) {
                prop_assert!(g.contains(&x.then(y)));
            }
            prop_assert!(g.contains(&x.inverse()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wreath_keeps_a_and_b(i in 0usize..12, j in 0usize..12) {
        let cat = catalog().unwrap();
        let small: Vec<_> = cat.iter().filter(|e| e.group.degree() <= 5 && e.group.order() <= 24).collect();
        let h1 = &small[i % small.len()].group;
        let h2 = &small[j % small.len()].group;
        let size = (h1.order() as u128).pow(h2.degree() as u32) * h2.order() as u128;
        prop_assume!(size <= 100_000);
        let w = wreath_product(h1, h2, 100_000).unwrap();
        prop_assert_eq!(w.order() as u128, size);
        prop_assert_eq!(w.a_invariant().unwrap(), h1.a_invariant().unwrap());
        prop_assert_eq!(w.b_rational().unwrap(), h1.b_rational().unwrap());
        prop_assert!(w.a_invariant().unwrap() <= Ratio::new(1, 1));
    }
}
