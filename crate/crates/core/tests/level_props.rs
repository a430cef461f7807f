//! Level normalisation and substitution against direct evaluation.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use upp_elab::level::{levels_equal, Level, LevelSubst, LevelVar};

fn level() -> impl Strategy<Value = Level> {
    let leaf = prop_oneof![
        (0usize..4).prop_map(|k| Level::var(POOL[k])),
        (0u32..4).prop_map(Level::nat),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Level::succ),
            (inner.clone(), inner).prop_map(|(a, b)| a.max(b)),
        ]
    })
}

fn subst() -> impl Strategy<Value = LevelSubst> {
    proptest::collection::vec(level(), 4).prop_map(|ls| {
        POOL.iter()
            .zip(ls)
            .map(|(v, l)| (LevelVar::named(v), l))
            .collect()
    })
}

proptest! {
    #[test]
    fn compact_form_denotes_the_same_level(l in level()) {
        prop_assert!(brute_equal(&l, &l.compact()), "{l} vs {}", l.compact());
    }

    #[test]
    fn canonical_form_is_a_fixed_point(l in level()) {
        let once = l.canonical().render();
        prop_assert_eq!(once.canonical().render(), once);
    }

    #[test]
    fn levels_equal_is_semantic(a in level(), b in level()) {
        prop_assert_eq!(levels_equal(&a, &b), brute_equal(&a, &b));
    }

    #[test]
    fn substitution_commutes_with_evaluation(l in level(), theta in subst(), vals in proptest::collection::vec(0u64..4, 4)) {
        // Every variable of `l[theta]` is one of the pool variables.
        let order: Vec<LevelVar> = POOL.iter().map(|v| LevelVar::named(v)).collect();
        let images: Vec<u64> = order
            .iter()
            .map(|v| eval_at(theta.get(v).unwrap(), &order, &vals))
            .collect();
        prop_assert_eq!(eval_at(&l.subst(&theta), &order, &vals), eval_at(&l, &order, &images));
    }

    #[test]
    fn free_vars_are_exactly_the_occurring_names(l in level()) {
        let mut expected = BTreeSet::new();
        vars_of(&l, &mut expected);
        prop_assert_eq!(l.free_vars(), expected);
    }
}
