//! Solver properties on small random problems, checked by enumeration.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use upp_elab::level::{FreshGen, Level, LevelVar};
use upp_elab::unify::{
    canonicalize_equation, classify, is_unifier, unify, Classification, Equation, Problem, Solver, Step,
    UnifyOptions, UnifyOutcome,
};

/// `c ⊔ n1+x1 ⊔ …` over at most three of the variables `a`..`d`.
fn side() -> impl Strategy<Value = Level> {
    (
        proptest::option::of(0u32..4),
        proptest::collection::btree_map(0usize..4, 0u32..4, 0..=3),
    )
        .prop_map(|(c, vs)| {
            let mut terms: Vec<Level> = c.into_iter().map(Level::nat).collect();
            terms.extend(vs.into_iter().map(|(v, n)| Level::var(POOL[v]).plus(n)));
            Level::join(terms)
        })
}

fn problem() -> impl Strategy<Value = Problem> {
    proptest::collection::vec((side(), side()), 1..=3)
        .prop_map(|eqs| eqs.into_iter().map(|(l, r)| Equation::new(l, r)).collect())
}

fn order(p: &Problem) -> Vec<LevelVar> {
    let mut vs = BTreeSet::new();
    for e in p.iter() {
        vars_of(&e.lhs, &mut vs);
        vars_of(&e.rhs, &mut vs);
    }
    vs.into_iter().collect()
}

/// Ground unifiers of the whole problem with values in `0..=bound`.
fn ground_solutions(p: &Problem, order: &[LevelVar], bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    all_valuations(order.len(), bound, |v| {
        if p.iter().all(|e| eval_at(&e.lhs, order, v) == eval_at(&e.rhs, order, v)) {
            out.push(v.to_vec());
        }
        true
    });
    out
}

fn max_constant(p: &Problem) -> u64 {
    p.iter().map(|e| max_const(&e.lhs).max(max_const(&e.rhs))).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn success_is_a_most_general_unifier(p in problem()) {
        if let UnifyOutcome::Success(theta) = unify(&p, &mut FreshGen::for_unifier(), UnifyOptions::default()) {
            prop_assert!(is_unifier(&theta, &p));
            for e in p.iter() {
                prop_assert!(brute_equal(&e.lhs.subst(&theta), &e.rhs.subst(&theta)), "{e} under {theta}");
            }
            let order = order(&p);
            let cap = 3 + max_constant(&p);
            for tau in ground_solutions(&p, &order, 2) {
                prop_assert!(is_instance(&theta, &order, &tau, cap), "{tau:?} is not an instance of {theta}");
            }
        }
    }

    #[test]
    fn no_solution_has_no_ground_unifier(p in problem()) {
        if unify(&p, &mut FreshGen::for_unifier(), UnifyOptions::default()) == UnifyOutcome::NoSolution {
            let order = order(&p);
            let bound = max_constant(&p) + order.len() as u64 + 2;
            prop_assert!(ground_solutions(&p, &order, bound).is_empty());
        }
    }

    #[test]
    fn stuck_leaves_only_equations_without_mgu(p in problem()) {
        if let UnifyOutcome::Stuck { remaining, partial } = unify(&p, &mut FreshGen::for_unifier(), UnifyOptions::default()) {
            prop_assert!(!remaining.is_empty());
            prop_assert!(partial.is_idempotent());
            for e in remaining.iter() {
                prop_assert_eq!(classify(&canonicalize_equation(e)), Classification::SolvableNoMgu);
            }
        }
    }

    #[test]
    fn heuristic_answers_are_unifiers(p in problem()) {
        match unify(&p, &mut FreshGen::for_unifier(), UnifyOptions { heuristic: true }) {
            UnifyOutcome::Success(theta) | UnifyOutcome::HeuristicSolution(theta) => {
                for e in p.iter() {
                    prop_assert!(brute_equal(&e.lhs.subst(&theta), &e.rhs.subst(&theta)), "{e} under {theta}");
                }
            }
            _ => {}
        }
    }

    #[test]
    fn every_step_keeps_the_configuration_well_formed(p in problem()) {
        let mut fresh = FreshGen::for_unifier();
        let mut solver = Solver::new(&p, &mut fresh);
        let mut solved = 0;
        loop {
            prop_assert!(solver.config().invariants_hold(), "{:?}", solver.config());
            match solver.step() {
                Step::Solved => solved += 1,
                _ => break,
            }
        }
        prop_assert!(solved <= p.len());
    }
}

#[test]
fn flat_and_offset_equations_together() {
    // Each equation alone has no mgu; the solver must stop rather than guess.
    let p: Problem = [("1+i0", "i2 ⊔ 1+i1"), ("1+i0", "i1 ⊔ 1+i2")]
        .iter()
        .map(|(l, r)| Equation::new(lv(l), lv(r)))
        .collect();
    let out = unify(&p, &mut FreshGen::for_unifier(), UnifyOptions::default());
    assert!(matches!(out, UnifyOutcome::Stuck { ref remaining, .. } if remaining.len() == 2), "{out:?}");
}
