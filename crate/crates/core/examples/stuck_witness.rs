//! Problems that are solvable but have no most general unifier, and what
//! the solver does with them.
//!
//! ```text
//! cargo run --example stuck_witness
//! ```

use upp_elab::elab::elab_infer;
use upp_elab::kernel::{Context, Signature, DEFAULT_FUEL};
use upp_elab::level::{FreshGen, Level};
use upp_elab::syntax::{parse_open_term, print_term};
use upp_elab::unify::{is_unifier, unify_traced, Equation, Problem, UnifyOptions, UnifyOutcome};

fn lv(s: &str) -> Level {
    s.parse().unwrap()
}

fn problem(eqs: &[(&str, &str)]) -> Problem {
    eqs.iter().map(|(l, r)| Equation::new(lv(l), lv(r))).collect()
}

fn solve(p: &Problem, heuristic: bool) -> UnifyOutcome {
    let (out, trace) = unify_traced(p, &mut FreshGen::for_unifier(), UnifyOptions { heuristic });
    for ev in &trace {
        println!("    {ev}");
    }
    out
}

fn main() {
    // One equation: every unifier sends i2 or i3 to 1+i1, but neither
    // choice is more general than the other.
    let p = problem(&[("S i1", "i2 ⊔ i3")]);
    println!("{p}");
    println!("  without heuristics:");
    solve(&p, false);
    println!("  with heuristics:");
    if let UnifyOutcome::HeuristicSolution(theta) = solve(&p, true) {
        println!("    accepted {theta}, a unifier: {}", is_unifier(&theta, &p));
    }

    // Two equations, each without an mgu, that together have one. The
    // solver only looks at one equation at a time, so it stops.
    let p = problem(&[("1+i0", "i2 ⊔ 1+i1"), ("1+i0", "i1 ⊔ 1+i2")]);
    println!("\n{p}");
    solve(&p, false);
    let theta = [("i1", "0 ⊔ i2"), ("i0", "0 ⊔ i2")]
        .into_iter()
        .map(|(v, l)| (upp_elab::level::LevelVar::named(v), lv(l)))
        .collect();
    println!("  {theta} is a unifier: {}", is_unifier(&theta, &p));

    // The same thing arising from an actual term.
    let sig = Signature::upp();
    let src = include_str!("data/no_mgu_witness.term");
    let t = parse_open_term(src, &sig).unwrap();
    let (ty, constraints) = elab_infer(&Context::with_open_levels(), &t, &sig, DEFAULT_FUEL).unwrap();
    println!("\nwitness term infers {}", print_term(&ty, &[]));
    println!("with {} level constraints; solving:", constraints.len());
    match solve(&constraints.problem(), false) {
        UnifyOutcome::Stuck { remaining, .. } => println!("  residual problem {remaining}"),
        other => println!("  unexpected outcome {other:?}"),
    }
}
