//! The postponing solver on multi-equation problems, with its trace.
//!
//! ```text
//! cargo run --example unify_problems
//! ```

use upp_elab::level::{FreshGen, Level};
use upp_elab::unify::{is_unifier, unify_traced, Equation, Problem, UnifyOptions, UnifyOutcome};

fn problem(eqs: &[(&str, &str)]) -> Problem {
    eqs.iter()
        .map(|(l, r)| Equation::new(l.parse::<Level>().unwrap(), r.parse().unwrap()))
        .collect()
}

fn main() {
    let problems = [
        // The constraints behind the second entry of the running example.
        problem(&[("S i1", "i2"), ("i1", "i3"), ("i1", "i4")]),
        // Solving one equation turns the next into a failure.
        problem(&[("i ⊔ j", "0"), ("j", "S k")]),
        // Stuck: the last equation is solvable but has no mgu.
        problem(&[("i1 ⊔ i5", "i3"), ("i3", "i4 ⊔ i1"), ("2 ⊔ i4", "1+i6")]),
    ];
    for p in &problems {
        println!("{p}");
        let (out, trace) = unify_traced(p, &mut FreshGen::for_unifier(), UnifyOptions::default());
        for ev in &trace {
            println!("  {ev}");
        }
        match out {
            UnifyOutcome::Success(theta) => println!("  mgu {theta}, unifier: {}", is_unifier(&theta, p)),
            UnifyOutcome::Stuck { remaining, partial } => println!("  stuck on {remaining} after {partial}"),
            UnifyOutcome::NoSolution => println!("  no solution"),
            UnifyOutcome::HeuristicSolution(theta) => println!("  heuristic {theta}"),
        }
        println!();
    }
}
