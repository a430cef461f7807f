//! Single level equations: canonical form, classification, and the mgu
//! when there is one.
//!
//! ```text
//! cargo run --example classify_equations
//! ```

use upp_elab::level::{FreshGen, Level};
use upp_elab::unify::{build_mgu, canonicalize_equation, classify, is_unifier, Equation, Problem};

fn main() {
    let equations = [
        ("i ⊔ 1+(i ⊔ 1+j)", "j ⊔ 2+i"),
        ("i0 ⊔ i1", "i0 ⊔ i2"),
        ("i ⊔ 1+(j ⊔ 2)", "1+(2 ⊔ i ⊔ j)"),
        ("1 ⊔ j", "2 ⊔ i ⊔ j"),
        ("0", "1 ⊔ i ⊔ j"),
        ("S i1", "i2 ⊔ i3"),
        ("i", "i"),
    ];
    for (l, r) in equations {
        let e = Equation::new(l.parse::<Level>().unwrap(), r.parse().unwrap());
        let canonical = canonicalize_equation(&e);
        let c = classify(&canonical);
        println!("{e}\n  canonical {canonical}\n  {c}");
        if c.has_mgu() {
            let sigma = build_mgu(&c, &mut FreshGen::new("x"));
            let p: Problem = [e].into_iter().collect();
            println!("  mgu {sigma} (unifier: {})", is_unifier(&sigma, &p));
        }
        println!();
    }
}
