//! Levels, their canonical forms, and equality decided through them.
//!
//! ```text
//! cargo run --example canonical_levels
//! ```

use upp_elab::level::{canonicalize, interpret, levels_equal, Level, LevelVar, Valuation};

fn main() {
    for src in ["S (i ⊔ j)", "i ⊔ 1+(i ⊔ 1+j)", "0 ⊔ S 0 ⊔ i", "2 + (i ⊔ 1)", "S i ⊔ i ⊔ 0"] {
        let l: Level = src.parse().unwrap();
        let c = canonicalize(&l);
        println!("{src:<18} canonical {:<20} compact {}", c.render(), l.compact());
    }

    let pairs = [("S i ⊔ i ⊔ 0", "S i"), ("i ⊔ j", "j ⊔ i"), ("S (i ⊔ j)", "S i ⊔ j"), ("1 ⊔ i", "S i")];
    println!();
    for (a, b) in pairs {
        let (la, lb): (Level, Level) = (a.parse().unwrap(), b.parse().unwrap());
        println!("{a} ≃ {b}: {}", levels_equal(&la, &lb));
    }

    // A canonical form is a statement about every valuation. Here is one
    // where `S (i ⊔ j)` and `S i ⊔ j` come apart.
    let phi: Valuation = [(LevelVar::named("i"), 0), (LevelVar::named("j"), 3)].into_iter().collect();
    let (a, b): (Level, Level) = ("S (i ⊔ j)".parse().unwrap(), "S i ⊔ j".parse().unwrap());
    println!("\nunder i = 0, j = 3: {} vs {}", interpret(&a, &phi), interpret(&b, &phi));
}
