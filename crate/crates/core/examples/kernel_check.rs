//! The target signature, reduction and the kernel checker on hand-written
//! universe-polymorphic entries.
//!
//! ```text
//! cargo run --example kernel_check
//! ```

use upp_elab::kernel::{convert, infer_type, whnf, Context, Signature};
use upp_elab::syntax::{parse_open_term, parse_output_entries, print_entry, print_term};

fn main() {
    let mut sig = Signature::upp();
    for name in ["U", "Pi", "App"] {
        println!("{}", print_entry(sig.get(name).unwrap()));
    }

    let t = |s: &str, sig: &Signature| parse_open_term(s, sig).unwrap();
    println!();
    let r = whnf(&t("Tm (S 0) (U 0)", &sig), &sig).unwrap();
    println!("whnf Tm 1 (U 0) = {}", print_term(&r, &[]));
    let same = convert(&t("Ty (S i ⊔ i ⊔ 0)", &sig), &t("Ty (S i)", &sig), &sig).unwrap();
    println!("Ty (S i ⊔ i ⊔ 0) ≡ Ty (S i): {same}");
    let ty = infer_type(&Context::with_open_levels(), &t("U 0", &sig), &sig).unwrap();
    println!("U 0 : {}", print_term(&ty, &[]));

    let src = "
        def id : (i : Lvl) -> Tm (S i) (Pi (S i) i (U i) (A => Pi i i A (_ => A)))
          := i => Lam (S i) i (U i) (A => Pi i i A (_ => A)) (A => Lam i i A (_ => A) (x => x)).
        def bad : Tm 1 (Pi 1 0 (U 0) (A => Pi 0 0 A (_ => A)))
          := id 1.";
    println!();
    for e in parse_output_entries(src, &sig).unwrap() {
        let name = e.name.clone();
        match sig.check_and_push(e, 10_000) {
            Ok(()) => println!("{name}: ok"),
            Err(err) => println!("{name}: {err}"),
        }
    }
}
