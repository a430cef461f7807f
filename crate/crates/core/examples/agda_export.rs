//! Rendering an elaborated signature in Agda surface syntax.
//!
//! ```text
//! cargo run --example agda_export
//! ```

use upp_elab::agda::export_agda_style;
use upp_elab::cli::translate;
use upp_elab::elab::{ElabOptions, Pts};

fn main() {
    let input = [include_str!("data/id.sig"), include_str!("data/nat.sig")].join("\n");
    let t = translate(&input, None, &Pts::default(), ElabOptions::default()).unwrap();
    print!("{}", export_agda_style(&t.signature));
}
