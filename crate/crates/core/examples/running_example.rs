//! The polymorphic identity and its self-application, from the
//! impredicative layout to explicit level parameters.
//!
//! ```text
//! cargo run --example running_example
//! ```

use upp_elab::cli::translate;
use upp_elab::elab::{ElabOptions, Pts};

fn main() {
    let t = translate(
        include_str!("data/id.sig"),
        None,
        &Pts::default(),
        ElabOptions::default(),
    )
    .unwrap();
    for r in &t.results {
        println!("erased   {}", r.erased.to_string().replace('\n', "\n         "));
        println!("         {} constraints, solved by {}", r.constraints.len(), r.solved);
        println!();
    }
    match &t.failure {
        None => print!("{}", t.output),
        Some(f) => println!("{f}"),
    }
}
