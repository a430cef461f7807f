//! Narrowing the result with a constraint file: `succ` first gets two
//! independent level parameters, then one once the file ties them together.
//!
//! ```text
//! cargo run --example user_constraints
//! ```

use upp_elab::cli::{dry_run, translate};
use upp_elab::elab::{ElabOptions, Pts};

const NAT: &str = include_str!("data/nat.sig");
const CONSTRAINTS: &str = include_str!("data/nat.constraints");

fn main() {
    let pts = Pts::default();
    let opts = ElabOptions::default();

    // The erased forms show the names a constraint file can refer to.
    let (listing, _) = dry_run(NAT, None, &pts, opts).unwrap();
    print!("{listing}");

    println!("\nwithout constraints:");
    print!("{}", translate(NAT, None, &pts, opts).unwrap().output);

    println!("with {}", CONSTRAINTS.lines().last().unwrap_or_default());
    print!("{}", translate(NAT, Some(CONSTRAINTS), &pts, opts).unwrap().output);
}
