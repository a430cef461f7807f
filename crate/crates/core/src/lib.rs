//! Elaboration of impredicative signatures into universe-polymorphic ones.
//!
//! Input entries are written against a sort layout with an impredicative
//! sort (by default `Omega : Box`, with `Omega` closed under products over
//! `Box`). The elaborator forgets every sort, re-infers universe levels as
//! constraints during bidirectional checking, solves them by level
//! unification, and abstracts what remains, so each output entry is as
//! polymorphic as the solver can prove.
//!
//! Modules, bottom-up:
//!
//! - [`level`]: levels, canonical forms, substitutions, the natural-number
//!   interpretation;
//! - [`unify`]: classification of single equations and the
//!   postponement-based solver;
//! - [`kernel`]: terms with confined (level) binders, the target signature,
//!   reduction, conversion and the entry checker;
//! - [`syntax`]: parsing and printing of both signature languages;
//! - [`elab`]: erasure, constraint generation and generalization;
//! - [`cli`]: the batch pipeline behind the `upp-elab` binary;
//! - [`agda`]: an Agda-flavoured rendering of output signatures.
//!
//! The runnable programs under `examples/` walk through each capability:
//!
//! ```text
//! cargo run --example canonical_levels
//! cargo run --example classify_equations
//! cargo run --example unify_problems
//! cargo run --example kernel_check
//! cargo run --example running_example
//! cargo run --example user_constraints
//! cargo run --example stuck_witness
//! cargo run --example agda_export
//! ```

pub mod agda;
pub mod cli;
pub mod elab;
pub mod kernel;
pub mod level;
pub mod syntax;
pub mod unify;
