//! Concrete syntax shared by input signatures, output signatures, constraint
//! files and level expressions.
//!
//! Both signature languages use the same grammar:
//!
//! ```text
//! entry := ident ":" term "." | "def" ident ":" term ":=" term "."
//! term  := "(" ident+ ":" term ")" "->" term | term "->" term
//!        | ident "=>" term | term term | "(" term ")" | ident | ident "@" tags
//! level := nat | ident | "S" level | nat "+" level | level "⊔" level
//! ```
//!
//! Input files use sort-tagged framework constants (`Pi@Box,Omega`) and no
//! levels; output files use the untagged constants with explicit level
//! arguments and `(i : Lvl) ->` prefixes.

pub mod lexer;
pub mod parser;

mod input;
mod print;
mod resolve;

use std::fmt;

use thiserror::Error;

use crate::elab::{InputEntry, Pts};
use crate::kernel::{Entry, Signature, Term};
use crate::level::Level;
use crate::unify::Equation;

pub use print::{print_entry, print_signature, print_term};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

/// A level whose identifiers are all free variables.
pub fn parse_level(src: &str) -> Result<Level, ParseError> {
    let raw = parser::parse_raw_level(src)?;
    resolve::Resolver::new(&Signature::empty(), true).level(&raw)
}

/// Output-syntax entries, each resolved against `sig` extended with the
/// entries before it. Nothing is typechecked.
pub fn parse_output_entries(src: &str, sig: &Signature) -> Result<Vec<Entry>, ParseError> {
    let mut work = sig.clone();
    let mut out = Vec::new();
    for raw in parser::parse_entries(src)? {
        let e = resolve::Resolver::new(&work, false).entry(&raw)?;
        work.push_unchecked(e.clone())
            .map_err(|_| ParseError::new(raw.pos, format!("`{}` is declared twice", raw.name)))?;
        out.push(e);
    }
    Ok(out)
}

/// A single output-syntax term in which unknown identifiers in level
/// position are free level variables.
pub fn parse_open_term(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    let raw = parser::parse_raw_term(src)?;
    resolve::Resolver::new(sig, true).term(&raw)
}

/// One line of a constraint file, `succ : i2 == i4 .`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserConstraint {
    pub entry: String,
    pub pos: Pos,
    pub equation: Equation,
}

/// A constraint file. Every identifier in a level is a free variable.
pub fn parse_constraints(src: &str) -> Result<Vec<UserConstraint>, ParseError> {
    let empty = Signature::empty();
    let r = resolve::Resolver::new(&empty, true);
    parser::parse_constraint_lines(src)?
        .into_iter()
        .map(|c| {
            Ok(UserConstraint {
                equation: Equation::new(r.level(&c.lhs)?, r.level(&c.rhs)?),
                entry: c.entry,
                pos: c.pos,
            })
        })
        .collect()
}

/// An input signature over the default sort layout.
pub fn parse_signature(src: &str) -> Result<Vec<InputEntry>, ParseError> {
    parse_signature_with(src, &Pts::default())
}

/// An input signature whose sort tags are validated against `pts`.
pub fn parse_signature_with(src: &str, pts: &Pts) -> Result<Vec<InputEntry>, ParseError> {
    let raws = parser::parse_entries(src)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for raw in &raws {
        if !seen.insert(raw.name.as_str()) {
            return Err(ParseError::new(raw.pos, format!("`{}` is declared twice", raw.name)));
        }
        out.push(input::InputResolver::new(pts).entry(raw)?);
    }
    Ok(out)
}
