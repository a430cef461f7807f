//! Output-syntax printer. Binder names are freshened so that the printed
//! text resolves back to the same nameless term.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::kernel::names::LVL;
use crate::kernel::{Arg, Entry, Name, Signature, Sort, Term};
use crate::level::{fmt_level, Level, LevelVar};

const RESERVED: [&str; 6] = ["S", "Type", "Kind", "Lvl", "def", "_"];

struct Printer {
    scope: Vec<Name>,
    avoid: HashSet<Name>,
}

/// Displays a level with bound indices resolved against `scope`.
struct LevelIn<'a>(&'a Level, &'a [Name]);

impl fmt::Display for LevelIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = self.1;
        fmt_level(self.0, f, |v, f| match v {
            LevelVar::Named(n) => f.write_str(n),
            LevelVar::Bound(k) => match scope.len().checked_sub(*k as usize + 1) {
                Some(at) => f.write_str(&scope[at]),
                None => write!(f, "#{k}"),
            },
        })
    }
}

fn is_atomic_level(l: &Level) -> bool {
    matches!(l, Level::Var(_)) || matches!(l.split_succ(), (_, Level::Zero))
}

impl Printer {
    fn new(t: &Term, scope: &[Name]) -> Self {
        let mut avoid: HashSet<Name> = RESERVED.iter().map(|s| Arc::from(*s)).collect();
        avoid.extend(t.constants());
        avoid.extend(t.level_vars_in_order().into_iter().filter_map(|v| v.name().map(Arc::from)));
        Printer {
            scope: scope.to_vec(),
            avoid,
        }
    }

    fn fresh(&self, base: &str) -> Name {
        let base = if base == "_" || base.is_empty() { "x" } else { base };
        let mut name = base.to_owned();
        while self.avoid.contains(name.as_str()) || self.scope.iter().any(|s| **s == *name) {
            name.push('\'');
        }
        Arc::from(name)
    }

    fn level(&self, l: &Level) -> String {
        LevelIn(l, &self.scope).to_string()
    }

    fn bind<T>(&mut self, name: Name, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.push(name);
        let out = f(self);
        self.scope.pop();
        out
    }

    /// `prec`: 0 allows binders, 1 allows applications, 2 only atoms.
    fn term(&mut self, t: &Term, prec: u8) -> String {
        let (s, needs) = match t {
            Term::Var(k) => (
                match self.scope.len().checked_sub(*k as usize + 1) {
                    Some(at) => self.scope[at].to_string(),
                    None => format!("#{k}"),
                },
                0,
            ),
            Term::Const(c) => (c.to_string(), 0),
            Term::Sort(Sort::Type) => ("Type".into(), 0),
            Term::Sort(Sort::Kind) => ("Kind".into(), 0),
            Term::Pi(x, a, b) => {
                let s = if b.has_loose(0) {
                    let dom = self.term(a, 0);
                    let x = self.fresh(&x.0);
                    let cod = self.bind(x.clone(), |p| p.term(b, 0));
                    format!("({x} : {dom}) -> {cod}")
                } else {
                    let dom = self.term(a, 1);
                    let cod = self.bind(Arc::from("_"), |p| p.term(b, 0));
                    format!("{dom} -> {cod}")
                };
                (s, 1)
            }
            Term::CPi(..) => (self.cpi_group(t), 1),
            Term::Abs(x, b) | Term::CAbs(x, b) => {
                let x = if &*x.0 == "_" && !b.has_loose(0) {
                    Arc::from("_")
                } else {
                    self.fresh(&x.0)
                };
                let body = self.bind(x.clone(), |p| p.term(b, 0));
                (format!("{x} => {body}"), 1)
            }
            Term::App(..) | Term::CApp(..) => {
                let (head, args) = t.spine();
                let mut s = self.term(head, 2);
                for a in &args {
                    s.push(' ');
                    match a {
                        Arg::Term(u) => s += &self.term(u, 2),
                        Arg::Level(l) if is_atomic_level(l) => s += &self.level(l),
                        Arg::Level(l) => s += &format!("({})", self.level(l)),
                    }
                }
                (s, 2)
            }
        };
        if needs != 0 && prec >= needs {
            format!("({s})")
        } else {
            s
        }
    }

    /// Consecutive `Lvl` binders print as one group, `(i j : Lvl) -> …`.
    fn cpi_group(&mut self, t: &Term) -> String {
        let Term::CPi(x, a, b) = t else { unreachable!() };
        let is_lvl = |a: &Term| matches!(a, Term::Const(c) if &**c == LVL);
        if !is_lvl(a) {
            let dom = self.term(a, 0);
            let x = self.fresh(&x.0);
            let cod = self.bind(x.clone(), |p| p.term(b, 0));
            return format!("({x} : {dom}) -> {cod}");
        }
        let mut names = Vec::new();
        let mut t = t;
        while let Term::CPi(x, a, b) = t {
            if !is_lvl(a) {
                break;
            }
            let x = self.fresh(&x.0);
            self.scope.push(x.clone());
            names.push(x);
            t = b;
        }
        let cod = self.term(t, 0);
        self.scope.truncate(self.scope.len() - names.len());
        format!("({} : {LVL}) -> {cod}", names.join(" "))
    }
}

/// Prints `t` with its loose indices named by `scope` (outermost first).
pub fn print_term(t: &Term, scope: &[Name]) -> String {
    Printer::new(t, scope).term(t, 0)
}

pub fn print_entry(e: &Entry) -> String {
    let ty = print_term(e.ty(), &[]);
    match e.body() {
        None => format!("{} : {ty}.", e.name),
        Some(b) => format!("def {} : {ty}\n  := {}.", e.name, print_term(b, &[])),
    }
}

/// The entries added after the built-ins, one per paragraph.
pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for e in sig.local_entries() {
        out += &print_entry(e);
        out += "\n\n";
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_open_term, parse_output_entries};
    use super::*;

    fn round_trip(src: &str) {
        let sig = Signature::upp();
        let t = parse_open_term(src, &sig).unwrap();
        let printed = print_term(&t, &[]);
        assert_eq!(parse_open_term(&printed, &sig).unwrap(), t, "{printed}");
    }

    #[test]
    fn arrows_and_binders() {
        let sig = Signature::upp();
        let t = parse_open_term("(A : Ty 0) -> (x : Tm 0 A) -> Tm 0 A", &sig).unwrap();
        assert_eq!(print_term(&t, &[]), "(A : Ty 0) -> Tm 0 A -> Tm 0 A");
        round_trip("(A : Ty 0) -> (x : Tm 0 A) -> Tm 0 A");
    }

    #[test]
    fn levels_are_parenthesized_unless_atomic() {
        let sig = Signature::upp();
        let t = parse_open_term("Pi (S i) (i ⊔ j) (U i) (A => U 2)", &sig).unwrap();
        assert_eq!(print_term(&t, &[]), "Pi (1+i) (i ⊔ j) (U i) (A => U 2)");
    }

    #[test]
    fn shadowing_is_renamed_away() {
        // The inner binder must not capture the outer one's name.
        let t = Term::abs("x", Term::abs("x", Term::Var(1)));
        let printed = print_term(&t, &[]);
        assert_eq!(printed, "x => x' => x");
    }

    #[test]
    fn binders_avoid_constants_and_level_names() {
        let t = Term::abs("U", Term::constant("U").capp(Level::var("i")).app(Term::Var(0)));
        assert_eq!(print_term(&t, &[]), "U' => U i U'");
        let t = Term::abs("i", Term::constant("U").capp(Level::var("i")).app(Term::Var(0)));
        assert_eq!(print_term(&t, &[]), "i' => U i i'");
    }

    #[test]
    fn level_groups() {
        let sig = Signature::upp();
        let e = &parse_output_entries("c : (i j : Lvl) -> Ty (S i ⊔ j).", &sig).unwrap()[0];
        assert_eq!(print_entry(e), "c : (i j : Lvl) -> Ty (1+i ⊔ j).");
    }

    #[test]
    fn definitions_round_trip() {
        let sig = Signature::upp();
        let src = "def u : (i : Lvl) -> Ty (1+i)\n  := i => U i.";
        let e = &parse_output_entries(src, &sig).unwrap()[0];
        assert_eq!(print_entry(e), src);
    }
}
