//! Agda-flavoured rendering of an output signature, reading `Tm` and `Ty`
//! à la Russell: codes are shown as the types they decode to.
//!
//! This is a printer only. The text is meant for an Agda checker with
//! `Agda.Primitive` in scope; nothing here parses it back.

use std::collections::HashSet;
use std::sync::Arc;

use crate::kernel::names::{APP, LAM, LVL, PI, TM, TY, U};
use crate::kernel::{Arg, Entry, Name, Signature, Sort, Term};
use crate::level::{Level, LevelVar};

const RESERVED: [&str; 16] = [
    "Set", "Setω", "Level", "lsuc", "lzero", "module", "where", "open", "import", "postulate", "data", "record",
    "let", "in", "λ", "_",
];

struct Agda {
    scope: Vec<Name>,
    avoid: HashSet<String>,
}

impl Agda {
    fn new(t: &Term) -> Self {
        let mut avoid: HashSet<String> = RESERVED.iter().map(|s| (*s).to_owned()).collect();
        avoid.extend(t.constants().iter().map(|c| c.to_string()));
        avoid.extend(t.level_vars_in_order().iter().filter_map(|v| v.name().map(str::to_owned)));
        Agda {
            scope: Vec::new(),
            avoid,
        }
    }

    fn fresh(&self, base: &str) -> Name {
        let base = if base == "_" { "x" } else { base };
        let mut name = base.to_owned();
        while self.avoid.contains(&name) || self.scope.iter().any(|s| **s == *name) {
            name.push('\'');
        }
        Arc::from(name)
    }

    fn bind<T>(&mut self, x: Name, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.push(x);
        let out = f(self);
        self.scope.pop();
        out
    }

    fn var(&self, k: u32) -> String {
        match self.scope.len().checked_sub(k as usize + 1) {
            Some(at) => self.scope[at].to_string(),
            None => format!("#{k}"),
        }
    }

    fn level(&self, l: &Level, atomic: bool) -> String {
        let s = match l {
            Level::Zero => return "lzero".into(),
            Level::Var(LevelVar::Named(n)) => return n.to_string(),
            Level::Var(LevelVar::Bound(k)) => return self.var(*k),
            Level::Succ(x) => format!("lsuc {}", self.level(x, true)),
            Level::Max(a, b) => format!("{} ⊔ {}", self.level(a, false), self.level(b, true)),
        };
        if atomic {
            format!("({s})")
        } else {
            s
        }
    }

    fn paren(s: String, needed: bool) -> String {
        if needed {
            format!("({s})")
        } else {
            s
        }
    }

    /// `prec`: 0 allows binders, 1 allows applications, 2 only atoms.
    fn term(&mut self, t: &Term, prec: u8) -> String {
        match t {
            Term::Var(k) => self.var(*k),
            Term::Const(c) if &**c == LVL => "Level".into(),
            Term::Const(c) => c.to_string(),
            Term::Sort(Sort::Type) => "Setω".into(),
            Term::Sort(Sort::Kind) => "Kind".into(),
            Term::Pi(x, a, b) => {
                let s = self.arrow(&x.0, a, b);
                Self::paren(s, prec > 0)
            }
            Term::CPi(..) => {
                let mut names = Vec::new();
                let mut t = t;
                while let Term::CPi(x, _, b) = t {
                    let x = self.fresh(&x.0);
                    self.scope.push(x.clone());
                    names.push(x);
                    t = b;
                }
                let cod = self.term(t, 0);
                self.scope.truncate(self.scope.len() - names.len());
                Self::paren(format!("({} : Level) → {cod}", names.join(" ")), prec > 0)
            }
            Term::Abs(x, b) | Term::CAbs(x, b) => {
                let x = self.fresh(&x.0);
                let body = self.bind(x.clone(), |p| p.term(b, 0));
                Self::paren(format!("λ {x} → {body}"), prec > 0)
            }
            Term::App(..) | Term::CApp(..) => self.spine(t, prec),
        }
    }

    fn arrow(&mut self, x: &str, dom: &Term, cod: &Term) -> String {
        if cod.has_loose(0) {
            let d = self.term(dom, 0);
            let x = self.fresh(x);
            let c = self.bind(x.clone(), |p| p.term(cod, 0));
            format!("({x} : {d}) → {c}")
        } else {
            let d = self.term(dom, 1);
            let c = self.bind(Arc::from("_"), |p| p.term(cod, 0));
            format!("{d} → {c}")
        }
    }

    fn spine(&mut self, t: &Term, prec: u8) -> String {
        let (head, args) = t.spine();
        if let Term::Const(c) = head {
            match (&**c, args.as_slice()) {
                (TM, [Arg::Level(_), Arg::Term(a)]) => return self.term(a, prec),
                (TY | U, [Arg::Level(l)]) => {
                    return Self::paren(format!("Set {}", self.level(l, true)), prec > 1);
                }
                (PI, [Arg::Level(_), Arg::Level(_), Arg::Term(a), Arg::Term(b)]) => {
                    let s = match b {
                        Term::Abs(x, body) => self.arrow(&x.0, a, body),
                        _ => self.arrow("x", a, &b.shift(1, 0).app(Term::Var(0))),
                    };
                    return Self::paren(s, prec > 0);
                }
                (LAM, [Arg::Level(_), Arg::Level(_), Arg::Term(_), Arg::Term(_), Arg::Term(body)]) => {
                    return self.term(body, prec);
                }
                (APP, [Arg::Level(_), Arg::Level(_), Arg::Term(_), Arg::Term(_), Arg::Term(f), Arg::Term(u)]) => {
                    let s = format!("{} {}", self.term(f, 1), self.term(u, 2));
                    return Self::paren(s, prec > 1);
                }
                _ => {}
            }
        }
        let mut s = self.term(head, 2);
        for a in &args {
            s.push(' ');
            match a {
                Arg::Term(u) => s += &self.term(u, 2),
                Arg::Level(l) => s += &self.level(l, true),
            }
        }
        Self::paren(s, prec > 1)
    }
}

fn render(t: &Term) -> String {
    Agda::new(t).term(t, 0)
}

fn entry(e: &Entry) -> String {
    let ty = render(e.ty());
    match e.body() {
        None => format!("postulate\n  {} : {ty}\n", e.name),
        Some(b) => format!("{n} : {ty}\n{n} = {}\n", render(b), n = e.name),
    }
}

/// Renders the entries added after the built-ins as an Agda module.
pub fn export_agda_style(sig: &Signature) -> String {
    let mut out = String::from("module Output where\n\nopen import Agda.Primitive\n");
    for e in sig.local_entries() {
        out.push('\n');
        out += &entry(e);
    }
    out
}
