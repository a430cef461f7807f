//! Scope resolution for output syntax: raw trees to nameless terms.
//!
//! The grammar does not mark level arguments, so an argument is read as a
//! level when the head is a constant still expecting level arguments, or when
//! the argument can only be a level (a number, `S l`, `n + l`, `l ⊔ l'`, or a
//! variable bound by `(i : Lvl) ->`).

use super::parser::{Raw, RawEntry};
use super::{ParseError, Pos};
use crate::kernel::names::LVL;
use crate::kernel::{Entry, Signature, Sort, Term};
use crate::level::{Level, LevelVar};

pub(crate) struct Resolver<'a> {
    sig: &'a Signature,
    /// Innermost last; `true` marks a confined binder.
    scope: Vec<(String, bool)>,
    /// Whether unknown identifiers may stand for free level variables.
    free_levels: bool,
}

fn err(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new(pos, msg)
}

impl<'a> Resolver<'a> {
    pub(crate) fn new(sig: &'a Signature, free_levels: bool) -> Self {
        Resolver {
            sig,
            scope: Vec::new(),
            free_levels,
        }
    }

    fn lookup(&self, x: &str) -> Option<(u32, bool)> {
        if x == "_" {
            return None;
        }
        self.scope
            .iter()
            .rev()
            .position(|(y, _)| y == x)
            .map(|k| (k as u32, self.scope[self.scope.len() - 1 - k].1))
    }

    fn is_successor(&self, f: &Raw) -> bool {
        matches!(f, Raw::Ident(s, _) if s == "S" && self.lookup(s).is_none())
    }

    fn is_level_shaped(&self, r: &Raw) -> bool {
        match r {
            Raw::Nat(..) | Raw::Plus(..) | Raw::Join(..) => true,
            Raw::App(f, _) => self.is_successor(f),
            Raw::Ident(x, _) => match self.lookup(x) {
                Some((_, confined)) => confined,
                None => {
                    self.free_levels && !self.sig.contains(x) && !matches!(x.as_str(), "Type" | "Kind" | "S")
                }
            },
            _ => false,
        }
    }

    pub(crate) fn level(&self, r: &Raw) -> Result<Level, ParseError> {
        match r {
            Raw::Nat(n, p) => Ok(Level::nat(u32::try_from(*n).map_err(|_| err(*p, "level constant is too large"))?)),
            Raw::Plus(n, l, p) => {
                let n = u32::try_from(*n).map_err(|_| err(*p, "level constant is too large"))?;
                Ok(self.level(l)?.plus(n))
            }
            Raw::Join(a, b) => Ok(self.level(a)?.max(self.level(b)?)),
            Raw::App(f, a) if self.is_successor(f) => Ok(self.level(a)?.succ()),
            Raw::Ident(x, p) => match self.lookup(x) {
                Some((k, true)) => Ok(Level::Var(LevelVar::Bound(k))),
                Some((_, false)) => Err(err(*p, format!("`{x}` is a term variable, not a level"))),
                None if x == "S" => Err(err(*p, "`S` expects an argument")),
                None if self.free_levels => Ok(Level::var(x)),
                None => Err(err(*p, format!("unknown level variable `{x}`"))),
            },
            other => Err(err(other.pos(), "expected a level")),
        }
    }

    fn with_binder<T>(&mut self, x: &str, confined: bool, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.push((x.to_owned(), confined));
        let out = f(self);
        self.scope.pop();
        out
    }

    pub(crate) fn term(&mut self, r: &Raw) -> Result<Term, ParseError> {
        match r {
            Raw::Ident(x, p) => match self.lookup(x) {
                Some((_, true)) => Err(err(*p, format!("level variable `{x}` used as a term"))),
                Some((k, false)) => Ok(Term::Var(k)),
                None if x == "Type" => Ok(Term::Sort(Sort::Type)),
                None if x == "Kind" => Ok(Term::Sort(Sort::Kind)),
                None if self.sig.contains(x) => Ok(Term::constant(x)),
                None => Err(err(*p, format!("unknown identifier `{x}`"))),
            },
            Raw::Nat(_, p) | Raw::Plus(_, _, p) => Err(err(*p, "level expression where a term was expected")),
            Raw::Join(a, _) => Err(err(a.pos(), "level expression where a term was expected")),
            Raw::Tagged(x, _, p) => Err(err(
                *p,
                format!("sort-tagged constant `{x}@…` belongs to the input syntax"),
            )),
            Raw::Pi(names, dom, cod) => {
                let confined = matches!(&**dom, Raw::Ident(s, _) if s == LVL && self.lookup(s).is_none());
                let dom = self.term(dom)?;
                self.pi_group(names, &dom, confined, cod)
            }
            Raw::Abs(x, body, _) => {
                let body = self.with_binder(x, false, |s| s.term(body))?;
                Ok(Term::abs(x, body))
            }
            Raw::App(..) => self.app(r),
        }
    }

    fn pi_group(&mut self, names: &[String], dom: &Term, confined: bool, cod: &Raw) -> Result<Term, ParseError> {
        let Some((x, rest)) = names.split_first() else {
            return self.term(cod);
        };
        let inner = self.with_binder(x, confined, |s| s.pi_group(rest, &dom.shift(1, 0), confined, cod))?;
        Ok(if confined {
            Term::cpi(x, dom.clone(), inner)
        } else {
            Term::pi(x, dom.clone(), inner)
        })
    }

    fn app(&mut self, r: &Raw) -> Result<Term, ParseError> {
        let mut args = Vec::new();
        let mut head = r;
        while let Raw::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        if self.is_successor(head) {
            return Err(err(head.pos(), "level expression where a term was expected"));
        }
        let mut t = self.term(head)?;
        let arity = match &t {
            Term::Const(c) => self.sig.get(c).map_or(0, Entry::level_arity),
            _ => 0,
        };
        for (n, a) in args.into_iter().enumerate() {
            t = if n < arity || self.is_level_shaped(a) {
                t.capp(self.level(a)?)
            } else {
                t.app(self.term(a)?)
            };
        }
        Ok(t)
    }

    /// A definition body: the first `k` abstractions bind the type's level
    /// parameters.
    fn body(&mut self, r: &Raw, k: usize) -> Result<Term, ParseError> {
        if k == 0 {
            return self.term(r);
        }
        match r {
            Raw::Abs(x, body, _) => {
                let body = self.with_binder(x, true, |s| s.body(body, k - 1))?;
                Ok(Term::cabs(x, body))
            }
            other => Err(err(
                other.pos(),
                format!("expected {k} more level abstraction(s) matching the type's `Lvl` prefix"),
            )),
        }
    }

    pub(crate) fn entry(&mut self, raw: &RawEntry) -> Result<Entry, ParseError> {
        let ty = self.term(&raw.ty)?;
        Ok(match &raw.body {
            None => Entry::declaration(&raw.name, ty),
            Some(b) => {
                let body = self.body(b, ty.level_prefix_len())?;
                Entry::definition(&raw.name, ty, body)
            }
        })
    }
}
