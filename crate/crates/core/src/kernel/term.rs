//! Nameless terms. Regular and confined binders share one de Bruijn index
//! space: `Var(k)` and `LevelVar::Bound(k)` both count the binders between
//! the occurrence and the binder, whatever their flavor.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::level::{Level, LevelSubst, LevelVar};

pub type Name = Arc<str>;

/// Display name of a binder. Ignored by equality and hashing, so that
/// alpha-equivalent terms compare equal.
#[derive(Clone, Debug)]
pub struct Binder(pub Name);

impl Binder {
    pub fn new(name: &str) -> Self {
        Binder(Arc::from(name))
    }
}

impl PartialEq for Binder {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sort {
    Type,
    Kind,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(u32),
    Const(Name),
    Sort(Sort),
    Pi(Binder, Arc<Term>, Arc<Term>),
    Abs(Binder, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    /// Product over a confined (level) variable.
    CPi(Binder, Arc<Term>, Arc<Term>),
    CAbs(Binder, Arc<Term>),
    CApp(Arc<Term>, Level),
}

/// An application argument: a term or a level.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Arg {
    Term(Term),
    Level(Level),
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term::Const(Arc::from(name))
    }

    pub fn app(self, arg: Term) -> Term {
        Term::App(Arc::new(self), Arc::new(arg))
    }

    pub fn capp(self, l: Level) -> Term {
        Term::CApp(Arc::new(self), l)
    }

    pub fn apply(self, arg: Arg) -> Term {
        match arg {
            Arg::Term(t) => self.app(t),
            Arg::Level(l) => self.capp(l),
        }
    }

    pub fn apply_all(self, args: impl IntoIterator<Item = Arg>) -> Term {
        args.into_iter().fold(self, Term::apply)
    }

    /// `(x : dom) -> cod`, with `cod` already under the binder.
    pub fn pi(x: &str, dom: Term, cod: Term) -> Term {
        Term::Pi(Binder::new(x), Arc::new(dom), Arc::new(cod))
    }

    /// Non-dependent product; `cod` is given outside the binder.
    pub fn arrow(dom: Term, cod: Term) -> Term {
        Term::pi("_", dom, cod.shift(1, 0))
    }

    pub fn abs(x: &str, body: Term) -> Term {
        Term::Abs(Binder::new(x), Arc::new(body))
    }

    pub fn cpi(i: &str, dom: Term, cod: Term) -> Term {
        Term::CPi(Binder::new(i), Arc::new(dom), Arc::new(cod))
    }

    pub fn cabs(i: &str, body: Term) -> Term {
        Term::CAbs(Binder::new(i), Arc::new(body))
    }

    /// Head and arguments of an application spine, in application order.
    pub fn spine(&self) -> (&Term, Vec<Arg>) {
        let mut args = Vec::new();
        let mut t = self;
        loop {
            match t {
                Term::App(f, a) => {
                    args.push(Arg::Term((**a).clone()));
                    t = f;
                }
                Term::CApp(f, l) => {
                    args.push(Arg::Level(l.clone()));
                    t = f;
                }
                _ => break,
            }
        }
        args.reverse();
        (t, args)
    }

    /// Rebuilds the term bottom-up, calling `var` on regular variables and
    /// `level` on level arguments with the number of binders crossed.
    fn map_at(
        &self,
        depth: u32,
        var: &dyn Fn(u32, u32) -> Term,
        level: &dyn Fn(&Level, u32) -> Level,
    ) -> Term {
        let go = |t: &Arc<Term>, d: u32| Arc::new(t.map_at(d, var, level));
        match self {
            Term::Var(k) => var(*k, depth),
            Term::Const(_) | Term::Sort(_) => self.clone(),
            Term::Pi(x, a, b) => Term::Pi(x.clone(), go(a, depth), go(b, depth + 1)),
            Term::Abs(x, b) => Term::Abs(x.clone(), go(b, depth + 1)),
            Term::App(f, a) => Term::App(go(f, depth), go(a, depth)),
            Term::CPi(x, a, b) => Term::CPi(x.clone(), go(a, depth), go(b, depth + 1)),
            Term::CAbs(x, b) => Term::CAbs(x.clone(), go(b, depth + 1)),
            Term::CApp(f, l) => Term::CApp(go(f, depth), level(l, depth)),
        }
    }

    /// Adds `by` to every index at or above `cutoff` (counted from the root).
    pub fn shift(&self, by: i64, cutoff: u32) -> Term {
        if by == 0 {
            return self.clone();
        }
        let bump = move |k: u32, d: u32| if k >= d + cutoff { (k as i64 + by) as u32 } else { k };
        self.map_at(0, &|k, d| Term::Var(bump(k, d)), &|l, d| shift_level_at(l, d, &bump))
    }

    /// Simultaneous substitution of the loose indices `0..args.len()`;
    /// higher loose indices move down by `args.len()`.
    ///
    /// Panics when a regular variable meets a level argument or vice versa.
    pub fn subst_loose(&self, args: &[Arg]) -> Term {
        let n = args.len() as u32;
        let var = |k: u32, d: u32| -> Term {
            if k < d {
                Term::Var(k)
            } else if k - d < n {
                match &args[(k - d) as usize] {
                    Arg::Term(t) => t.shift(d as i64, 0),
                    Arg::Level(_) => panic!("level substituted for a term variable"),
                }
            } else {
                Term::Var(k - n)
            }
        };
        let level = |l: &Level, d: u32| -> Level {
            l.map_vars(&mut |v| match v {
                LevelVar::Bound(k) if *k >= d && *k - d < n => match &args[(*k - d) as usize] {
                    Arg::Level(l) => shift_level(l, d as i64),
                    Arg::Term(_) => panic!("term substituted for a level variable"),
                },
                LevelVar::Bound(k) if *k >= d => Level::Var(LevelVar::Bound(*k - n)),
                _ => Level::Var(v.clone()),
            })
        };
        self.map_at(0, &var, &level)
    }

    /// Body of a binder with index 0 replaced by `arg`.
    pub fn instantiate(&self, arg: &Arg) -> Term {
        self.subst_loose(std::slice::from_ref(arg))
    }

    /// Replaces free named level variables; the range must not contain
    /// bound indices.
    pub fn subst_levels(&self, theta: &LevelSubst) -> Term {
        if theta.is_empty() {
            return self.clone();
        }
        self.map_at(0, &|k, _| Term::Var(k), &|l, _| l.subst(theta))
    }

    /// Applies `f` to every level argument.
    pub fn map_levels(&self, f: &dyn Fn(&Level) -> Level) -> Term {
        self.map_at(0, &|k, _| Term::Var(k), &|l, _| f(l))
    }

    /// Turns the free level variable `name` into the index of a new
    /// enclosing binder, shifting existing loose indices up by one.
    pub fn abstract_level(&self, name: &LevelVar) -> Term {
        let var = |k: u32, d: u32| Term::Var(if k >= d { k + 1 } else { k });
        let level = |l: &Level, d: u32| {
            l.map_vars(&mut |v| match v {
                v if v == name => Level::Var(LevelVar::Bound(d)),
                LevelVar::Bound(k) if *k >= d => Level::Var(LevelVar::Bound(k + 1)),
                _ => Level::Var(v.clone()),
            })
        };
        self.map_at(0, &var, &level)
    }

    /// Whether the loose index `k` occurs (as a term or level variable).
    pub fn has_loose(&self, k: u32) -> bool {
        fn go(t: &Term, k: u32) -> bool {
            match t {
                Term::Var(j) => *j == k,
                Term::Const(_) | Term::Sort(_) => false,
                Term::Pi(_, a, b) | Term::CPi(_, a, b) => go(a, k) || go(b, k + 1),
                Term::Abs(_, b) | Term::CAbs(_, b) => go(b, k + 1),
                Term::App(f, a) => go(f, k) || go(a, k),
                Term::CApp(f, l) => {
                    let mut hit = false;
                    l.for_each_var(&mut |v| hit |= *v == LevelVar::Bound(k));
                    hit || go(f, k)
                }
            }
        }
        go(self, k)
    }

    /// Free named level variables in first-occurrence order (pre-order,
    /// left to right).
    pub fn level_vars_in_order(&self) -> Vec<LevelVar> {
        fn go(t: &Term, out: &mut Vec<LevelVar>) {
            match t {
                Term::Var(_) | Term::Const(_) | Term::Sort(_) => {}
                Term::Pi(_, a, b) | Term::CPi(_, a, b) | Term::App(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Term::Abs(_, b) | Term::CAbs(_, b) => go(b, out),
                Term::CApp(f, l) => {
                    go(f, out);
                    l.for_each_var(&mut |v| {
                        if matches!(v, LevelVar::Named(_)) && !out.contains(v) {
                            out.push(v.clone());
                        }
                    });
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Number of leading confined products.
    pub fn level_prefix_len(&self) -> usize {
        let mut n = 0;
        let mut t = self;
        while let Term::CPi(_, _, b) = t {
            n += 1;
            t = b;
        }
        n
    }

    /// Constant names occurring in the term.
    pub fn constants(&self) -> Vec<Name> {
        fn go(t: &Term, out: &mut Vec<Name>) {
            match t {
                Term::Const(c) => {
                    if !out.contains(c) {
                        out.push(c.clone())
                    }
                }
                Term::Var(_) | Term::Sort(_) => {}
                Term::Pi(_, a, b) | Term::CPi(_, a, b) | Term::App(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Term::Abs(_, b) | Term::CAbs(_, b) | Term::CApp(b, _) => go(b, out),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

fn shift_level(l: &Level, by: i64) -> Level {
    shift_level_at(l, 0, &|k, d| if k >= d { (k as i64 + by) as u32 } else { k })
}

fn shift_level_at(l: &Level, depth: u32, bump: &dyn Fn(u32, u32) -> u32) -> Level {
    l.map_vars(&mut |v| match v {
        LevelVar::Bound(k) => Level::Var(LevelVar::Bound(bump(*k, depth))),
        _ => Level::Var(v.clone()),
    })
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self, &[]))
    }
}
