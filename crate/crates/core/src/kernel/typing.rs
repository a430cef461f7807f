//! Bidirectional checking: abstractions are unannotated, so they are only
//! checked against a product exposed by weak-head reduction.

use std::cell::RefCell;

use super::names::LVL;
use super::reduce::Machine;
use super::{Arg, Context, Entry, KernelError, Signature, Sort, Term, DEFAULT_FUEL};
use crate::level::{Level, LevelVar};
use crate::syntax::print_term;

/// A level equation met during conversion, with the path of the subterm
/// being checked.
pub(crate) type Recorded = (Level, Level, String);

pub(crate) struct Checker<'s> {
    pub(crate) m: Machine<'s>,
    /// When present, conversion records level mismatches here instead of
    /// deciding them.
    collect: Option<RefCell<Vec<Recorded>>>,
}

pub(crate) type Path = Vec<&'static str>;

fn show_path(path: &Path) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.join(" > ")
    }
}

impl<'s> Checker<'s> {
    pub(crate) fn new(sig: &'s Signature, fuel: u64) -> Self {
        Checker {
            m: Machine::new(sig, fuel),
            collect: None,
        }
    }

    pub(crate) fn collecting(sig: &'s Signature, fuel: u64) -> Self {
        Checker {
            m: Machine::new(sig, fuel),
            collect: Some(RefCell::new(Vec::new())),
        }
    }

    pub(crate) fn take_recorded(&self) -> Vec<Recorded> {
        self.collect.as_ref().map(|c| c.take()).unwrap_or_default()
    }

    fn err(&self, rule: &'static str, path: &Path, message: String) -> KernelError {
        KernelError::TypeError {
            rule,
            path: show_path(path),
            message,
        }
    }

    /// Conversion at rule Conv.
    pub(crate) fn conv(&self, a: &Term, b: &Term, path: &Path) -> Result<bool, KernelError> {
        let Some(cell) = &self.collect else {
            return self.m.convert(a, b);
        };
        let mut found = Vec::new();
        let ok = self.m.conv_with(a, b, &mut |x, y| {
            found.push((x.clone(), y.clone()));
            true
        })?;
        if ok {
            let at = show_path(path);
            cell.borrow_mut().extend(found.into_iter().map(|(x, y)| (x, y, at.clone())));
        }
        Ok(ok)
    }

    fn show(ctx: &Context, t: &Term) -> String {
        print_term(t, &ctx.names())
    }

    fn expect_sort(&self, ctx: &Context, t: &Term, rule: &'static str, path: &Path) -> Result<Sort, KernelError> {
        match self.m.whnf(t)? {
            Term::Sort(s) => Ok(s),
            other => Err(self.err(rule, path, format!("expected a sort, found `{}`", Self::show(ctx, &other)))),
        }
    }

    fn check_level(&self, ctx: &Context, l: &Level, path: &Path) -> Result<(), KernelError> {
        let mut bad = None;
        l.for_each_var(&mut |v| {
            let ok = match v {
                LevelVar::Bound(k) => ctx.lookup(*k).is_some_and(|(e, _)| e.confined),
                LevelVar::Named(_) => ctx.open_levels(),
            };
            if !ok && bad.is_none() {
                bad = Some(v.clone());
            }
        });
        match bad {
            None => Ok(()),
            Some(v) => Err(self.err("AppC", path, format!("level variable `{v}` is not in scope"))),
        }
    }

    pub(crate) fn infer(&self, ctx: &mut Context, t: &Term, path: &mut Path) -> Result<Term, KernelError> {
        match t {
            Term::Var(k) => match ctx.lookup(*k) {
                Some((e, _)) if e.confined => {
                    Err(self.err("Var", path, format!("level variable `{}` used as a term", e.name)))
                }
                Some((_, ty)) => Ok(ty),
                None => Err(self.err("Var", path, format!("unbound variable #{k}"))),
            },
            Term::Const(c) => match self.m.sig.get(c) {
                Some(e) => Ok(e.ty().clone()),
                None => Err(self.err("Cons", path, format!("unknown constant `{c}`"))),
            },
            Term::Sort(Sort::Type) => Ok(Term::Sort(Sort::Kind)),
            Term::Sort(Sort::Kind) => Err(self.err("Sort", path, "`Kind` has no type".into())),
            Term::Pi(x, a, b) => {
                path.push("Pi.dom");
                let sa = self.infer(ctx, a, path)?;
                let s = self.expect_sort(ctx, &sa, "Arrow", path)?;
                if s != Sort::Type {
                    return Err(self.err("Arrow", path, "the domain of a product must have type `Type`".into()));
                }
                path.pop();
                path.push("Pi.cod");
                ctx.push(&x.0, (**a).clone());
                let sb = self.infer(ctx, b, path);
                let res = sb.and_then(|sb| self.expect_sort(ctx, &sb, "Arrow", path));
                ctx.pop();
                path.pop();
                Ok(Term::Sort(res?))
            }
            Term::CPi(x, a, b) => {
                path.push("CPi.dom");
                if !self.m.convert(a, &Term::constant(LVL))? {
                    return Err(self.err("ArrowC", path, format!("confined domain `{}` is not `Lvl`", Self::show(ctx, a))));
                }
                path.pop();
                path.push("CPi.cod");
                ctx.push_confined(&x.0, (**a).clone());
                let sb = self.infer(ctx, b, path);
                let res = sb.and_then(|sb| self.expect_sort(ctx, &sb, "ArrowC", path));
                ctx.pop();
                path.pop();
                Ok(Term::Sort(res?))
            }
            Term::App(f, u) => {
                path.push("App.fn");
                let ft = self.infer(ctx, f, path)?;
                let (a, b) = match self.m.whnf(&ft)? {
                    Term::Pi(_, a, b) => (a, b),
                    other => {
                        return Err(self.err(
                            "App",
                            path,
                            format!("expected a function, found type `{}`", Self::show(ctx, &other)),
                        ))
                    }
                };
                path.pop();
                path.push("App.arg");
                self.check(ctx, u, &a, path)?;
                path.pop();
                Ok(b.instantiate(&Arg::Term((**u).clone())))
            }
            Term::CApp(f, l) => {
                path.push("CApp.fn");
                let ft = self.infer(ctx, f, path)?;
                let b = match self.m.whnf(&ft)? {
                    Term::CPi(_, _, b) => b,
                    other => {
                        return Err(self.err(
                            "AppC",
                            path,
                            format!("expected a level abstraction, found type `{}`", Self::show(ctx, &other)),
                        ))
                    }
                };
                path.pop();
                path.push("CApp.arg");
                self.check_level(ctx, l, path)?;
                path.pop();
                Ok(b.instantiate(&Arg::Level(l.clone())))
            }
            Term::Abs(..) | Term::CAbs(..) => Err(self.err(
                "Abs",
                path,
                "cannot infer the type of an unannotated abstraction".into(),
            )),
        }
    }

    pub(crate) fn check(&self, ctx: &mut Context, t: &Term, ty: &Term, path: &mut Path) -> Result<(), KernelError> {
        match t {
            Term::Abs(x, body) => {
                let Term::Pi(_, a, b) = self.m.whnf(ty)? else {
                    return Err(self.err(
                        "Abs",
                        path,
                        format!("abstraction checked against non-product `{}`", Self::show(ctx, ty)),
                    ));
                };
                path.push("Abs");
                ctx.push(&x.0, (*a).clone());
                let r = self.check(ctx, body, &b, path);
                ctx.pop();
                path.pop();
                r
            }
            Term::CAbs(x, body) => {
                let Term::CPi(_, a, b) = self.m.whnf(ty)? else {
                    return Err(self.err(
                        "AbsC",
                        path,
                        format!("level abstraction checked against `{}`", Self::show(ctx, ty)),
                    ));
                };
                path.push("CAbs");
                ctx.push_confined(&x.0, (*a).clone());
                let r = self.check(ctx, body, &b, path);
                ctx.pop();
                path.pop();
                r
            }
            _ => {
                let found = self.infer(ctx, t, path)?;
                if self.conv(&found, ty, path)? {
                    Ok(())
                } else {
                    Err(self.err(
                        "Conv",
                        path,
                        format!(
                            "`{}` has type `{}` but `{}` was expected",
                            Self::show(ctx, t),
                            Self::show(ctx, &found),
                            Self::show(ctx, ty)
                        ),
                    ))
                }
            }
        }
    }
}

pub fn infer_type(ctx: &Context, t: &Term, sig: &Signature) -> Result<Term, KernelError> {
    Checker::new(sig, DEFAULT_FUEL).infer(&mut ctx.clone(), t, &mut Vec::new())
}

pub(crate) fn check_entry_with_fuel(sig: &Signature, e: &Entry, fuel: u64) -> Result<(), KernelError> {
    if sig.contains(&e.name) {
        return Err(KernelError::DuplicateName(e.name.clone()));
    }
    let checker = Checker::new(sig, fuel);
    let mut ctx = Context::new();
    let mut path = vec!["type"];
    let s = checker.infer(&mut ctx, e.ty(), &mut path)?;
    checker.expect_sort(&ctx, &s, "Entry", &path)?;
    if e.level_params.len() != e.ty().level_prefix_len() {
        return Err(checker.err("Entry", &path, "level parameters disagree with the type".into()));
    }
    if let Some(body) = e.body() {
        let mut path = vec!["body"];
        checker.check(&mut ctx, body, e.ty(), &mut path)?;
    }
    Ok(())
}

/// Validates `e` against `sig` and returns the extended signature.
pub fn check_entry(sig: &Signature, e: Entry) -> Result<Signature, KernelError> {
    let mut out = sig.clone();
    out.check_and_push(e, DEFAULT_FUEL)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_open_term, parse_output_entries};

    fn t(sig: &Signature, s: &str) -> Term {
        parse_open_term(s, sig).unwrap()
    }

    fn check_all(src: &str) -> Result<Signature, KernelError> {
        let mut sig = Signature::upp();
        for e in parse_output_entries(src, &sig).unwrap() {
            sig = check_entry(&sig, e)?;
        }
        Ok(sig)
    }

    const ID: &str = "def id : (i : Lvl) -> Tm (S i) (Pi (S i) i (U i) (A => Pi i i A (x => A)))
        := i => Lam (S i) i (U i) (A => Pi i i A (x => A)) (A => Lam i i A (x => A) (x => x)).";

    #[test]
    fn base_signature_is_well_formed() {
        let base = Signature::upp();
        let mut sig = Signature::empty();
        for e in base.entries() {
            sig = check_entry(&sig, e.clone()).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    #[test]
    fn built_in_types() {
        let sig = Signature::upp();
        assert_eq!(sig.get("U").unwrap().ty(), &t(&sig, "(l : Lvl) -> Ty (S l)"));
        assert_eq!(sig.get("Pi").unwrap().level_params.len(), 2);
        let ctx = Context::new();
        assert_eq!(infer_type(&ctx, &t(&sig, "U 0"), &sig).unwrap(), t(&sig, "Ty (S 0)"));
        assert_eq!(infer_type(&ctx, &t(&sig, "Type"), &sig).unwrap(), Term::Sort(Sort::Kind));
    }

    #[test]
    fn polymorphic_identity_checks() {
        let sig = check_all(ID).unwrap();
        assert_eq!(sig.get("id").unwrap().level_arity(), 1);
    }

    #[test]
    fn type_is_not_a_type() {
        let sig = Signature::upp();
        let bad = Entry::definition("c", Term::Sort(Sort::Type), Term::Sort(Sort::Type));
        assert!(matches!(check_entry(&sig, bad), Err(KernelError::TypeError { rule: "Conv", .. })));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let sig = check_all(ID).unwrap();
        let again = parse_output_entries(ID, &Signature::upp()).unwrap().remove(0);
        assert!(matches!(check_entry(&sig, again), Err(KernelError::DuplicateName(_))));
    }

    #[test]
    fn identity_at_one_fixed_level_cannot_be_applied_to_itself() {
        // Every level set to 0: the argument `id 0` lives one universe too high.
        let src = format!(
            "{ID}
            def idid : Tm 0 (Pi 0 0 (Pi 1 0 (U 0) (A => Pi 0 0 A (x => A))) (x => Pi 1 0 (U 0) (A => Pi 0 0 A (x => A))))
              := App 1 0 (U 0) (A => Pi 0 0 A (x => A)) (id 0) (Pi 1 0 (U 0) (A => Pi 0 0 A (x => A))).
            "
        );
        assert!(matches!(check_all(&src), Err(KernelError::TypeError { .. })));
    }

    #[test]
    fn unbound_level_variables_are_rejected() {
        let sig = Signature::upp();
        let e = Entry::declaration("c", t(&sig, "Ty j"));
        assert!(matches!(check_entry(&sig, e), Err(KernelError::TypeError { rule: "AppC", .. })));
    }

    #[test]
    fn errors_report_the_subterm_path() {
        let sig = check_all(ID).unwrap();
        let e = parse_output_entries("def bad : Tm 1 (U 0) := id 0.", &sig).unwrap().remove(0);
        let Err(KernelError::TypeError { path, .. }) = check_entry(&sig, e) else {
            panic!("expected a type error");
        };
        assert_eq!(path, "body");
    }
}
