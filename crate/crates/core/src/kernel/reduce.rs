use std::cell::Cell;

use super::names::{APP, LAM, TM, TY, U};
use super::{Arg, KernelError, Signature, Term, DEFAULT_FUEL};
use crate::level::{levels_equal, Level};

/// Reduction and conversion against a fixed signature, with a head-step
/// budget shared by every call made through the same machine.
pub struct Machine<'s> {
    pub(crate) sig: &'s Signature,
    fuel: Cell<u64>,
    limit: u64,
}

impl<'s> Machine<'s> {
    pub fn new(sig: &'s Signature, fuel: u64) -> Self {
        Machine {
            sig,
            fuel: Cell::new(fuel),
            limit: fuel,
        }
    }

    pub fn signature(&self) -> &'s Signature {
        self.sig
    }

    fn tick(&self) -> Result<(), KernelError> {
        match self.fuel.get() {
            0 => Err(KernelError::FuelExhausted(self.limit)),
            n => {
                self.fuel.set(n - 1);
                Ok(())
            }
        }
    }

    /// Weak-head normal form: β, β on levels, δ and the two built-in rules.
    /// Arguments are left untouched, except that those matched by a rule
    /// are reduced to expose their head.
    pub fn whnf(&self, t: &Term) -> Result<Term, KernelError> {
        let mut t = t.clone();
        loop {
            self.tick()?;
            let next = {
                let (head, args) = t.spine();
                match (head, args.first()) {
                    (Term::Abs(_, body), Some(Arg::Term(_))) => {
                        Some(body.instantiate(&args[0]).apply_all(args.into_iter().skip(1)))
                    }
                    (Term::CAbs(_, body), Some(Arg::Level(_))) => {
                        Some(body.instantiate(&args[0]).apply_all(args.into_iter().skip(1)))
                    }
                    (Term::Const(c), _) => self.unfold(c, args)?,
                    _ => None,
                }
            };
            match next {
                Some(n) => t = n,
                None => return Ok(t),
            }
        }
    }

    fn unfold(&self, c: &str, args: Vec<Arg>) -> Result<Option<Term>, KernelError> {
        if let Some(body) = self.sig.get(c).and_then(|e| e.body()) {
            return Ok(Some(body.clone().apply_all(args)));
        }
        match (c, args.as_slice()) {
            // Tm l' (U l) ⟶ Ty l
            (TM, [Arg::Level(_), Arg::Term(a), rest @ ..]) => {
                let a = self.whnf(a)?;
                let (head, args) = a.spine();
                if let (Term::Const(u), [Arg::Level(l)]) = (head, args.as_slice()) {
                    if &**u == U {
                        let ty = Term::constant(TY).capp(l.clone());
                        return Ok(Some(ty.apply_all(rest.iter().cloned())));
                    }
                }
                Ok(None)
            }
            // App l l' A B (Lam l'' l''' A' B' t) u ⟶ t u
            (
                APP,
                [Arg::Level(_), Arg::Level(_), Arg::Term(_), Arg::Term(_), Arg::Term(f), Arg::Term(u), rest @ ..],
            ) => {
                let f = self.whnf(f)?;
                let (head, args) = f.spine();
                if let (Term::Const(lam), [Arg::Level(_), Arg::Level(_), Arg::Term(_), Arg::Term(_), Arg::Term(t)]) =
                    (head, args.as_slice())
                {
                    if &**lam == LAM {
                        let r = t.clone().app(u.clone());
                        return Ok(Some(r.apply_all(rest.iter().cloned())));
                    }
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }

    /// Structural comparison of weak-head normal forms; level arguments are
    /// handed to `rel`, which decides them (or records them as constraints).
    pub fn conv_with(
        &self,
        a: &Term,
        b: &Term,
        rel: &mut dyn FnMut(&Level, &Level) -> bool,
    ) -> Result<bool, KernelError> {
        if a == b {
            return Ok(true);
        }
        let a = self.whnf(a)?;
        let b = self.whnf(b)?;
        if a == b {
            return Ok(true);
        }
        Ok(match (&a, &b) {
            (Term::Sort(x), Term::Sort(y)) => x == y,
            (Term::Pi(_, a1, b1), Term::Pi(_, a2, b2)) | (Term::CPi(_, a1, b1), Term::CPi(_, a2, b2)) => {
                self.conv_with(a1, a2, rel)? && self.conv_with(b1, b2, rel)?
            }
            (Term::Abs(_, t1), Term::Abs(_, t2)) | (Term::CAbs(_, t1), Term::CAbs(_, t2)) => {
                self.conv_with(t1, t2, rel)?
            }
            _ => {
                let (h1, args1) = a.spine();
                let (h2, args2) = b.spine();
                if args1.is_empty() || args1.len() != args2.len() {
                    return Ok(false);
                }
                let heads = match (h1, h2) {
                    (Term::Var(i), Term::Var(j)) => i == j,
                    (Term::Const(c), Term::Const(d)) => c == d,
                    _ => self.conv_with(h1, h2, rel)?,
                };
                if !heads {
                    return Ok(false);
                }
                for pair in args1.iter().zip(&args2) {
                    let ok = match pair {
                        (Arg::Term(x), Arg::Term(y)) => self.conv_with(x, y, rel)?,
                        (Arg::Level(x), Arg::Level(y)) => x == y || rel(x, y),
                        _ => false,
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    pub fn convert(&self, a: &Term, b: &Term) -> Result<bool, KernelError> {
        self.conv_with(a, b, &mut |x, y| levels_equal(x, y))
    }
}

pub fn whnf(t: &Term, sig: &Signature) -> Result<Term, KernelError> {
    Machine::new(sig, DEFAULT_FUEL).whnf(t)
}

pub fn convert(a: &Term, b: &Term, sig: &Signature) -> Result<bool, KernelError> {
    Machine::new(sig, DEFAULT_FUEL).convert(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_open_term;

    fn t(sig: &Signature, s: &str) -> Term {
        parse_open_term(s, sig).unwrap()
    }

    fn sig_with_c() -> Signature {
        let mut sig = Signature::upp();
        sig.push_unchecked(super::super::Entry::declaration("c", Term::constant("Ty").capp(Level::Zero)))
            .unwrap();
        sig
    }

    #[test]
    fn rewrite_rule_on_universes() {
        let sig = Signature::upp();
        assert_eq!(whnf(&t(&sig, "Tm (S 0) (U 0)"), &sig).unwrap(), t(&sig, "Ty 0"));
    }

    #[test]
    fn beta() {
        let sig = sig_with_c();
        assert_eq!(whnf(&t(&sig, "(x => x) c"), &sig).unwrap(), t(&sig, "c"));
    }

    #[test]
    fn application_of_lambda() {
        let sig = sig_with_c();
        let redex = t(&sig, "App 0 0 (U 0) (x => U 0) (Lam 0 0 (U 0) (x => U 0) (x => x)) c");
        assert_eq!(whnf(&redex, &sig).unwrap(), t(&sig, "c"));
    }

    #[test]
    fn stuck_terms_are_their_own_normal_form() {
        let sig = Signature::upp();
        let s = t(&sig, "Tm i (Ty j)");
        assert_eq!(whnf(&s, &sig).unwrap(), s);
    }

    #[test]
    fn conversion_modulo_levels() {
        let sig = Signature::upp();
        assert!(convert(&t(&sig, "Ty (S i ⊔ i ⊔ 0)"), &t(&sig, "Ty (S i)"), &sig).unwrap());
        assert!(!convert(&t(&sig, "Ty 0"), &t(&sig, "Ty 1"), &sig).unwrap());
        assert!(convert(&t(&sig, "Tm 1 (U 0)"), &t(&sig, "Ty 0"), &sig).unwrap());
    }

    #[test]
    fn fuel_bounds_divergence() {
        let sig = Signature::upp();
        // (x => x x) (x => x x) would loop forever.
        let omega = t(&sig, "(x => x x) (x => x x)");
        let m = Machine::new(&sig, 1000);
        assert_eq!(m.whnf(&omega), Err(KernelError::FuelExhausted(1000)));
    }

    #[test]
    fn delta_unfolds_definitions() {
        let mut sig = Signature::upp();
        let u0 = t(&sig, "U 0");
        sig.push_unchecked(super::super::Entry::definition("u0", t(&sig, "Ty 1"), u0.clone()))
            .unwrap();
        assert_eq!(whnf(&t(&sig, "u0"), &sig).unwrap(), u0);
        assert!(convert(&t(&sig, "Tm 1 u0"), &t(&sig, "Ty 0"), &sig).unwrap());
    }
}
