//! Level unification.
//!
//! Single equations are put into a canonical form and classified: either
//! they are trivial, have one of two mgu shapes, have no unifier at all, or
//! are solvable without admitting an mgu. Problems are solved by repeatedly
//! picking the first equation that has an mgu (or no unifier) and postponing
//! the others; when only mgu-less equations remain the problem is stuck.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;

use crate::level::{canonicalize, levels_equal, CanonicalLevel, FreshGen, Level, LevelSubst, LevelVar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Equation {
    pub lhs: Level,
    pub rhs: Level,
}

impl Equation {
    pub fn new(lhs: Level, rhs: Level) -> Self {
        Equation { lhs, rhs }
    }

    pub fn free_vars(&self) -> BTreeSet<LevelVar> {
        let mut vs = self.lhs.free_vars();
        vs.extend(self.rhs.free_vars());
        vs
    }

    /// Applies `theta` to both sides, keeping them in compact canonical form.
    pub fn subst(&self, theta: &LevelSubst) -> Equation {
        Equation::new(self.lhs.subst(theta).compact(), self.rhs.subst(theta).compact())
    }

    pub fn holds_under(&self, theta: &LevelSubst) -> bool {
        levels_equal(&self.lhs.subst(theta), &self.rhs.subst(theta))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≐ {}", self.lhs, self.rhs)
    }
}

/// An equation whose sides are canonical, whose shared variables carry equal
/// coefficients on both sides, and whose smallest coefficient is 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalEquation {
    lhs: CanonicalLevel,
    rhs: CanonicalLevel,
}

impl CanonicalEquation {
    /// Checks the invariants.
    pub fn new(lhs: CanonicalLevel, rhs: CanonicalLevel) -> Option<Self> {
        let shared_agree = lhs
            .vars()
            .iter()
            .all(|(v, n)| rhs.vars().get(v).is_none_or(|m| m == n));
        let min_zero = lhs.min_coeff().min(rhs.min_coeff()) == 0;
        (shared_agree && min_zero).then_some(CanonicalEquation { lhs, rhs })
    }

    pub fn lhs(&self) -> &CanonicalLevel {
        &self.lhs
    }

    pub fn rhs(&self) -> &CanonicalLevel {
        &self.rhs
    }

    pub fn to_equation(&self) -> Equation {
        Equation::new(self.lhs.render(), self.rhs.render())
    }
}

impl fmt::Display for CanonicalEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≐ {}", self.lhs, self.rhs)
    }
}

/// Canonical sides; then, for a variable shared with different coefficients,
/// the smaller occurrence is dropped (it never reaches the max once the other
/// side agrees); finally the global minimum coefficient is subtracted.
pub fn canonicalize_equation(e: &Equation) -> CanonicalEquation {
    let mut lhs = canonicalize(&e.lhs);
    let mut rhs = canonicalize(&e.rhs);
    let shared: Vec<(LevelVar, u32, u32)> = lhs
        .vars()
        .iter()
        .filter_map(|(v, &n)| rhs.vars().get(v).map(|&m| (v.clone(), n, m)))
        .collect();
    for (v, n, m) in shared {
        if n < m {
            lhs.remove_var(&v);
        } else if m < n {
            rhs.remove_var(&v);
        }
    }
    let k = lhs.min_coeff().min(rhs.min_coeff());
    lhs.lower(k);
    rhs.lower(k);
    CanonicalEquation { lhs, rhs }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Trivial,
    /// `n ⊔ var ≐ target` with `n` below the constant of `target`; the mgu is
    /// `var ↦ target`.
    MguCaseI { var: LevelVar, target: Level },
    /// Flat equation `0 ⊔ shared ⊔ left_only ≐ 0 ⊔ shared ⊔ right_only`.
    MguCaseII {
        shared: Vec<LevelVar>,
        left_only: Vec<LevelVar>,
        right_only: Vec<LevelVar>,
    },
    NoUnifier,
    SolvableNoMgu,
}

impl Classification {
    pub fn has_mgu(&self) -> bool {
        matches!(
            self,
            Classification::Trivial | Classification::MguCaseI { .. } | Classification::MguCaseII { .. }
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[LevelVar]| vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Classification::Trivial => f.write_str("trivial"),
            Classification::MguCaseI { var, target } => write!(f, "mgu {var} ↦ {target}"),
            Classification::MguCaseII {
                shared,
                left_only,
                right_only,
            } => write!(
                f,
                "flat mgu [{}] [{}] [{}]",
                list(shared),
                list(left_only),
                list(right_only)
            ),
            Classification::NoUnifier => f.write_str("no unifier"),
            Classification::SolvableNoMgu => f.write_str("solvable, no mgu"),
        }
    }
}

/// Decides the shape of a canonical equation: equal constants split into the
/// flat case (both 0) and the mgu-less case; otherwise the side with the
/// smaller constant decides by its number of variables and, if it has exactly
/// one, by that variable's coefficient.
pub fn classify(e: &CanonicalEquation) -> Classification {
    let (a, b) = (&e.lhs, &e.rhs);
    if a == b {
        return Classification::Trivial;
    }
    if a.constant() == b.constant() {
        if a.constant() != 0 {
            return Classification::SolvableNoMgu;
        }
        // Constants are 0, so every variable coefficient is 0 as well.
        let shared = a.vars().keys().filter(|v| b.vars().contains_key(*v)).cloned().collect();
        let left_only = a.vars().keys().filter(|v| !b.vars().contains_key(*v)).cloned().collect();
        let right_only = b.vars().keys().filter(|v| !a.vars().contains_key(*v)).cloned().collect();
        return Classification::MguCaseII {
            shared,
            left_only,
            right_only,
        };
    }
    let (small, large) = if a.constant() < b.constant() { (a, b) } else { (b, a) };
    let mut vars = small.vars().iter();
    match (vars.next(), vars.next()) {
        (None, _) => Classification::NoUnifier,
        (Some((v, 0)), None) => Classification::MguCaseI {
            var: v.clone(),
            target: large.render(),
        },
        _ => Classification::SolvableNoMgu,
    }
}

/// The mgu of a classified equation, with domain exactly the equation's
/// variables and a range made only of fresh variables.
///
/// Panics when the classification admits no mgu.
pub fn build_mgu(c: &Classification, fresh: &mut FreshGen) -> LevelSubst {
    match c {
        Classification::Trivial => LevelSubst::new(),
        Classification::MguCaseI { var, target } => {
            // `var ↦ target` composed with a renaming of every variable of the
            // equation, so that no domain variable reappears in the range.
            let mut vars = target.free_vars();
            vars.insert(var.clone());
            let renaming: LevelSubst = vars
                .into_iter()
                .map(|v| (v, Level::Var(fresh.fresh())))
                .collect();
            let mut sigma = renaming.clone();
            sigma.insert(var.clone(), target.subst(&renaming));
            sigma
        }
        Classification::MguCaseII {
            shared,
            left_only,
            right_only,
        } => {
            let mut grid = |rows: usize, cols: usize| -> Vec<Vec<Level>> {
                (0..rows)
                    .map(|_| (0..cols).map(|_| Level::Var(fresh.fresh())).collect())
                    .collect()
            };
            let x: Vec<Level> = grid(1, shared.len()).pop().unwrap_or_default();
            let y = grid(shared.len(), left_only.len());
            let z = grid(shared.len(), right_only.len());
            let v = grid(left_only.len(), right_only.len());
            let mut sigma = LevelSubst::new();
            for (k, i) in shared.iter().enumerate() {
                let parts = std::iter::once(x[k].clone())
                    .chain(y[k].iter().cloned())
                    .chain(z[k].iter().cloned());
                sigma.insert(i.clone(), Level::join(parts));
            }
            for (n, i) in left_only.iter().enumerate() {
                let parts = y.iter().map(|row| row[n].clone()).chain(v[n].iter().cloned());
                sigma.insert(i.clone(), Level::join(parts));
            }
            for (m, i) in right_only.iter().enumerate() {
                let parts = z.iter().map(|row| row[m].clone()).chain(v.iter().map(|row| row[m].clone()));
                sigma.insert(i.clone(), Level::join(parts));
            }
            sigma
        }
        Classification::NoUnifier | Classification::SolvableNoMgu => {
            panic!("build_mgu called on an equation without mgu ({c})")
        }
    }
}

/// A set of equations that remembers insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Problem {
    equations: IndexSet<Equation>,
}

impl Problem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false when the equation was already present.
    pub fn insert(&mut self, e: Equation) -> bool {
        self.equations.insert(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Equation> {
        self.equations.iter()
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<LevelVar> {
        self.equations.iter().flat_map(Equation::free_vars).collect()
    }

    pub fn subst(&self, theta: &LevelSubst) -> Problem {
        self.iter().map(|e| e.subst(theta)).collect()
    }
}

impl FromIterator<Equation> for Problem {
    fn from_iter<T: IntoIterator<Item = Equation>>(iter: T) -> Self {
        Problem {
            equations: iter.into_iter().collect(),
        }
    }
}

impl Extend<Equation> for Problem {
    fn extend<T: IntoIterator<Item = Equation>>(&mut self, iter: T) {
        self.equations.extend(iter)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub fn is_unifier(theta: &LevelSubst, p: &Problem) -> bool {
    p.iter().all(|e| e.holds_under(theta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Configuration {
    Bottom,
    Active { pending: Problem, solution: LevelSubst },
}

impl Configuration {
    /// The solution is idempotent and its domain avoids the pending variables.
    pub fn invariants_hold(&self) -> bool {
        match self {
            Configuration::Bottom => true,
            Configuration::Active { pending, solution } => {
                let fv = pending.free_vars();
                solution.is_idempotent() && solution.domain().all(|v| !fv.contains(v))
            }
        }
    }

    /// Variables of the pending problem and of the solution (domain and range).
    pub fn free_vars(&self) -> BTreeSet<LevelVar> {
        match self {
            Configuration::Bottom => BTreeSet::new(),
            Configuration::Active { pending, solution } => {
                let mut vs = pending.free_vars();
                vs.extend(solution.domain().cloned());
                vs.extend(solution.range_vars());
                vs
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnifyOutcome {
    Success(LevelSubst),
    NoSolution,
    Stuck { remaining: Problem, partial: LevelSubst },
    /// A verified unifier with no generality claim.
    HeuristicSolution(LevelSubst),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct UnifyOptions {
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Solve { eq: Equation, sigma: LevelSubst },
    Fail { eq: Equation },
    Stuck { remaining: usize },
    Heuristic { rung: u8, sigma: LevelSubst },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Solve { eq, sigma } => write!(f, "SOLVE {eq} => {sigma}"),
            TraceEvent::Fail { eq } => write!(f, "FAIL {eq}"),
            TraceEvent::Stuck { remaining } => write!(f, "STUCK {remaining} remaining"),
            TraceEvent::Heuristic { rung, sigma } => write!(f, "HEURISTIC {rung} {sigma}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Solved,
    Failed,
    /// Nothing pending.
    Done,
    /// Pending equations remain but none has an mgu or lacks a unifier.
    Blocked,
}

/// Selection order among the equations a rule applies to: failures and
/// trivial equations first, then by how many fresh variables the mgu needs.
/// Solving wide flat equations before the narrow ones they depend on makes
/// the case II construction blow up multiplicatively.
fn cost(c: &Classification) -> usize {
    match c {
        Classification::NoUnifier | Classification::Trivial => 0,
        Classification::MguCaseI { target, .. } => 1 + target.free_vars().len(),
        Classification::MguCaseII {
            shared,
            left_only,
            right_only,
        } => 1 + shared.len() * (1 + left_only.len() + right_only.len()) + left_only.len() * right_only.len(),
        Classification::SolvableNoMgu => usize::MAX,
    }
}

/// Small-step driver over a [`Configuration`].
pub struct Solver<'g> {
    config: Configuration,
    fresh: &'g mut FreshGen,
    trace: Vec<TraceEvent>,
}

impl<'g> Solver<'g> {
    pub fn new(p: &Problem, fresh: &'g mut FreshGen) -> Self {
        Solver {
            config: Configuration::Active {
                pending: p.clone(),
                solution: LevelSubst::new(),
            },
            fresh,
            trace: Vec::new(),
        }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn step(&mut self) -> Step {
        let Configuration::Active { pending, solution } = &self.config else {
            return Step::Failed;
        };
        if pending.is_empty() {
            return Step::Done;
        }
        let found = pending
            .iter()
            .enumerate()
            .filter_map(|(k, e)| {
                let c = classify(&canonicalize_equation(e));
                (c.has_mgu() || c == Classification::NoUnifier).then_some((k, c))
            })
            .min_by_key(|(k, c)| (cost(c), *k));
        let Some((k, c)) = found else {
            return Step::Blocked;
        };
        let eq = pending.equations[k].clone();
        if c == Classification::NoUnifier {
            self.trace.push(TraceEvent::Fail { eq });
            self.config = Configuration::Bottom;
            return Step::Failed;
        }
        let sigma = build_mgu(&c, self.fresh);
        let rest: Problem = pending
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, e)| e.subst(&sigma))
            .collect();
        let mut next = solution.then(&sigma);
        for (v, l) in sigma.iter() {
            next.insert(v.clone(), l.clone());
        }
        self.trace.push(TraceEvent::Solve { eq, sigma });
        self.config = Configuration::Active {
            pending: rest,
            solution: next,
        };
        Step::Solved
    }
}

pub fn unify(p: &Problem, fresh: &mut FreshGen, opts: UnifyOptions) -> UnifyOutcome {
    unify_traced(p, fresh, opts).0
}

pub fn unify_traced(p: &Problem, fresh: &mut FreshGen, opts: UnifyOptions) -> (UnifyOutcome, Vec<TraceEvent>) {
    let mut solver = Solver::new(p, fresh);
    let step = loop {
        match solver.step() {
            Step::Solved => continue,
            other => break other,
        }
    };
    let Solver { config, fresh, mut trace } = solver;
    let fv = p.free_vars();
    let outcome = match (step, config) {
        (Step::Failed, _) | (_, Configuration::Bottom) => UnifyOutcome::NoSolution,
        (Step::Done, Configuration::Active { solution, .. }) => {
            UnifyOutcome::Success(solution.restrict(|v| fv.contains(v)))
        }
        (_, Configuration::Active { pending, solution }) => {
            trace.push(TraceEvent::Stuck { remaining: pending.len() });
            if opts.heuristic {
                match heuristic_traced(&pending, &solution, fresh, &mut trace) {
                    UnifyOutcome::HeuristicSolution(theta) if is_unifier(&theta, p) => {
                        UnifyOutcome::HeuristicSolution(theta.restrict(|v| fv.contains(v)))
                    }
                    _ => UnifyOutcome::Stuck {
                        remaining: pending,
                        partial: solution,
                    },
                }
            } else {
                UnifyOutcome::Stuck {
                    remaining: pending,
                    partial: solution,
                }
            }
        }
    };
    (outcome, trace)
}

/// Tries a fixed ladder of candidate substitutions on a stuck problem:
/// (1) every variable to 0; (2) per equation, each variable occurring on one
/// side only to the join of the other side's variables; (3) every variable to
/// one shared fresh variable; (4) per equation, the variables found on one
/// side only to the whole other side. The first candidate passing [`is_unifier`] is
/// combined with `partial` and returned.
pub fn heuristic_step(remaining: &Problem, partial: &LevelSubst, fresh: &mut FreshGen) -> UnifyOutcome {
    heuristic_traced(remaining, partial, fresh, &mut Vec::new())
}

fn heuristic_traced(
    remaining: &Problem,
    partial: &LevelSubst,
    fresh: &mut FreshGen,
    trace: &mut Vec<TraceEvent>,
) -> UnifyOutcome {
    let fv = remaining.free_vars();
    let mut candidates: Vec<(u8, LevelSubst)> = Vec::new();
    candidates.push((1, fv.iter().map(|v| (v.clone(), Level::Zero)).collect()));
    for e in remaining.iter() {
        let (l, r) = (e.lhs.free_vars(), e.rhs.free_vars());
        let join = |side: &BTreeSet<LevelVar>| Level::join(side.iter().cloned().map(Level::Var));
        let sigma: LevelSubst = l
            .difference(&r)
            .map(|v| (v.clone(), join(&r)))
            .chain(r.difference(&l).map(|v| (v.clone(), join(&l))))
            .collect();
        candidates.push((2, sigma));
    }
    let shared = Level::Var(fresh.fresh());
    candidates.push((3, fv.iter().map(|v| (v.clone(), shared.clone())).collect()));
    for e in remaining.iter() {
        let (l, r) = (e.lhs.free_vars(), e.rhs.free_vars());
        candidates.push((4, r.difference(&l).map(|v| (v.clone(), e.lhs.clone())).collect()));
        candidates.push((4, l.difference(&r).map(|v| (v.clone(), e.rhs.clone())).collect()));
    }

    for (rung, tau) in candidates {
        if tau.is_empty() || !is_unifier(&tau, remaining) {
            continue;
        }
        let mut theta = partial.then(&tau);
        for (v, l) in tau.iter() {
            theta.insert(v.clone(), l.clone());
        }
        trace.push(TraceEvent::Heuristic { rung, sigma: tau });
        return UnifyOutcome::HeuristicSolution(theta);
    }
    UnifyOutcome::Stuck {
        remaining: remaining.clone(),
        partial: partial.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(s: &str) -> Level {
        s.parse().unwrap()
    }

    fn eq(l: &str, r: &str) -> Equation {
        Equation::new(lv(l), lv(r))
    }

    fn v(s: &str) -> LevelVar {
        LevelVar::named(s)
    }

    fn problem(eqs: &[(&str, &str)]) -> Problem {
        eqs.iter().map(|(l, r)| eq(l, r)).collect()
    }

    fn subst(pairs: &[(&str, &str)]) -> LevelSubst {
        pairs.iter().map(|(x, l)| (v(x), lv(l))).collect()
    }

    #[test]
    fn canonical_equations() {
        let c = canonicalize_equation(&eq("i ⊔ 1+(i ⊔ 1+j)", "j ⊔ 2+i"));
        assert_eq!(c.to_string(), "0 ⊔ j ≐ 0 ⊔ i");
        assert_eq!(canonicalize_equation(&eq("i", "i")).to_string(), "0 ⊔ i ≐ 0 ⊔ i");
        let c = canonicalize_equation(&eq("i ⊔ 1+(j ⊔ 2)", "1+(2 ⊔ i ⊔ j)"));
        assert_eq!(c.to_string(), "2 ⊔ j ≐ 2 ⊔ i ⊔ j");
    }

    #[test]
    fn canonical_equation_invariants_are_checked() {
        let c = canonicalize_equation(&eq("1+i", "2+j"));
        assert!(CanonicalEquation::new(c.lhs().clone(), c.rhs().clone()).is_some());
        assert!(CanonicalEquation::new(canonicalize(&lv("1+i")), canonicalize(&lv("2+j"))).is_none());
    }

    #[test]
    fn classifications() {
        let cl = |l, r| classify(&canonicalize_equation(&eq(l, r)));
        assert_eq!(
            cl("1 ⊔ j", "2 ⊔ i ⊔ j"),
            Classification::MguCaseI {
                var: v("j"),
                target: lv("2 ⊔ i ⊔ j")
            }
        );
        assert_eq!(cl("0", "1 ⊔ i ⊔ j"), Classification::NoUnifier);
        assert_eq!(cl("2 ⊔ j", "2 ⊔ i ⊔ j"), Classification::SolvableNoMgu);
        assert_eq!(
            cl("0 ⊔ i0 ⊔ i1", "0 ⊔ i0 ⊔ i2"),
            Classification::MguCaseII {
                shared: vec![v("i0")],
                left_only: vec![v("i1")],
                right_only: vec![v("i2")]
            }
        );
        assert_eq!(cl("S i", "1 ⊔ S i ⊔ i"), Classification::Trivial);
        // Symmetric orientation of case I.
        assert_eq!(
            cl("2+k", "j"),
            Classification::MguCaseI {
                var: v("j"),
                target: lv("2 ⊔ 2+k")
            }
        );
    }

    #[test]
    fn case_two_mgu_shape() {
        let mut fresh = FreshGen::new("f");
        let c = Classification::MguCaseII {
            shared: vec![v("i0")],
            left_only: vec![v("i1")],
            right_only: vec![v("i2")],
        };
        let sigma = build_mgu(&c, &mut fresh);
        // x = f1, y = f2, z = f3, v = f4
        assert_eq!(sigma, subst(&[("i0", "f1 ⊔ f2 ⊔ f3"), ("i1", "f2 ⊔ f4"), ("i2", "f3 ⊔ f4")]));
        let empty = Classification::MguCaseII {
            shared: vec![],
            left_only: vec![],
            right_only: vec![v("i2")],
        };
        assert_eq!(build_mgu(&empty, &mut fresh), subst(&[("i2", "0")]));
    }

    #[test]
    fn case_one_mgu_renames_every_variable() {
        let mut fresh = FreshGen::new("f");
        let e = eq("1 ⊔ j", "2 ⊔ i ⊔ j");
        let c = classify(&canonicalize_equation(&e));
        let sigma = build_mgu(&c, &mut fresh);
        assert_eq!(sigma, subst(&[("i", "f1"), ("j", "2 ⊔ f1 ⊔ f2")]));
        assert!(e.holds_under(&sigma));
    }

    #[test]
    fn running_example_problem() {
        let p = problem(&[("S i1", "i2"), ("i1", "i3"), ("i1", "i4")]);
        let UnifyOutcome::Success(theta) = unify(&p, &mut FreshGen::for_unifier(), UnifyOptions::default()) else {
            panic!("expected success");
        };
        assert!(is_unifier(&theta, &p));
        let at = |x: &str| theta.get(&v(x)).unwrap().clone();
        assert!(levels_equal(&at("i1"), &at("i4")));
        assert!(levels_equal(&at("i3"), &at("i4")));
        assert!(levels_equal(&at("i2"), &at("i4").succ()));
        assert_eq!(at("i4").free_vars().len(), 1);
    }

    #[test]
    fn stuck_and_failing_problems() {
        let opts = UnifyOptions::default();
        let p = problem(&[("S i1", "i2 ⊔ i3")]);
        assert!(matches!(unify(&p, &mut FreshGen::for_unifier(), opts), UnifyOutcome::Stuck { .. }));
        let p = problem(&[("1+i0", "i2 ⊔ 1+i1"), ("1+i0", "i1 ⊔ 1+i2")]);
        let UnifyOutcome::Stuck { remaining, .. } = unify(&p, &mut FreshGen::for_unifier(), opts) else {
            panic!("expected stuck");
        };
        assert_eq!(remaining, p);
        let p = problem(&[("0", "1 ⊔ i")]);
        assert_eq!(unify(&p, &mut FreshGen::for_unifier(), opts), UnifyOutcome::NoSolution);
    }

    #[test]
    fn unifier_checks() {
        assert!(is_unifier(&subst(&[("i", "0")]), &problem(&[("i", "0")])));
        let p = problem(&[("1+i0", "i2 ⊔ 1+i1"), ("1+i0", "i1 ⊔ 1+i2")]);
        assert!(is_unifier(&subst(&[("i1", "0 ⊔ i2"), ("i0", "0 ⊔ i2")]), &p));
        assert!(!is_unifier(&LevelSubst::new(), &problem(&[("i", "S i")])));
    }

    #[test]
    fn heuristic_ladder() {
        let mut fresh = FreshGen::for_unifier();
        let p = problem(&[("S i", "j ⊔ S i")]);
        assert_eq!(
            heuristic_step(&p, &LevelSubst::new(), &mut fresh),
            UnifyOutcome::HeuristicSolution(subst(&[("i", "0"), ("j", "0")]))
        );
        let p = problem(&[("S i1", "i2 ⊔ i3")]);
        match unify(&p, &mut fresh, UnifyOptions { heuristic: true }) {
            UnifyOutcome::HeuristicSolution(theta) => assert!(is_unifier(&theta, &p)),
            UnifyOutcome::Stuck { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
        // Rungs 1 and 2 fail here; rung 3 collapses every variable into one.
        let p = problem(&[("1+i0", "i2 ⊔ 1+i1"), ("1+i0", "i1 ⊔ 1+i2")]);
        let UnifyOutcome::HeuristicSolution(theta) = unify(&p, &mut fresh, UnifyOptions { heuristic: true }) else {
            panic!("expected a heuristic answer");
        };
        assert!(is_unifier(&theta, &p));
    }

    #[test]
    fn trace_lines() {
        // A hopeless equation is reported before anything else is solved.
        let p = problem(&[("i", "j"), ("0", "1 ⊔ k")]);
        let (out, trace) = unify_traced(&p, &mut FreshGen::new("f"), UnifyOptions::default());
        assert_eq!(out, UnifyOutcome::NoSolution);
        let lines: Vec<String> = trace.iter().map(ToString::to_string).collect();
        assert_eq!(lines, ["FAIL 0 ≐ 1 ⊔ k"]);
        // The failure only shows up once the flat equation has forced `j` to 0.
        let p = problem(&[("j", "S k"), ("i ⊔ j", "0")]);
        let (out, trace) = unify_traced(&p, &mut FreshGen::new("f"), UnifyOptions::default());
        assert_eq!(out, UnifyOutcome::NoSolution);
        let lines: Vec<String> = trace.iter().map(ToString::to_string).collect();
        assert_eq!(lines, ["SOLVE i ⊔ j ≐ 0 => {i ↦ 0, j ↦ 0}", "FAIL 0 ≐ 1+k"]);
    }

    #[test]
    fn configuration_invariants_after_each_step() {
        let p = problem(&[("S i1", "i2"), ("i1 ⊔ i5", "i3"), ("i3", "i4 ⊔ i1"), ("2 ⊔ i4", "1+i6")]);
        let mut fresh = FreshGen::for_unifier();
        let mut solver = Solver::new(&p, &mut fresh);
        let mut seen = solver.config().free_vars();
        while solver.step() == Step::Solved {
            assert!(solver.config().invariants_hold());
            let now = solver.config().free_vars();
            assert!(seen.is_subset(&now));
            seen = now;
        }
    }
}
