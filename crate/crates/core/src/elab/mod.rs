//! Elaboration of sort-annotated input entries into universe-polymorphic
//! output entries.
//!
//! Each entry goes through four stages:
//!
//! 1. [`erase_entry`] replaces every sort tag by a fresh level variable and
//!    gives each local constant fresh level arguments for its parameters;
//! 2. the kernel's bidirectional checker runs on the erased type (against
//!    `Type`) and body (against the type), recording each level mismatch met
//!    by conversion as an equation instead of failing;
//! 3. the equations, together with any user constraints, go to
//!    [`unify`](crate::unify::unify);
//! 4. [`generalize`] applies the solution, abstracts the type's remaining
//!    variables as level parameters and sets body-only variables to 0.
//!
//! The result is re-checked by the kernel before it is returned.

mod input;
pub mod pts;

use std::cell::RefCell;
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

pub use input::{Framework, InputEntry, InputTerm};
pub use pts::{Pts, PtsError};

use crate::kernel::names::LVL;
use crate::kernel::{Checker, Context, Entry, KernelError, Name, Signature, Sort, Term, DEFAULT_FUEL};
use crate::level::{FreshGen, Level, LevelSubst, LevelVar};
use crate::syntax::print_term;
use crate::unify::{unify_traced, Equation, Problem, TraceEvent, UnifyOptions, UnifyOutcome};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ElabError {
    #[error("unknown constant `{0}`")]
    UnknownConstant(Name),
    #[error("user constraint mentions `{0}`, which the erased entry does not contain")]
    UnknownLevelVar(LevelVar),
    #[error("ill-formed term ({rule}) at {path}: {message}")]
    Malformed {
        rule: &'static str,
        path: String,
        message: String,
    },
    #[error("conversion failure at {path}: {message}")]
    Conv { path: String, message: String },
    #[error("reduction ran out of fuel after {0} head steps")]
    Fuel(u64),
    #[error("`{0}` is already declared")]
    Duplicate(Name),
    #[error("the level constraints have no solution: `{culprit}` has no unifier")]
    UnifyFailed { culprit: String, trace: Vec<TraceEvent> },
    #[error("unification is stuck on {remaining}")]
    UnifyStuck {
        remaining: Problem,
        partial: LevelSubst,
        trace: Vec<TraceEvent>,
    },
    #[error("elaborated entry fails the kernel check ({0}); this is a bug")]
    PostCheckFailed(KernelError),
}

impl ElabError {
    /// Machine-readable failure class.
    pub fn code(&self) -> &'static str {
        match self {
            ElabError::UnknownConstant(_)
            | ElabError::UnknownLevelVar(_)
            | ElabError::Malformed { .. }
            | ElabError::Fuel(_)
            | ElabError::Duplicate(_) => "ELAB",
            ElabError::Conv { .. } => "CONV",
            ElabError::UnifyFailed { .. } => "NO_SOLUTION",
            ElabError::UnifyStuck { .. } => "STUCK",
            ElabError::PostCheckFailed(_) => "POSTCHECK_BUG",
        }
    }

    /// Unifier steps taken before a unification failure.
    pub fn trace(&self) -> &[TraceEvent] {
        match self {
            ElabError::UnifyFailed { trace, .. } | ElabError::UnifyStuck { trace, .. } => trace,
            _ => &[],
        }
    }
}

impl From<KernelError> for ElabError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::TypeError {
                rule: "Conv",
                path,
                message,
            } => ElabError::Conv { path, message },
            KernelError::TypeError { rule, path, message } => ElabError::Malformed { rule, path, message },
            KernelError::FuelExhausted(n) => ElabError::Fuel(n),
            KernelError::DuplicateName(n) => ElabError::Duplicate(n),
        }
    }
}

/// Level equations in emission order, each with the place it came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    items: IndexMap<Equation, String>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps the first origin of a repeated equation.
    pub fn insert(&mut self, eq: Equation, origin: impl Into<String>) {
        self.items.entry(eq).or_insert_with(|| origin.into());
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Equation, &str)> {
        self.items.iter().map(|(e, o)| (e, o.as_str()))
    }

    pub fn origin(&self, eq: &Equation) -> Option<&str> {
        self.items.get(eq).map(String::as_str)
    }

    pub fn problem(&self) -> Problem {
        self.items.keys().cloned().collect()
    }

    pub fn extend(&mut self, other: ConstraintSet) {
        for (e, o) in other.items {
            self.insert(e, o);
        }
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, o) in &self.items {
            writeln!(f, "{e}    [{o}]")?;
        }
        Ok(())
    }
}

/// Replaces sort tags by fresh level variables and supplies local constants
/// with fresh level arguments.
pub fn erase(t: &InputTerm, sig: &Signature, fresh: &mut FreshGen) -> Result<Term, ElabError> {
    Ok(match t {
        InputTerm::Var(k) => Term::Var(*k),
        InputTerm::Const(c) => {
            let e = sig.get(c).ok_or_else(|| ElabError::UnknownConstant(c.clone()))?;
            (0..e.level_arity()).fold(Term::Const(c.clone()), |t, _| t.capp(Level::Var(fresh.fresh())))
        }
        InputTerm::Framework(f, _) => {
            (0..f.tag_count()).fold(Term::constant(f.name()), |t, _| t.capp(Level::Var(fresh.fresh())))
        }
        InputTerm::Sort(s) => Term::Sort(*s),
        InputTerm::Pi(x, a, b) => Term::Pi(x.clone(), erase(a, sig, fresh)?.into(), erase(b, sig, fresh)?.into()),
        InputTerm::Abs(x, b) => Term::Abs(x.clone(), erase(b, sig, fresh)?.into()),
        InputTerm::App(f, a) => erase(f, sig, fresh)?.app(erase(a, sig, fresh)?),
    })
}

/// An entry after erasure, before any constraint solving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasedEntry {
    pub name: Name,
    pub ty: Term,
    pub body: Option<Term>,
    /// Inserted variables in order: `i1`, `i2`, … through the type, then
    /// the body.
    pub vars: Vec<LevelVar>,
}

impl fmt::Display for ErasedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.name, print_term(&self.ty, &[]))?;
        if let Some(b) = &self.body {
            write!(f, "\n  := {}", print_term(b, &[]))?;
        }
        f.write_str(".")
    }
}

pub fn erase_entry(e: &InputEntry, sig: &Signature) -> Result<ErasedEntry, ElabError> {
    let mut fresh = FreshGen::new("i");
    let ty = erase(&e.ty, sig, &mut fresh)?;
    let body = e.body.as_ref().map(|b| erase(b, sig, &mut fresh)).transpose()?;
    let vars = (1..=fresh.issued()).map(|n| LevelVar::named(&format!("i{n}"))).collect();
    Ok(ErasedEntry {
        name: e.name.clone(),
        ty,
        body,
        vars,
    })
}

fn recorded_into(checker: &Checker<'_>, out: &mut ConstraintSet) {
    for (l, r, at) in checker.take_recorded() {
        out.insert(Equation::new(l, r), at);
    }
}

/// Infers the type of a schematic term, collecting level equations.
/// Free named level variables are in scope.
pub fn elab_infer(ctx: &Context, t: &Term, sig: &Signature, fuel: u64) -> Result<(Term, ConstraintSet), ElabError> {
    let checker = Checker::collecting(sig, fuel);
    let ty = checker.infer(&mut ctx.opened(), t, &mut Vec::new())?;
    let mut cs = ConstraintSet::new();
    recorded_into(&checker, &mut cs);
    Ok((ty, cs))
}

/// Checks a schematic term against `expected`, collecting level equations.
pub fn elab_check(
    ctx: &Context,
    t: &Term,
    expected: &Term,
    sig: &Signature,
    fuel: u64,
) -> Result<ConstraintSet, ElabError> {
    check_at(ctx, t, expected, sig, fuel, "root")
}

fn check_at(
    ctx: &Context,
    t: &Term,
    expected: &Term,
    sig: &Signature,
    fuel: u64,
    root: &'static str,
) -> Result<ConstraintSet, ElabError> {
    let checker = Checker::collecting(sig, fuel);
    checker.check(&mut ctx.opened(), t, expected, &mut vec![root])?;
    let mut cs = ConstraintSet::new();
    recorded_into(&checker, &mut cs);
    Ok(cs)
}

/// The level equations under which `a` and `b` are convertible.
pub fn elab_convert(a: &Term, b: &Term, sig: &Signature) -> Result<ConstraintSet, ElabError> {
    let checker = Checker::collecting(sig, DEFAULT_FUEL);
    if !checker.conv(a, b, &Vec::new())? {
        return Err(ElabError::Conv {
            path: "root".into(),
            message: format!("`{a}` and `{b}` differ beyond their levels"),
        });
    }
    let mut cs = ConstraintSet::new();
    recorded_into(&checker, &mut cs);
    Ok(cs)
}

/// Display names of level parameters: `i j k l m n`, then `i_6`, `i_7`, ….
pub fn param_name(n: usize) -> String {
    const FIRST: [&str; 6] = ["i", "j", "k", "l", "m", "n"];
    FIRST.get(n).map_or_else(|| format!("i_{n}"), |s| (*s).to_owned())
}

/// Variables that occur in exactly the same levels with the same
/// coefficients, mapped onto the first of them. Such a group only ever
/// contributes the join of its members, so one parameter loses nothing.
fn joint_vars(params: &[LevelVar], terms: &[&Term]) -> LevelSubst {
    let levels = RefCell::new(Vec::new());
    for t in terms {
        t.map_levels(&|l| {
            levels.borrow_mut().push(l.canonical());
            l.clone()
        });
    }
    let levels = levels.into_inner();
    let occurrences = |v: &LevelVar| -> Vec<(usize, u32)> {
        levels
            .iter()
            .enumerate()
            .filter_map(|(at, c)| c.vars().get(v).map(|n| (at, *n)))
            .collect()
    };
    let mut seen: Vec<(Vec<(usize, u32)>, &LevelVar)> = Vec::new();
    let mut merge = LevelSubst::new();
    for v in params {
        let occ = occurrences(v);
        match seen.iter().find(|(o, _)| *o == occ) {
            Some((_, rep)) => merge.insert(v.clone(), Level::Var((*rep).clone())),
            None => seen.push((occ, v)),
        }
    }
    merge
}

/// Applies `theta`, then abstracts the free level variables of the type in
/// first-occurrence order and sets those occurring only in the body to 0.
/// Variables that always occur side by side (`i ⊔ j`, `1+i ⊔ 1+j`) become a
/// single parameter.
pub fn generalize(name: &str, ty: &Term, body: Option<&Term>, theta: &LevelSubst) -> Entry {
    let tidy = |t: &Term| t.subst_levels(theta).map_levels(&Level::compact);
    let mut ty = tidy(ty);
    let params = ty.level_vars_in_order();
    let mut body = body.map(|b| {
        let b = tidy(b);
        let zero: LevelSubst = b
            .level_vars_in_order()
            .into_iter()
            .filter(|v| !params.contains(v))
            .map(|v| (v, Level::Zero))
            .collect();
        b.subst_levels(&zero).map_levels(&Level::compact)
    });
    let merge = joint_vars(&params, &[Some(&ty), body.as_ref()].into_iter().flatten().collect::<Vec<_>>());
    if !merge.is_empty() {
        ty = ty.subst_levels(&merge).map_levels(&Level::compact);
        body = body.map(|b| b.subst_levels(&merge).map_levels(&Level::compact));
    }
    let params = ty.level_vars_in_order();
    for (n, v) in params.iter().enumerate().rev() {
        let x = param_name(n);
        ty = Term::cpi(&x, Term::constant(LVL), ty.abstract_level(v));
        body = body.map(|b| Term::cabs(&x, b.abstract_level(v)));
    }
    match body {
        None => Entry::declaration(name, ty),
        Some(b) => Entry::definition(name, ty, b),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ElabOptions {
    /// Let the unifier fall back to heuristic (possibly non-general)
    /// solutions when it gets stuck.
    pub heuristic: bool,
    pub fuel: u64,
}

impl Default for ElabOptions {
    fn default() -> Self {
        ElabOptions {
            heuristic: false,
            fuel: DEFAULT_FUEL,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ElabEntryResult {
    pub entry: Entry,
    pub erased: ErasedEntry,
    pub constraints: ConstraintSet,
    /// The unifier, restricted to the constrained variables.
    pub solved: LevelSubst,
    /// Whether the unifier came from the heuristic fallback.
    pub heuristic: bool,
    pub trace: Vec<TraceEvent>,
}

/// Elaborates one entry against the output signature built so far.
/// `user` equations may mention the variables of the erased entry.
pub fn elaborate_entry(
    sig: &Signature,
    input: &InputEntry,
    user: &[Equation],
    opts: ElabOptions,
) -> Result<ElabEntryResult, ElabError> {
    if sig.contains(&input.name) {
        return Err(ElabError::Duplicate(input.name.clone()));
    }
    let erased = erase_entry(input, sig)?;
    let ctx = Context::new();
    let mut constraints = check_at(&ctx, &erased.ty, &Term::Sort(Sort::Type), sig, opts.fuel, "type")?;
    if let Some(b) = &erased.body {
        constraints.extend(check_at(&ctx, b, &erased.ty, sig, opts.fuel, "body")?);
    }
    for eq in user {
        if let Some(v) = eq.free_vars().into_iter().find(|v| !erased.vars.contains(v)) {
            return Err(ElabError::UnknownLevelVar(v));
        }
        constraints.insert(eq.clone(), "user");
    }

    let problem = constraints.problem();
    let (outcome, trace) = unify_traced(&problem, &mut FreshGen::for_unifier(), UnifyOptions { heuristic: opts.heuristic });
    let (solved, heuristic) = match outcome {
        UnifyOutcome::Success(theta) => (theta, false),
        UnifyOutcome::HeuristicSolution(theta) => (theta, true),
        UnifyOutcome::NoSolution => {
            let culprit = trace
                .iter()
                .find_map(|t| match t {
                    TraceEvent::Fail { eq } => Some(eq.to_string()),
                    _ => None,
                })
                .unwrap_or_else(|| problem.to_string());
            return Err(ElabError::UnifyFailed { culprit, trace });
        }
        UnifyOutcome::Stuck { remaining, partial } => {
            return Err(ElabError::UnifyStuck {
                remaining,
                partial,
                trace,
            })
        }
    };

    let entry = generalize(&erased.name, &erased.ty, erased.body.as_ref(), &solved);
    sig.clone()
        .check_and_push(entry.clone(), opts.fuel)
        .map_err(ElabError::PostCheckFailed)?;
    Ok(ElabEntryResult {
        entry,
        erased,
        constraints,
        solved,
        heuristic,
        trace,
    })
}

/// Elaborates entries in order, extending `sig`. Stops at the first failure,
/// since later entries depend on the level parameters of earlier ones.
#[allow(clippy::result_large_err)]
pub fn elaborate_all(
    sig: &Signature,
    inputs: &[InputEntry],
    user: &dyn Fn(&str) -> Vec<Equation>,
    opts: ElabOptions,
) -> Result<(Signature, Vec<ElabEntryResult>), (Name, ElabError)> {
    let mut sig = sig.clone();
    let mut results = Vec::new();
    for input in inputs {
        let r = elaborate_entry(&sig, input, &user(&input.name), opts).map_err(|e| (input.name.clone(), e))?;
        sig.push_unchecked(r.entry.clone())
            .map_err(|e| (input.name.clone(), ElabError::from(e)))?;
        results.push(r);
    }
    Ok((sig, results))
}
