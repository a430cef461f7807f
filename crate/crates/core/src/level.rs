//! Universe levels: syntax, substitution, canonical forms and the
//! natural-number interpretation that serves as the testing oracle.
//!
//! A level is built from variables, `0`, successor and binary max. Two levels
//! are equivalent when they agree under every valuation of their variables
//! into the naturals, and every level has a unique canonical form
//! `p ⊔ n₁+i₁ ⊔ … ⊔ nₘ+iₘ` with every `nₖ ≤ p`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// A level variable.
///
/// `Named` variables are free (elaboration metavariables, user-visible
/// parameters). `Bound` variables are de Bruijn indices pointing at an
/// enclosing confined binder and only make sense inside a term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LevelVar {
    Named(Arc<str>),
    Bound(u32),
}

impl LevelVar {
    pub fn named(name: &str) -> Self {
        LevelVar::Named(Arc::from(name))
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            LevelVar::Named(n) => Some(n),
            LevelVar::Bound(_) => None,
        }
    }
}

/// Splits `u$12` into (`u$`, Some(12)) so that `i2 < i10`.
fn natural_key(s: &str) -> (&str, Option<u64>) {
    let digits = s.bytes().rev().take_while(u8::is_ascii_digit).count();
    let (prefix, suffix) = s.split_at(s.len() - digits);
    (prefix, suffix.parse().ok())
}

impl Ord for LevelVar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LevelVar::Named(a), LevelVar::Named(b)) => natural_key(a)
                .cmp(&natural_key(b))
                .then_with(|| a.cmp(b)),
            (LevelVar::Named(_), LevelVar::Bound(_)) => Ordering::Less,
            (LevelVar::Bound(_), LevelVar::Named(_)) => Ordering::Greater,
            (LevelVar::Bound(a), LevelVar::Bound(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for LevelVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LevelVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelVar::Named(n) => f.write_str(n),
            LevelVar::Bound(k) => write!(f, "#{k}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Level {
    Var(LevelVar),
    Zero,
    Succ(Box<Level>),
    Max(Box<Level>, Box<Level>),
}

impl Level {
    pub fn var(name: &str) -> Level {
        Level::Var(LevelVar::named(name))
    }

    /// `Succ^n(Zero)`.
    pub fn nat(n: u32) -> Level {
        Level::Zero.plus(n)
    }

    pub fn succ(self) -> Level {
        Level::Succ(Box::new(self))
    }

    /// `Succ^n(self)`.
    pub fn plus(self, n: u32) -> Level {
        (0..n).fold(self, |l, _| l.succ())
    }

    pub fn max(self, other: Level) -> Level {
        Level::Max(Box::new(self), Box::new(other))
    }

    /// Left-associated join; the empty join is `0`.
    pub fn join(levels: impl IntoIterator<Item = Level>) -> Level {
        let mut it = levels.into_iter();
        match it.next() {
            None => Level::Zero,
            Some(first) => it.fold(first, Level::max),
        }
    }

    /// Peels successors: `n + base` where `base` is not a successor.
    pub fn split_succ(&self) -> (u32, &Level) {
        let mut n = 0;
        let mut l = self;
        while let Level::Succ(inner) = l {
            n += 1;
            l = inner;
        }
        (n, l)
    }

    pub fn free_vars(&self) -> BTreeSet<LevelVar> {
        let mut out = BTreeSet::new();
        self.for_each_var(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(&LevelVar)) {
        match self {
            Level::Var(v) => f(v),
            Level::Zero => {}
            Level::Succ(l) => l.for_each_var(f),
            Level::Max(a, b) => {
                a.for_each_var(f);
                b.for_each_var(f);
            }
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(&LevelVar) -> Level) -> Level {
        match self {
            Level::Var(v) => f(v),
            Level::Zero => Level::Zero,
            Level::Succ(l) => l.map_vars(f).succ(),
            Level::Max(a, b) => a.map_vars(f).max(b.map_vars(f)),
        }
    }

    pub fn subst(&self, theta: &LevelSubst) -> Level {
        self.map_vars(&mut |v| theta.get(v).cloned().unwrap_or_else(|| Level::Var(v.clone())))
    }

    pub fn canonical(&self) -> CanonicalLevel {
        canonicalize(self)
    }

    /// The smallest rendering of the canonical form: the constant is omitted
    /// when some variable already carries the same coefficient.
    pub fn compact(&self) -> Level {
        self.canonical().render_compact()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_level(self, f, |v, f| write!(f, "{v}"))
    }
}

/// Shared printer for levels; `var` decides how variables are spelled so the
/// term printer can resolve bound indices to names.
pub(crate) fn fmt_level(
    l: &Level,
    f: &mut fmt::Formatter<'_>,
    var: impl Fn(&LevelVar, &mut fmt::Formatter<'_>) -> fmt::Result + Copy,
) -> fmt::Result {
    match l {
        Level::Max(a, b) => {
            fmt_level(a, f, var)?;
            f.write_str(" ⊔ ")?;
            if matches!(**b, Level::Max(..)) {
                f.write_str("(")?;
                fmt_level(b, f, var)?;
                f.write_str(")")
            } else {
                fmt_level(b, f, var)
            }
        }
        _ => fmt_level_tight(l, f, var),
    }
}

/// Prints a non-join level (a join is parenthesized).
fn fmt_level_tight(
    l: &Level,
    f: &mut fmt::Formatter<'_>,
    var: impl Fn(&LevelVar, &mut fmt::Formatter<'_>) -> fmt::Result + Copy,
) -> fmt::Result {
    let (n, base) = l.split_succ();
    match base {
        Level::Zero => write!(f, "{n}"),
        Level::Var(v) if n == 0 => var(v, f),
        _ if n == 0 => {
            f.write_str("(")?;
            fmt_level(base, f, var)?;
            f.write_str(")")
        }
        _ => {
            write!(f, "{n}+")?;
            fmt_level_tight(base, f, var)
        }
    }
}

impl FromStr for Level {
    type Err = crate::syntax::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::syntax::parse_level(s)
    }
}

/// Canonical form `p ⊔ n₁+i₁ ⊔ …`. A variable absent from `vars` has
/// coefficient −∞.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CanonicalLevel {
    constant: u32,
    vars: BTreeMap<LevelVar, u32>,
}

/// A coefficient position: the constant slot or a variable.
#[derive(Clone, Copy, Debug)]
pub enum Slot<'a> {
    Const,
    Var(&'a LevelVar),
}

impl CanonicalLevel {
    /// Returns `None` unless every variable coefficient is at most `constant`.
    pub fn new(constant: u32, vars: BTreeMap<LevelVar, u32>) -> Option<Self> {
        vars.values()
            .all(|&n| n <= constant)
            .then_some(CanonicalLevel { constant, vars })
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    pub fn vars(&self) -> &BTreeMap<LevelVar, u32> {
        &self.vars
    }

    /// `None` stands for −∞.
    pub fn coeff(&self, at: Slot<'_>) -> Option<u32> {
        match at {
            Slot::Const => Some(self.constant),
            Slot::Var(v) => self.vars.get(v).copied(),
        }
    }

    pub fn remove_var(&mut self, v: &LevelVar) {
        self.vars.remove(v);
    }

    /// Subtracts `k` from every coefficient. `k` must not exceed any of them.
    pub fn lower(&mut self, k: u32) {
        self.constant -= k;
        for n in self.vars.values_mut() {
            *n -= k;
        }
    }

    /// Smallest coefficient, constant slot included.
    pub fn min_coeff(&self) -> u32 {
        self.vars.values().copied().fold(self.constant, u32::min)
    }

    pub fn render(&self) -> Level {
        render(self)
    }

    pub fn render_compact(&self) -> Level {
        let vars = self
            .vars
            .iter()
            .map(|(v, &n)| Level::Var(v.clone()).plus(n));
        if self.vars.values().any(|&n| n == self.constant) {
            Level::join(vars)
        } else {
            Level::join(std::iter::once(Level::nat(self.constant)).chain(vars))
        }
    }
}

impl fmt::Display for CanonicalLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Folds the level, tracking successor depth: a leaf at depth `d` contributes
/// `d` to its variable (if any) and to the constant slot, the latter because
/// `i ≃ i ⊔ 0`.
pub fn canonicalize(l: &Level) -> CanonicalLevel {
    fn go(l: &Level, depth: u32, acc: &mut CanonicalLevel) {
        match l {
            Level::Var(v) => {
                let slot = acc.vars.entry(v.clone()).or_insert(depth);
                *slot = (*slot).max(depth);
                acc.constant = acc.constant.max(depth);
            }
            Level::Zero => acc.constant = acc.constant.max(depth),
            Level::Succ(inner) => go(inner, depth + 1, acc),
            Level::Max(a, b) => {
                go(a, depth, acc);
                go(b, depth, acc);
            }
        }
    }
    let mut acc = CanonicalLevel::default();
    go(l, 0, &mut acc);
    acc
}

pub fn coeff(c: &CanonicalLevel, at: Slot<'_>) -> Option<u32> {
    c.coeff(at)
}

pub fn levels_equal(l1: &Level, l2: &Level) -> bool {
    l1 == l2 || canonicalize(l1) == canonicalize(l2)
}

/// Total map from variables to naturals, 0 outside its support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<LevelVar, u64>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: LevelVar, n: u64) {
        self.0.insert(v, n);
    }

    pub fn get(&self, v: &LevelVar) -> u64 {
        self.0.get(v).copied().unwrap_or(0)
    }
}

impl FromIterator<(LevelVar, u64)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (LevelVar, u64)>>(iter: T) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

pub fn interpret(l: &Level, phi: &Valuation) -> u64 {
    match l {
        Level::Var(v) => phi.get(v),
        Level::Zero => 0,
        Level::Succ(inner) => interpret(inner, phi) + 1,
        Level::Max(a, b) => interpret(a, phi).max(interpret(b, phi)),
    }
}

pub fn subst_level(l: &Level, theta: &LevelSubst) -> Level {
    l.subst(theta)
}

/// `p ⊔ n₁+i₁ ⊔ …` with variables in their fixed order; just `p` when there
/// are no variables.
pub fn render(c: &CanonicalLevel) -> Level {
    let vars = c.vars.iter().map(|(v, &n)| Level::Var(v.clone()).plus(n));
    Level::join(std::iter::once(Level::nat(c.constant)).chain(vars))
}

/// Finite map from level variables to levels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelSubst(BTreeMap<LevelVar, Level>);

impl LevelSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: LevelVar, l: Level) {
        self.0.insert(v, l);
    }

    pub fn get(&self, v: &LevelVar) -> Option<&Level> {
        self.0.get(v)
    }

    pub fn contains(&self, v: &LevelVar) -> bool {
        self.0.contains_key(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LevelVar, &Level)> {
        self.0.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &LevelVar> {
        self.0.keys()
    }

    /// Variables occurring in the image of the domain.
    pub fn range_vars(&self) -> BTreeSet<LevelVar> {
        self.0.values().flat_map(Level::free_vars).collect()
    }

    /// Applying twice agrees with applying once, up to ≃, on every variable
    /// of the domain and range.
    pub fn is_idempotent(&self) -> bool {
        self.0.values().all(|l| levels_equal(&l.subst(self), l))
    }

    /// Keeps only the entries whose variable satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&LevelVar) -> bool) -> LevelSubst {
        LevelSubst(
            self.0
                .iter()
                .filter(|(v, _)| keep(v))
                .map(|(v, l)| (v.clone(), l.clone()))
                .collect(),
        )
    }

    /// `{v ↦ l[other]}` for every entry.
    pub fn then(&self, other: &LevelSubst) -> LevelSubst {
        LevelSubst(
            self.0
                .iter()
                .map(|(v, l)| (v.clone(), l.subst(other).compact()))
                .collect(),
        )
    }
}

impl FromIterator<(LevelVar, Level)> for LevelSubst {
    fn from_iter<T: IntoIterator<Item = (LevelVar, Level)>>(iter: T) -> Self {
        LevelSubst(iter.into_iter().collect())
    }
}

impl fmt::Display for LevelSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, l)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} ↦ {l}")?;
        }
        f.write_str("}")
    }
}

/// Counter-based supply of fresh named variables `<prefix><n>`.
#[derive(Clone, Debug)]
pub struct FreshGen {
    prefix: String,
    next: u32,
}

impl FreshGen {
    pub fn new(prefix: &str) -> Self {
        FreshGen {
            prefix: prefix.to_owned(),
            next: 1,
        }
    }

    /// Generator used by the unifier; `$` keeps its names out of the
    /// identifier syntax, so they never collide with user-written ones.
    pub fn for_unifier() -> Self {
        Self::new("u$")
    }

    pub fn fresh(&mut self) -> LevelVar {
        let v = LevelVar::named(&format!("{}{}", self.prefix, self.next));
        self.next += 1;
        v
    }

    /// Number of variables handed out so far.
    pub fn issued(&self) -> u32 {
        self.next - 1
    }
}
