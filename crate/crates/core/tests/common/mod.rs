//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! library's canonical forms; levels are evaluated directly.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use upp_elab::level::{Level, LevelSubst, LevelVar};

pub fn lv(s: &str) -> Level {
    s.parse().unwrap()
}

pub fn var(name: &str) -> LevelVar {
    LevelVar::named(name)
}

/// Every named variable of a level, without going through the library.
pub fn vars_of(l: &Level, out: &mut BTreeSet<LevelVar>) {
    match l {
        Level::Var(v) => {
            out.insert(v.clone());
        }
        Level::Zero => {}
        Level::Succ(a) => vars_of(a, out),
        Level::Max(a, b) => {
            vars_of(a, out);
            vars_of(b, out);
        }
    }
}

/// A level compiled against a fixed variable order, for fast repeated
/// evaluation.
pub struct Compiled(Vec<Op>);

enum Op {
    Var(usize),
    Zero,
    Succ,
    Max,
}

impl Compiled {
    pub fn new(l: &Level, order: &[LevelVar]) -> Self {
        fn go(l: &Level, order: &[LevelVar], ops: &mut Vec<Op>) {
            match l {
                Level::Var(v) => ops.push(Op::Var(order.iter().position(|w| w == v).expect("variable in order"))),
                Level::Zero => ops.push(Op::Zero),
                Level::Succ(a) => {
                    go(a, order, ops);
                    ops.push(Op::Succ);
                }
                Level::Max(a, b) => {
                    go(a, order, ops);
                    go(b, order, ops);
                    ops.push(Op::Max);
                }
            }
        }
        let mut ops = Vec::new();
        go(l, order, &mut ops);
        Compiled(ops)
    }

    pub fn eval(&self, vals: &[u64], stack: &mut Vec<u64>) -> u64 {
        stack.clear();
        for op in &self.0 {
            match op {
                Op::Var(k) => stack.push(vals[*k]),
                Op::Zero => stack.push(0),
                Op::Succ => *stack.last_mut().unwrap() += 1,
                Op::Max => {
                    let b = stack.pop().unwrap();
                    let a = stack.last_mut().unwrap();
                    *a = (*a).max(b);
                }
            }
        }
        stack[0]
    }
}

/// Calls `f` on every assignment of `n` variables into `0..=bound` until it
/// returns false. Returns whether every call returned true.
pub fn all_valuations(n: usize, bound: u64, mut f: impl FnMut(&[u64]) -> bool) -> bool {
    let mut vals = vec![0u64; n];
    loop {
        if !f(&vals) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == n {
                return true;
            }
            if vals[k] < bound {
                vals[k] += 1;
                break;
            }
            vals[k] = 0;
            k += 1;
        }
    }
}

pub fn eval_at(l: &Level, order: &[LevelVar], vals: &[u64]) -> u64 {
    Compiled::new(l, order).eval(vals, &mut Vec::new())
}

/// The value of a level with every variable at 0: the largest constant it
/// can denote without help from its variables.
pub fn max_const(l: &Level) -> u64 {
    let mut vs = BTreeSet::new();
    vars_of(l, &mut vs);
    let order: Vec<_> = vs.into_iter().collect();
    eval_at(l, &order, &vec![0; order.len()])
}

/// Exhaustive semantic equality over valuations into `0..=max_const+5`.
pub fn brute_equal(a: &Level, b: &Level) -> bool {
    let mut vs = BTreeSet::new();
    vars_of(a, &mut vs);
    vars_of(b, &mut vs);
    let order: Vec<_> = vs.into_iter().collect();
    let bound = max_const(a).max(max_const(b)) + 5;
    let (ca, cb) = (Compiled::new(a, &order), Compiled::new(b, &order));
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    all_valuations(order.len(), bound, |v| ca.eval(v, &mut s1) == cb.eval(v, &mut s2))
}

pub const POOL: [&str; 4] = ["a", "b", "c", "d"];

/// A random level over `vars`, at most `depth` constructors deep.
pub fn random_level(rng: &mut impl Rng, vars: &[&str], depth: u32) -> Level {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.7) {
            Level::var(vars[rng.gen_range(0..vars.len())])
        } else {
            Level::nat(rng.gen_range(0..=3))
        };
    }
    if rng.gen_bool(0.4) {
        random_level(rng, vars, depth - 1).succ()
    } else {
        random_level(rng, vars, depth - 1).max(random_level(rng, vars, depth - 1))
    }
}

/// Rewrites `l` with sound level laws at random positions, so the result is
/// equal to `l` but usually looks different.
pub fn perturb(rng: &mut impl Rng, l: &Level) -> Level {
    let inner = match l {
        Level::Succ(a) => perturb(rng, a).succ(),
        Level::Max(a, b) => perturb(rng, a).max(perturb(rng, b)),
        other => other.clone(),
    };
    match (rng.gen_range(0..8), &inner) {
        (0, Level::Max(a, b)) => (**b).clone().max((**a).clone()),
        (1, Level::Max(ab, c)) => match &**ab {
            Level::Max(a, b) => (**a).clone().max((**b).clone().max((**c).clone())),
            _ => inner,
        },
        (2, Level::Succ(ab)) => match &**ab {
            Level::Max(a, b) => (**a).clone().succ().max((**b).clone().succ()),
            _ => inner,
        },
        (3, _) => inner.clone().max(inner),
        (4, _) => inner.max(Level::Zero),
        (5, Level::Succ(a)) => inner.clone().max((**a).clone()),
        _ => inner,
    }
}

/// A side `c ⊔ n1+x1 ⊔ …` with constants and coefficients up to 3; the
/// constant is sometimes left out.
pub fn random_side(rng: &mut impl Rng, vars: &[&str], max_vars: usize) -> Level {
    let mut pool = vars.to_vec();
    let n = rng.gen_range(0..=max_vars.min(vars.len()));
    let mut terms = Vec::new();
    if n == 0 || rng.gen_bool(0.6) {
        terms.push(Level::nat(rng.gen_range(0..=3)));
    }
    for _ in 0..n {
        let v = pool.remove(rng.gen_range(0..pool.len()));
        terms.push(Level::var(v).plus(rng.gen_range(0..=3)));
    }
    Level::join(terms)
}

/// Whether some assignment of `vars` into `0..=bound` makes `a` and `b` equal.
pub fn has_ground_unifier(a: &Level, b: &Level, bound: u64) -> bool {
    let mut vs = BTreeSet::new();
    vars_of(a, &mut vs);
    vars_of(b, &mut vs);
    let order: Vec<_> = vs.into_iter().collect();
    let (ca, cb) = (Compiled::new(a, &order), Compiled::new(b, &order));
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    !all_valuations(order.len(), bound, |v| ca.eval(v, &mut s1) != cb.eval(v, &mut s2))
}

/// Every ground unifier of `a ≐ b` into `0..=bound`, over `order`.
pub fn ground_unifiers(a: &Level, b: &Level, order: &[LevelVar], bound: u64) -> Vec<Vec<u64>> {
    let (ca, cb) = (Compiled::new(a, order), Compiled::new(b, order));
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    let mut out = Vec::new();
    all_valuations(order.len(), bound, |v| {
        if ca.eval(v, &mut s1) == cb.eval(v, &mut s2) {
            out.push(v.to_vec());
        }
        true
    });
    out
}

/// Whether the ground substitution `tau` (values for `order`) is an instance
/// of `theta`: some assignment of the range variables of `theta` into
/// `0..=cap` makes `v[theta]` evaluate to `tau(v)` for every `v` in `order`.
///
/// Levels are joins of `n+x` terms, so raising a range variable never lowers
/// anything. If any assignment works, the pointwise largest one that keeps
/// every `v[theta]` at or below its target works too, and that one is found
/// variable by variable.
pub fn is_instance(theta: &LevelSubst, order: &[LevelVar], tau: &[u64], cap: u64) -> bool {
    let images: Vec<Level> = order
        .iter()
        .map(|v| theta.get(v).cloned().unwrap_or_else(|| Level::Var(v.clone())))
        .collect();
    let mut range = BTreeSet::new();
    for l in &images {
        vars_of(l, &mut range);
    }
    let range: Vec<_> = range.into_iter().collect();
    let compiled: Vec<Compiled> = images.iter().map(|l| Compiled::new(l, &range)).collect();
    let mut stack = Vec::new();
    let fits = |vals: &[u64], stack: &mut Vec<u64>| compiled.iter().zip(tau).all(|(c, t)| c.eval(vals, stack) <= *t);
    let mut vals = vec![0u64; range.len()];
    if !fits(&vals, &mut stack) {
        return false;
    }
    for k in 0..range.len() {
        while vals[k] < cap {
            vals[k] += 1;
            if !fits(&vals, &mut stack) {
                vals[k] -= 1;
                break;
            }
        }
    }
    compiled.iter().zip(tau).all(|(c, t)| c.eval(&vals, &mut stack) == *t)
}

/// Whether `theta` and `expected` agree on `vars` once the range variables
/// of `theta` are renamed injectively onto those of `expected`.
pub fn equal_up_to_renaming(theta: &LevelSubst, expected: &LevelSubst, vars: &[LevelVar]) -> bool {
    let image = |s: &LevelSubst, v: &LevelVar| s.get(v).cloned().unwrap_or_else(|| Level::Var(v.clone()));
    let mut from = BTreeSet::new();
    let mut to = BTreeSet::new();
    for v in vars {
        vars_of(&image(theta, v), &mut from);
        vars_of(&image(expected, v), &mut to);
    }
    let from: Vec<_> = from.into_iter().collect();
    let to: Vec<_> = to.into_iter().collect();
    if from.len() != to.len() {
        return false;
    }
    permutations(to.len()).into_iter().any(|perm| {
        let rename: LevelSubst = from
            .iter()
            .zip(&perm)
            .map(|(f, &k)| (f.clone(), Level::Var(to[k].clone())))
            .collect();
        vars.iter()
            .all(|v| brute_equal(&image(theta, v).subst(&rename), &image(expected, v)))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}
