//! A λΠ-modulo kernel with confined (level) binders, specialised to the
//! universe-polymorphic target theory: its fixed signature, head reduction
//! with the two built-in rewrite rules, conversion modulo level equivalence
//! and a bidirectional checker for signature entries.

mod reduce;
mod term;
mod typing;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

pub use reduce::{convert, whnf, Machine};
pub use term::{Arg, Binder, Name, Sort, Term};
pub use typing::{check_entry, infer_type};
pub(crate) use typing::Checker;

/// Head-step budget used when none is configured.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Names of the built-in constants.
pub mod names {
    pub const LVL: &str = "Lvl";
    pub const TY: &str = "Ty";
    pub const TM: &str = "Tm";
    pub const U: &str = "U";
    pub const PI: &str = "Pi";
    pub const LAM: &str = "Lam";
    pub const APP: &str = "App";

    pub const ALL: [&str; 7] = [LVL, TY, TM, U, PI, LAM, APP];
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("type error ({rule}) at {path}: {message}")]
    TypeError {
        rule: &'static str,
        path: String,
        message: String,
    },
    #[error("`{0}` is already declared")]
    DuplicateName(Name),
    #[error("reduction ran out of fuel after {0} head steps")]
    FuelExhausted(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Declaration { ty: Term },
    Definition { ty: Term, body: Term },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: Name,
    pub kind: EntryKind,
    /// Display names of the leading confined products of the type.
    pub level_params: Vec<Name>,
}

impl Entry {
    pub fn declaration(name: &str, ty: Term) -> Entry {
        Entry::new(name, EntryKind::Declaration { ty })
    }

    pub fn definition(name: &str, ty: Term, body: Term) -> Entry {
        Entry::new(name, EntryKind::Definition { ty, body })
    }

    fn new(name: &str, kind: EntryKind) -> Entry {
        let mut level_params = Vec::new();
        let mut t = match &kind {
            EntryKind::Declaration { ty } | EntryKind::Definition { ty, .. } => ty,
        };
        while let Term::CPi(Binder(x), _, b) = t {
            level_params.push(x.clone());
            t = b;
        }
        Entry {
            name: Arc::from(name),
            kind,
            level_params,
        }
    }

    pub fn ty(&self) -> &Term {
        match &self.kind {
            EntryKind::Declaration { ty } | EntryKind::Definition { ty, .. } => ty,
        }
    }

    pub fn body(&self) -> Option<&Term> {
        match &self.kind {
            EntryKind::Declaration { .. } => None,
            EntryKind::Definition { body, .. } => Some(body),
        }
    }

    pub fn level_arity(&self) -> usize {
        self.level_params.len()
    }
}

/// Ordered entries with a name index. The first `base_len` entries are the
/// built-in declarations.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    entries: Vec<Arc<Entry>>,
    index: HashMap<Name, usize>,
    base_len: usize,
}

impl Signature {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The built-in signature of the target theory.
    pub fn upp() -> Self {
        upp_signature()
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&k| &*self.entries[k])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().map(|e| &**e)
    }

    /// Entries added after the built-ins.
    pub fn local_entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries[self.base_len..].iter().map(|e| &**e)
    }

    /// Appends without typechecking.
    pub fn push_unchecked(&mut self, e: Entry) -> Result<(), KernelError> {
        if self.contains(&e.name) {
            return Err(KernelError::DuplicateName(e.name));
        }
        self.index.insert(e.name.clone(), self.entries.len());
        self.entries.push(Arc::new(e));
        Ok(())
    }

    /// Typechecks `e` against the current entries and appends it.
    pub fn check_and_push(&mut self, e: Entry, fuel: u64) -> Result<(), KernelError> {
        typing::check_entry_with_fuel(self, &e, fuel)?;
        self.push_unchecked(e)
    }
}

const UPP_BASE: &str = "
Lvl : Type.
Ty : (l : Lvl) -> Type.
Tm : (l : Lvl) -> Ty l -> Type.
U : (l : Lvl) -> Ty (S l).
Pi : (l : Lvl) -> (l' : Lvl) -> (A : Ty l) -> (B : Tm l A -> Ty l') -> Ty (l ⊔ l').
Lam : (l : Lvl) -> (l' : Lvl) -> (A : Ty l) -> (B : Tm l A -> Ty l')
    -> ((x : Tm l A) -> Tm l' (B x)) -> Tm (l ⊔ l') (Pi l l' A B).
App : (l : Lvl) -> (l' : Lvl) -> (A : Ty l) -> (B : Tm l A -> Ty l')
    -> Tm (l ⊔ l') (Pi l l' A B) -> (u : Tm l A) -> Tm l' (B u).
";

/// `Lvl`, `Ty`, `Tm`, `U`, `Pi`, `Lam` and `App`. The level constructors are
/// part of the level syntax, and the rewrite rules
/// `Tm l' (U l) ⟶ Ty l` and `App l l' A B (Lam l'' l''' A' B' t) u ⟶ t u`
/// are built into [`whnf`].
pub fn upp_signature() -> Signature {
    let mut sig = Signature::empty();
    for e in crate::syntax::parse_output_entries(UPP_BASE, &sig).expect("built-in signature parses") {
        sig.push_unchecked(e).expect("built-in names are distinct");
    }
    sig.base_len = sig.entries.len();
    sig
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtxEntry {
    pub name: Name,
    pub ty: Term,
    pub confined: bool,
}

/// Typing context. Entries are innermost-last; `Var(k)` refers to the entry
/// `k` positions from the end.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<CtxEntry>,
    /// Whether free named level variables are accepted as in scope.
    open_levels: bool,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// A context in which free named level variables are in scope, as during
    /// elaboration.
    pub fn with_open_levels() -> Self {
        Context {
            entries: Vec::new(),
            open_levels: true,
        }
    }

    /// The same entries, with free named level variables in scope.
    pub fn opened(&self) -> Context {
        Context {
            entries: self.entries.clone(),
            open_levels: true,
        }
    }

    pub fn open_levels(&self) -> bool {
        self.open_levels
    }

    pub fn push(&mut self, name: &Name, ty: Term) {
        self.entries.push(CtxEntry {
            name: name.clone(),
            ty,
            confined: false,
        });
    }

    pub fn push_confined(&mut self, name: &Name, ty: Term) {
        self.entries.push(CtxEntry {
            name: name.clone(),
            ty,
            confined: true,
        });
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry bound by index `k` and its type shifted to the current scope.
    pub fn lookup(&self, k: u32) -> Option<(&CtxEntry, Term)> {
        let pos = self.entries.len().checked_sub(k as usize + 1)?;
        let e = &self.entries[pos];
        Some((e, e.ty.shift(k as i64 + 1, 0)))
    }

    /// Binder names, outermost first (for printing).
    pub fn names(&self) -> Vec<Name> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }
}
