use std::fmt;
use std::sync::Arc;

use crate::kernel::{Binder, Name, Sort};
use crate::syntax::Pos;

/// The sort-indexed constants of the input layout.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Framework {
    Ty,
    Tm,
    U,
    Pi,
    Lam,
    App,
}

impl Framework {
    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "Ty" => Framework::Ty,
            "Tm" => Framework::Tm,
            "U" => Framework::U,
            "Pi" => Framework::Pi,
            "Lam" => Framework::Lam,
            "App" => Framework::App,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Framework::Ty => "Ty",
            Framework::Tm => "Tm",
            Framework::U => "U",
            Framework::Pi => "Pi",
            Framework::Lam => "Lam",
            Framework::App => "App",
        }
    }

    /// Number of sort tags, which is also the number of levels it erases to.
    pub fn tag_count(self) -> usize {
        match self {
            Framework::Ty | Framework::Tm | Framework::U => 1,
            Framework::Pi | Framework::Lam | Framework::App => 2,
        }
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Input terms: nameless like kernel terms, without any level syntax, and
/// with sort tags on framework constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InputTerm {
    Var(u32),
    Const(Name),
    Framework(Framework, Vec<Name>),
    Sort(Sort),
    Pi(Binder, Box<InputTerm>, Box<InputTerm>),
    Abs(Binder, Box<InputTerm>),
    App(Box<InputTerm>, Box<InputTerm>),
}

impl InputTerm {
    pub fn app(self, arg: InputTerm) -> InputTerm {
        InputTerm::App(Box::new(self), Box::new(arg))
    }

    pub fn framework(f: Framework, tags: &[&str]) -> InputTerm {
        InputTerm::Framework(f, tags.iter().map(|t| Arc::from(*t)).collect())
    }

    pub fn shift(&self, by: u32, cutoff: u32) -> InputTerm {
        match self {
            InputTerm::Var(k) if *k >= cutoff => InputTerm::Var(k + by),
            InputTerm::Var(_) | InputTerm::Const(_) | InputTerm::Framework(..) | InputTerm::Sort(_) => self.clone(),
            InputTerm::Pi(x, a, b) => InputTerm::Pi(
                x.clone(),
                Box::new(a.shift(by, cutoff)),
                Box::new(b.shift(by, cutoff + 1)),
            ),
            InputTerm::Abs(x, b) => InputTerm::Abs(x.clone(), Box::new(b.shift(by, cutoff + 1))),
            InputTerm::App(f, a) => InputTerm::App(Box::new(f.shift(by, cutoff)), Box::new(a.shift(by, cutoff))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InputEntry {
    pub name: Name,
    pub pos: Pos,
    pub ty: InputTerm,
    pub body: Option<InputTerm>,
}
