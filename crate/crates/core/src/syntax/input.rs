//! Scope resolution for input syntax. Sort tags are checked against the
//! active layout here, since erasure throws them away.

use std::sync::Arc;

use super::parser::{Raw, RawEntry};
use super::{ParseError, Pos};
use crate::elab::{Framework, InputEntry, InputTerm, Pts};
use crate::kernel::names::LVL;
use crate::kernel::{Binder, Sort};

pub(crate) struct InputResolver<'a> {
    pts: &'a Pts,
    scope: Vec<String>,
}

fn err(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new(pos, msg)
}

impl<'a> InputResolver<'a> {
    pub(crate) fn new(pts: &'a Pts) -> Self {
        InputResolver { pts, scope: Vec::new() }
    }

    fn lookup(&self, x: &str) -> Option<u32> {
        if x == "_" {
            return None;
        }
        self.scope.iter().rev().position(|y| y == x).map(|k| k as u32)
    }

    fn tags(&self, f: Framework, tags: &[String], pos: Pos) -> Result<Vec<Arc<str>>, ParseError> {
        if tags.len() != f.tag_count() {
            return Err(err(pos, format!("`{f}` takes {} sort tag(s), found {}", f.tag_count(), tags.len())));
        }
        let mut sorts = Vec::new();
        for t in tags {
            let s = self
                .pts
                .sort(t)
                .ok_or_else(|| err(pos, format!("`{t}` is not a sort of layout `{}`", self.pts)))?;
            sorts.push(s);
        }
        match f {
            Framework::U if self.pts.axiom(&sorts[0]).is_none() => {
                return Err(err(pos, format!("sort `{}` has no universe in layout `{}`", sorts[0], self.pts)));
            }
            Framework::Pi | Framework::Lam | Framework::App if self.pts.rule(&sorts[0], &sorts[1]).is_none() => {
                return Err(err(
                    pos,
                    format!("layout `{}` has no product rule for ({}, {})", self.pts, sorts[0], sorts[1]),
                ));
            }
            _ => {}
        }
        Ok(sorts.into_iter().map(Arc::from).collect())
    }

    fn term(&mut self, r: &Raw) -> Result<InputTerm, ParseError> {
        match r {
            Raw::Ident(x, p) => {
                if let Some(k) = self.lookup(x) {
                    return Ok(InputTerm::Var(k));
                }
                match x.as_str() {
                    "Type" => Ok(InputTerm::Sort(Sort::Type)),
                    "Kind" => Ok(InputTerm::Sort(Sort::Kind)),
                    LVL | "S" => Err(err(*p, format!("`{x}` belongs to the output syntax"))),
                    _ if Framework::from_name(x).is_some() => {
                        Err(err(*p, format!("`{x}` needs sort tags, as in `{x}@…`")))
                    }
                    _ => Ok(InputTerm::Const(Arc::from(x.as_str()))),
                }
            }
            Raw::Tagged(x, tags, p) => {
                let f = Framework::from_name(x)
                    .ok_or_else(|| err(*p, format!("`{x}` is not a sort-indexed constant")))?;
                Ok(InputTerm::Framework(f, self.tags(f, tags, *p)?))
            }
            Raw::Nat(_, p) | Raw::Plus(_, _, p) => Err(err(*p, "levels cannot be written in input syntax")),
            Raw::Join(a, _) => Err(err(a.pos(), "levels cannot be written in input syntax")),
            Raw::Pi(names, dom, cod) => {
                let dom = self.term(dom)?;
                self.pi_group(names, &dom, cod)
            }
            Raw::Abs(x, body, _) => {
                self.scope.push(x.clone());
                let body = self.term(body);
                self.scope.pop();
                Ok(InputTerm::Abs(Binder::new(x), Box::new(body?)))
            }
            Raw::App(f, a) => Ok(self.term(f)?.app(self.term(a)?)),
        }
    }

    fn pi_group(&mut self, names: &[String], dom: &InputTerm, cod: &Raw) -> Result<InputTerm, ParseError> {
        let Some((x, rest)) = names.split_first() else {
            return self.term(cod);
        };
        self.scope.push(x.clone());
        let inner = self.pi_group(rest, &dom.shift(1, 0), cod);
        self.scope.pop();
        Ok(InputTerm::Pi(Binder::new(x), Box::new(dom.clone()), Box::new(inner?)))
    }

    pub(crate) fn entry(&mut self, raw: &RawEntry) -> Result<InputEntry, ParseError> {
        Ok(InputEntry {
            name: Arc::from(raw.name.as_str()),
            pos: raw.pos,
            ty: self.term(&raw.ty)?,
            body: raw.body.as_ref().map(|b| self.term(b)).transpose()?,
        })
    }
}
