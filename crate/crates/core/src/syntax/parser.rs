//! Recursive-descent parser producing scope-free raw syntax.

use super::lexer::{tokenize, Tok};
use super::{ParseError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Raw {
    Ident(String, Pos),
    Nat(u64, Pos),
    /// A framework constant with sort tags, `Pi@Box,Omega`.
    Tagged(String, Vec<String>, Pos),
    /// `(x y : A) -> B`; a non-dependent arrow has the single binder `_`.
    Pi(Vec<String>, Box<Raw>, Box<Raw>),
    Abs(String, Box<Raw>, Pos),
    App(Box<Raw>, Box<Raw>),
    /// `n + l`
    Plus(u64, Box<Raw>, Pos),
    Join(Box<Raw>, Box<Raw>),
}

impl Raw {
    pub fn pos(&self) -> Pos {
        match self {
            Raw::Ident(_, p) | Raw::Nat(_, p) | Raw::Tagged(_, _, p) | Raw::Abs(_, _, p) | Raw::Plus(_, _, p) => *p,
            Raw::Pi(_, dom, _) => dom.pos(),
            Raw::App(f, _) => f.pos(),
            Raw::Join(a, _) => a.pos(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub name: String,
    pub pos: Pos,
    pub ty: Raw,
    pub body: Option<Raw>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawConstraint {
    pub entry: String,
    pub pos: Pos,
    pub lhs: Raw,
    pub rhs: Raw,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(self.pos(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.bump().1;
                Ok((s, p))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    /// `(` ident+ `:` starts a binder group.
    fn at_binder_group(&self) -> bool {
        if *self.peek() != Tok::LParen {
            return false;
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(_)) {
            k += 1;
        }
        k > 1 && *self.peek_at(k) == Tok::Colon
    }

    fn term(&mut self) -> Result<Raw, ParseError> {
        if self.at_binder_group() {
            self.bump();
            let mut names = Vec::new();
            while let Tok::Ident(_) = self.peek() {
                names.push(self.ident()?.0);
            }
            self.expect(Tok::Colon)?;
            let dom = self.term()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Arrow)?;
            let cod = self.term()?;
            return Ok(Raw::Pi(names, Box::new(dom), Box::new(cod)));
        }
        if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::FatArrow {
            let (x, p) = self.ident()?;
            self.bump();
            let body = self.term()?;
            return Ok(Raw::Abs(x, Box::new(body), p));
        }
        let lhs = self.join()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.term()?;
            return Ok(Raw::Pi(vec!["_".into()], Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.plus()?;
        while *self.peek() == Tok::Join {
            self.bump();
            let rhs = self.plus()?;
            lhs = Raw::Join(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn plus(&mut self) -> Result<Raw, ParseError> {
        if let (Tok::Nat(n), Tok::Plus) = (self.peek().clone(), self.peek_at(1)) {
            let p = self.bump().1;
            self.bump();
            let inner = self.plus()?;
            return Ok(Raw::Plus(n, Box::new(inner), p));
        }
        self.app()
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Nat(_) | Tok::LParen)
    }

    fn app(&mut self) -> Result<Raw, ParseError> {
        let mut f = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            f = Raw::App(Box::new(f), Box::new(a));
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.bump().1;
                if *self.peek() != Tok::At {
                    return Ok(Raw::Ident(s, p));
                }
                self.bump();
                let mut tags = vec![self.tag()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    tags.push(self.tag()?);
                }
                Ok(Raw::Tagged(s, tags, p))
            }
            Tok::Nat(n) => {
                let p = self.bump().1;
                Ok(Raw::Nat(n, p))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn tag(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            Tok::Nat(n) => {
                self.bump();
                Ok(n.to_string())
            }
            _ => Err(self.unexpected("a sort tag")),
        }
    }

    fn entry(&mut self) -> Result<RawEntry, ParseError> {
        let is_def = matches!(self.peek(), Tok::Ident(s) if s == "def");
        if is_def {
            self.bump();
        }
        let (name, pos) = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.term()?;
        let body = if is_def {
            self.expect(Tok::Assign)?;
            Some(self.term()?)
        } else {
            None
        };
        self.expect(Tok::Dot)?;
        Ok(RawEntry { name, pos, ty, body })
    }
}

pub fn parse_entries(src: &str) -> Result<Vec<RawEntry>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.entry()?);
    }
    Ok(out)
}

pub fn parse_constraint_lines(src: &str) -> Result<Vec<RawConstraint>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        let (entry, pos) = p.ident()?;
        p.expect(Tok::Colon)?;
        let lhs = p.join()?;
        p.expect(Tok::EqEq)?;
        let rhs = p.join()?;
        p.expect(Tok::Dot)?;
        out.push(RawConstraint { entry, pos, lhs, rhs });
    }
    Ok(out)
}

/// A single term spanning the whole input.
pub fn parse_raw_term(src: &str) -> Result<Raw, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(t)
}

/// A single level expression spanning the whole input.
pub fn parse_raw_level(src: &str) -> Result<Raw, ParseError> {
    let mut p = Parser::new(src)?;
    let l = p.join()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(l)
}
