use super::{ParseError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(u64),
    LParen,
    RParen,
    Colon,
    Dot,
    Comma,
    At,
    Plus,
    Join,
    Arrow,
    FatArrow,
    Assign,
    EqEq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::At => "`@`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Join => "`⊔`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn ident_start(c: char) -> bool {
    c == '_' || c == '□' || c.is_alphabetic()
}

fn ident_continue(c: char) -> bool {
    ident_start(c) || c.is_ascii_digit() || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                pos.line += 1;
                pos.col = 1;
            } else if c.is_some() {
                pos.col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while !matches!(chars.peek(), None | Some('\n')) {
                bump!();
            }
            continue;
        }
        if ident_start(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !ident_continue(c) {
                    break;
                }
                s.push(c);
                bump!();
            }
            out.push((Tok::Ident(s), start));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                bump!();
            }
            let n = s
                .parse()
                .map_err(|_| ParseError::new(start, format!("number `{s}` is too large")))?;
            out.push((Tok::Nat(n), start));
            continue;
        }
        bump!();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '@' => Tok::At,
            '+' => Tok::Plus,
            '⊔' => Tok::Join,
            '→' => Tok::Arrow,
            ':' if chars.peek() == Some(&'=') => {
                bump!();
                Tok::Assign
            }
            ':' => Tok::Colon,
            '-' if chars.peek() == Some(&'>') => {
                bump!();
                Tok::Arrow
            }
            '=' if chars.peek() == Some(&'>') => {
                bump!();
                Tok::FatArrow
            }
            '=' if chars.peek() == Some(&'=') => {
                bump!();
                Tok::EqEq
            }
            '\\' if chars.peek() == Some(&'/') => {
                bump!();
                Tok::Join
            }
            other => return Err(ParseError::new(start, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, pos));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn punctuation_and_comments() {
        assert_eq!(
            toks("def x : A -> B := y => y. # trailing"),
            vec![
                Tok::Ident("def".into()),
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::Ident("A".into()),
                Tok::Arrow,
                Tok::Ident("B".into()),
                Tok::Assign,
                Tok::Ident("y".into()),
                Tok::FatArrow,
                Tok::Ident("y".into()),
                Tok::Dot,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn levels_and_tags() {
        assert_eq!(
            toks("Pi@Box,Omega 2+i ⊔ j \\/ k"),
            vec![
                Tok::Ident("Pi".into()),
                Tok::At,
                Tok::Ident("Box".into()),
                Tok::Comma,
                Tok::Ident("Omega".into()),
                Tok::Nat(2),
                Tok::Plus,
                Tok::Ident("i".into()),
                Tok::Join,
                Tok::Ident("j".into()),
                Tok::Join,
                Tok::Ident("k".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn positions_track_lines() {
        let t = tokenize("a\n  b").unwrap();
        assert_eq!(t[1].1, Pos { line: 2, col: 3 });
    }

    #[test]
    fn primes_in_identifiers() {
        assert_eq!(toks("id'"), vec![Tok::Ident("id'".into()), Tok::Eof]);
    }
}
