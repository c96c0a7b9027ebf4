//! Tokens with source positions. `#` starts a comment running to the end of
//! the line.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u128),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sym(c) => write!(f, "{c}"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

impl Token {
    /// A parse error pointing at this token.
    pub fn error(&self, msg: impl fmt::Display) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: format!("{msg} (at '{}')", self.tok) }
    }
}

const SYMBOLS: &str = "{};,+-*^()";

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n = s.parse::<u128>().map_err(|_| Error::Parse {
                line: l0,
                col: c0,
                msg: format!("integer literal too large (at '{s}')"),
            })?;
            out.push(Token { tok: Tok::Int(n), line: l0, col: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_' || **d == '\'') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
        } else if SYMBOLS.contains(c) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
        } else {
            return Err(Error::Parse { line: l0, col: c0, msg: format!("unexpected character (at '{c}')") });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        Ok(Cursor { toks: tokenize(text)?, pos: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.at_sym(c);
        if hit {
            self.next();
        }
        hit
    }

    pub fn expect_sym(&mut self, c: char) -> Result<Token> {
        if self.at_sym(c) {
            Ok(self.next())
        } else {
            Err(self.peek().error(format!("expected '{c}'")))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<Token> {
        if self.at_keyword(kw) {
            Ok(self.next())
        } else {
            Err(self.peek().error(format!("expected '{kw}'")))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(String, Token)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.next()))
            }
            _ => Err(self.peek().error(format!("expected {what}"))),
        }
    }

    pub fn expect_int(&mut self, what: &str) -> Result<(u128, Token)> {
        match self.peek().tok {
            Tok::Int(n) => Ok((n, self.next())),
            _ => Err(self.peek().error(format!("expected {what}"))),
        }
    }

    /// An optionally negated integer.
    pub fn expect_signed(&mut self, what: &str) -> Result<(i64, Token)> {
        let neg = self.eat_sym('-');
        let (n, t) = self.expect_int(what)?;
        let v = i64::try_from(n).map_err(|_| t.error("integer out of range"))?;
        Ok((if neg { -v } else { v }, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let t = tokenize("ring R { # note\n  char 7;\n}").unwrap();
        let kinds: Vec<String> = t.iter().map(|t| t.tok.to_string()).collect();
        assert_eq!(kinds, ["ring", "R", "{", "char", "7", ";", "}", "end of input"]);
        assert_eq!((t[3].line, t[3].col), (2, 3));
    }

    #[test]
    fn bad_character_is_located() {
        match tokenize("x\n  y $") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 5)),
            other => panic!("{other:?}"),
        }
    }
}
