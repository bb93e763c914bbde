//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := nat | nat '/' nat | var | '(' expr ')' | '-' factor
//! ```
//!
//! Multiplication is always explicit: `2*x`, never `2x`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Nat(BigInt),
    Ident(String),
    Sym(char),
    End,
}

pub(crate) struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    pub(crate) fn seek(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub(crate) fn source(&self) -> &'a str {
        self.src
    }

    /// Returns the next token together with its byte offset.
    pub(crate) fn next_token(&mut self, symbols: &str) -> Result<(Tok, usize)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if start >= bytes.len() {
            return Ok((Tok::End, start));
        }
        let c = bytes[start] as char;
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((Tok::Nat(n), start));
        }
        if c.is_ascii_alphabetic() {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if symbols.contains(c) {
            self.pos += 1;
            return Ok((Tok::Sym(c), start));
        }
        Err(Error::Syntax {
            offset: start,
            message: format!("unexpected character `{}`", self.src[start..].chars().next().unwrap()),
        })
    }
}

const SYMBOLS: &str = "+-*^/()";

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ring: &'a Ring) -> Result<Self> {
        let mut lexer = Lexer::new(text);
        let (tok, offset) = lexer.next_token(SYMBOLS)?;
        Ok(Parser {
            lexer,
            tok,
            offset,
            ring,
        })
    }

    fn bump(&mut self) -> Result<()> {
        let (tok, offset) = self.lexer.next_token(SYMBOLS)?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Sym('+') => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Sym('*') {
            self.bump()?;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.tok == Tok::Sym('^') {
            self.bump()?;
            let k = self.nat()?;
            let k = match k.to_u32() {
                Some(k) => k,
                None => return self.error("exponent too large"),
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<BigInt> {
        match &self.tok {
            Tok::Nat(n) => {
                let n = n.clone();
                self.bump()?;
                Ok(n)
            }
            _ => self.error("expected a natural number"),
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.tok.clone() {
            Tok::Nat(n) => {
                self.bump()?;
                if self.tok == Tok::Sym('/') {
                    self.bump()?;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    let field = self.ring.field();
                    match field.from_fraction(&n, &d) {
                        Some(c) => Ok(Polynomial::constant(self.ring, c)),
                        None => self.error(format!(
                            "denominator {d} is not invertible in {field}"
                        )),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
                }
            }
            Tok::Ident(name) => {
                let p = Polynomial::var_named(self.ring, &name)?;
                self.bump()?;
                Ok(p)
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                if self.tok != Tok::Sym(')') {
                    return self.error("expected `)`");
                }
                self.bump()?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.bump()?;
                Ok(-self.factor()?)
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Sym(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser::new(text, ring)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}
