//! Parser for expressions in `U`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := generator | '{' polynomial '}' | nat | '[' expr ',' expr ']'
//!         | '(' expr ')' | '-' factor
//! ```
//!
//! Generators are referred to by the algebra's basis names (`dx`, `a1`, ...);
//! polynomials use the ring grammar inside braces.

use num_traits::ToPrimitive;

use crate::envelope::{Algebra, UElement};
use crate::error::{Error, Result};
use crate::parse::{parse_poly, Lexer, Tok};
use crate::ring::Polynomial;

const SYMBOLS: &str = "+-*^()[],{}";

struct UParser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
    algebra: &'a Algebra,
}

impl<'a> UParser<'a> {
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.tok != Tok::Sym(c) {
            return self.error(format!("expected `{c}`"));
        }
        self.bump()
    }

    fn expr(&mut self) -> Result<UElement> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Sym('+') => {
                    self.bump()?;
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Sym('-') => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<UElement> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Sym('*') {
            self.bump()?;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UElement> {
        let base = self.atom()?;
        if self.tok == Tok::Sym('^') {
            self.bump()?;
            let k = match &self.tok {
                Tok::Nat(n) => n.to_u32(),
                _ => return self.error("expected a natural number"),
            };
            let Some(k) = k else {
                return self.error("exponent too large");
            };
            self.bump()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<UElement> {
        let ring = self.algebra.ring().clone();
        match self.tok.clone() {
            Tok::Ident(name) => {
                let i = self
                    .algebra
                    .names()
                    .iter()
                    .position(|g| *g == name)
                    .ok_or(Error::UnknownVariable(name))?;
                self.bump()?;
                Ok(UElement::generator(self.algebra, i))
            }
            Tok::Nat(n) => {
                self.bump()?;
                Ok(UElement::scalar(
                    self.algebra,
                    Polynomial::constant(&ring, ring.field().from_bigint(&n)),
                ))
            }
            Tok::Sym('{') => {
                let start = self.lexer.position();
                let src = self.lexer.source();
                let Some(len) = src[start..].find('}') else {
                    return self.error("unterminated `{`");
                };
                let inner = &src[start..start + len];
                let poly = parse_poly(inner, &ring).map_err(|e| match e {
                    Error::Syntax { offset, message } => Error::Syntax {
                        offset: offset + start,
                        message,
                    },
                    other => other,
                })?;
                self.lexer.seek(start + len + 1);
                self.bump()?;
                Ok(UElement::scalar(self.algebra, poly))
            }
            Tok::Sym('[') => {
                self.bump()?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                a.commutator(&b)
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.bump()?;
                Ok(self.factor()?.neg())
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Sym(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

/// Parses and evaluates a `U`-expression, returning its normal form.
pub fn parse_u_expr(text: &str, algebra: &Algebra) -> Result<UElement> {
    let mut lexer = Lexer::new(text);
    let (tok, offset) = lexer.next_token(SYMBOLS)?;
    let mut p = UParser {
        lexer,
        tok,
        offset,
        algebra,
    };
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::lierinehart::FreeLieRinehart;
    use crate::ring::PolyRing;
    use std::sync::Arc;

    fn abelian() -> Algebra {
        let r = PolyRing::new(&["x", "y"], CoefficientField::Rationals).unwrap();
        Arc::new(FreeLieRinehart::abelian(&r, vec!["a1".into(), "a2".into()]))
    }

    #[test]
    fn atoms_and_operators() {
        let alg = abelian();
        let e = parse_u_expr("a2*a1 - {x^2 + 1}*a1 + 3", &alg).unwrap();
        assert_eq!(e.to_string(), "a1*a2 + (-x^2 - 1)*a1 + (3)");
        assert_eq!(parse_u_expr("(a1 + a2)^2", &alg).unwrap().l_degree(), Some(2));
        assert!(parse_u_expr("[a1, a2]", &alg).unwrap().is_zero());
        assert_eq!(
            parse_u_expr("-a1", &alg).unwrap(),
            UElement::generator(&alg, 0).neg()
        );
    }

    #[test]
    fn errors() {
        let alg = abelian();
        assert_eq!(
            parse_u_expr("a3", &alg),
            Err(Error::UnknownVariable("a3".into()))
        );
        assert!(matches!(parse_u_expr("{x + }", &alg), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(parse_u_expr("[a1 a2]", &alg), Err(Error::Syntax { .. })));
        assert!(matches!(parse_u_expr("{x", &alg), Err(Error::Syntax { .. })));
        assert!(matches!(parse_u_expr("a1 a2", &alg), Err(Error::Syntax { .. })));
    }
}
