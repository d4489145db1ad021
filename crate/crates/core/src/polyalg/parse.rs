//! Polynomial expressions: identifiers, integer literals, `+ - * ^` and
//! parentheses. Juxtaposition is rejected.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_bigint::BigInt;

use super::polynomial::Polynomial;
use super::signature::RingSignature;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    sig: &'a Arc<RingSignature>,
    src: &'a str,
    pos: usize,
    tok: Tok,
    tok_start: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn new(sig: &'a Arc<RingSignature>, src: &'a str) -> Result<Self> {
        let mut p = Parser { sig, src, pos: 0, tok: Tok::End, tok_start: 0 };
        p.advance()?;
        Ok(p)
    }

    fn advance(&mut self) -> Result<()> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        let c = b as char;
        self.tok = if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            Tok::Int(self.src[start..self.pos].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = self.pos;
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            Tok::Ident(self.src[start..self.pos].to_string())
        } else {
            self.pos += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    let ch = self.src[self.tok_start..].chars().next().unwrap();
                    return Err(syntax(self.tok_start, format!("unexpected character `{ch}`")));
                }
            }
        };
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.advance()?;
                    acc = &acc * &self.unary()?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(syntax(self.tok_start, "implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.tok {
            Tok::Minus => {
                self.advance()?;
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.advance()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.advance()?;
        let at = self.tok_start;
        let Tok::Int(e) = &self.tok else {
            return Err(syntax(at, "expected a non-negative integer exponent"));
        };
        let e: u32 = u32::try_from(e.clone()).ok().filter(|&e| e <= u16::MAX as u32).ok_or(Error::ExponentOverflow)?;
        self.advance()?;
        if self.tok == Tok::Caret {
            return Err(syntax(self.tok_start, "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.tok_start;
        match core::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(n) => {
                self.advance()?;
                Ok(Polynomial::constant(self.sig, self.sig.field().from_bigint(&n)))
            }
            Tok::Ident(name) => {
                let p = Polynomial::var_named(self.sig, &name)?;
                self.advance()?;
                Ok(p)
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(syntax(self.tok_start, "expected `)`"));
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::End => Err(syntax(at, "unexpected end of expression")),
            other => Err(syntax(at, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Parse a polynomial expression in the ring `sig`. Errors carry the byte
/// offset into `src`.
pub fn parse_polynomial(sig: &Arc<RingSignature>, src: &str) -> Result<Polynomial> {
    let mut p = Parser::new(sig, src)?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return Err(syntax(p.tok_start, format!("unexpected {}", describe(&p.tok))));
    }
    Ok(out)
}

impl Polynomial {
    pub fn parse(sig: &Arc<RingSignature>, src: &str) -> Result<Polynomial> {
        parse_polynomial(sig, src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::polyalg::field::FieldSpec;

    fn ring() -> Arc<RingSignature> {
        RingSignature::new(FieldSpec::Rationals, &["t", "x", "y"], Some("t")).unwrap()
    }

    #[test]
    fn precedence() {
        let r = ring();
        assert_eq!(parse_polynomial(&r, "-x^2").unwrap(), -&parse_polynomial(&r, "x*x").unwrap());
        assert_eq!(parse_polynomial(&r, "2*(x+y)^2 - (2*x^2 + 2*y^2)").unwrap(), parse_polynomial(&r, "4*x*y").unwrap());
        assert_eq!(parse_polynomial(&r, "x - y - t").unwrap(), parse_polynomial(&r, "x - (y + t)").unwrap());
    }

    #[test]
    fn errors_have_offsets() {
        let r = ring();
        assert!(matches!(parse_polynomial(&r, "2x"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_polynomial(&r, "x + "), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse_polynomial(&r, "(x"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polynomial(&r, "x $ y"), Err(Error::Syntax { offset: 2, .. })));
        assert_eq!(parse_polynomial(&r, "x + w"), Err(Error::UnknownVariable("w".into())));
    }

    #[test]
    fn printing_round_trips() {
        let r = ring();
        for s in ["t - x^2", "x*y - x^3", "-1 + 2*x*y^3", "0", "t^4 - x*y"] {
            let p = parse_polynomial(&r, s).unwrap();
            assert_eq!(parse_polynomial(&r, &p.to_string()).unwrap(), p);
        }
    }
}
