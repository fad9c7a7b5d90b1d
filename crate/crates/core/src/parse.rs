//! Expression parser.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' natural]
//! atom   := natural | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are `q1..qn`, `p1..pn`, the context's parameters, and the
//! imaginary unit `i`. Exponents are nonnegative integer literals.

use num_bigint::BigInt;

use crate::context::PhaseContext;
use crate::error::{Error, Result};
use crate::expr::PhaseFunction;
use crate::number::{c_from_bigint, c_i};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push(Spanned { tok: Tok::Plus, pos: i });
                i += 1;
            }
            b'-' => {
                out.push(Spanned { tok: Tok::Minus, pos: i });
                i += 1;
            }
            b'*' => {
                out.push(Spanned { tok: Tok::Star, pos: i });
                i += 1;
            }
            b'/' => {
                out.push(Spanned { tok: Tok::Slash, pos: i });
                i += 1;
            }
            b'^' => {
                out.push(Spanned { tok: Tok::Caret, pos: i });
                i += 1;
            }
            b'(' => {
                out.push(Spanned { tok: Tok::LParen, pos: i });
                i += 1;
            }
            b')' => {
                out.push(Spanned { tok: Tok::RParen, pos: i });
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let value: BigInt = lit.parse().expect("digits");
                out.push(Spanned { tok: Tok::Num(value), pos: start });
            }
            c if (c as char).is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Spanned { tok: Tok::Ident(text[start..i].to_string()), pos: start });
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", bytes[i] as char),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    idx: usize,
    ctx: &'a PhaseContext,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|s| s.pos).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.bump() {
            Some(s) if s.tok == tok => Ok(()),
            Some(s) => Err(Error::Syntax { pos: s.pos, msg: format!("expected {what}") }),
            None => Err(Error::Syntax { pos: self.len, msg: format!("expected {what}, found end of input") }),
        }
    }

    fn expr(&mut self) -> Result<PhaseFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PhaseFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        let _ = pos;
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.div(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PhaseFunction> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<PhaseFunction> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Spanned { tok: Tok::Num(e), .. }) => {
                    let exp = u32::try_from(&e).map_err(|_| Error::ExponentTooLarge(u64::MAX))?;
                    if exp > 512 {
                        return Err(Error::ExponentTooLarge(exp as u64));
                    }
                    Ok(base.pow(exp))
                }
                _ => Err(Error::Syntax { pos, msg: "expected a nonnegative integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PhaseFunction> {
        let pos = self.pos();
        match self.bump() {
            Some(Spanned { tok: Tok::Num(n), .. }) => {
                Ok(PhaseFunction::constant(self.ctx, c_from_bigint(n)))
            }
            Some(Spanned { tok: Tok::Ident(name), .. }) => {
                if name == "i" {
                    return Ok(PhaseFunction::constant(self.ctx, c_i()));
                }
                match self.ctx.lookup(&name) {
                    Some(v) => Ok(PhaseFunction::var(self.ctx, v)),
                    None => Err(Error::UnknownIdentifier(name)),
                }
            }
            Some(Spanned { tok: Tok::LParen, .. }) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(s) => Err(Error::Syntax { pos: s.pos, msg: "expected a value".into() }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

pub fn parse(text: &str, ctx: &PhaseContext) -> Result<PhaseFunction> {
    let toks = lex(text)?;
    let mut p = Parser { toks, idx: 0, ctx, len: text.len() };
    let f = p.expr()?;
    if p.idx != p.toks.len() {
        return Err(Error::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(f)
}
