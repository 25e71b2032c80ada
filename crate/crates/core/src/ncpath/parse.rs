//! Text syntax: arrow names, a `*` suffix for starred arrows, `t`, `e(v)`,
//! `+ - * ^`, parentheses and rational literals such as `3/4`.
//!
//! A `*` directly after an arrow name is a star when the next token cannot
//! start a factor, so `a*b` is a product, `a* * b` and `a**b` multiply `a*`
//! by `b`, and `a*^2` squares `a*`.

use super::poly::PathPoly;
use crate::error::{Error, Result};
use crate::quiver::DoubledQuiver;
use crate::scalar::Ring;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(i64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn err(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: msg.to_string(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i]
                    .parse()
                    .map_err(|_| err(start, "integer literal too large"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => return Err(err(start, "unexpected character")),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, R: Ring> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    dq: &'a DoubledQuiver,
    ctx: &'a R::Ctx,
}

impl<'a, R: Ring> Parser<'a, R> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, msg: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), msg))
        }
    }

    fn expr(&mut self) -> Result<PathPoly<R>> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PathPoly<R>> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.factor()?;
            acc = acc.checked_mul(&rhs, pos)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PathPoly<R>> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let Tok::Num(e) = self.bump() else {
            return Err(err(pos + 1, "expected exponent"));
        };
        let mut acc = PathPoly::one(self.ctx, self.dq);
        for _ in 0..e {
            acc = acc.checked_mul(&base, pos)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<PathPoly<R>> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => {
                let mut d = 1;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let p = self.pos();
                    let Tok::Num(x) = self.bump() else {
                        return Err(err(p, "expected denominator"));
                    };
                    d = x;
                }
                let c = R::from_ratio(self.ctx, n, d)
                    .ok_or_else(|| err(pos, "denominator not invertible"))?;
                Ok(PathPoly::one(self.ctx, self.dq).scale(&c))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "expected ')'")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "t" => Ok(PathPoly::t_pow(self.ctx, self.dq, 1)),
            Tok::Ident(name) if name == "e" && *self.peek() == Tok::LParen => {
                self.bump();
                let p = self.pos();
                let Tok::Ident(v) = self.bump() else {
                    return Err(err(p, "expected vertex name"));
                };
                let i = self
                    .dq
                    .find_vertex(&v)
                    .ok_or_else(|| err(p, "unknown vertex"))?;
                self.expect(Tok::RParen, "expected ')'")?;
                Ok(PathPoly::idempotent(self.ctx, i))
            }
            Tok::Ident(mut name) => {
                let star = *self.peek() == Tok::Star
                    && matches!(
                        self.peek2(),
                        Tok::End | Tok::RParen | Tok::Plus | Tok::Minus | Tok::Star | Tok::Caret
                    );
                if star {
                    self.bump();
                    name.push('*');
                }
                let h = self
                    .dq
                    .find_arrow(&name)
                    .ok_or_else(|| err(pos, "unknown arrow"))?;
                Ok(PathPoly::arrow(self.ctx, self.dq, h))
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            _ => Err(err(pos, "unexpected token")),
        }
    }
}

pub fn parse_path<R: Ring>(src: &str, dq: &DoubledQuiver, ctx: &R::Ctx) -> Result<PathPoly<R>> {
    let mut p = Parser::<R> {
        toks: lex(src)?,
        at: 0,
        dq,
        ctx,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}
