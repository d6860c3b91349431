//! Expression syntax shared by scalars and polynomials.
//!
//! Grammar: sums of products of powers. Atoms are integers, `z` (the chosen
//! primitive root of unity), `i` (a square root of -1), variables such as `x2`
//! or `w1`, and parenthesised subexpressions. `/` only divides by scalars.

use crate::error::{parse_err, Result};
use crate::exactnum::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rat),
    Zeta,
    ImagUnit,
    Var(char, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Target of expression evaluation.
pub trait Evaluate: Sized {
    fn num(&mut self, r: &Rat) -> Result<Self::Value>;
    fn zeta(&mut self) -> Result<Self::Value>;
    fn imag_unit(&mut self) -> Result<Self::Value>;
    fn var(&mut self, prefix: char, index: usize) -> Result<Self::Value>;
    fn add(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&mut self, a: Self::Value) -> Result<Self::Value>;
    fn div(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn pow(&mut self, a: Self::Value, e: i64) -> Result<Self::Value>;

    type Value;
}

impl Expr {
    pub fn eval<E: Evaluate>(&self, ev: &mut E) -> Result<E::Value> {
        match self {
            Expr::Num(r) => ev.num(r),
            Expr::Zeta => ev.zeta(),
            Expr::ImagUnit => ev.imag_unit(),
            Expr::Var(c, i) => ev.var(*c, *i),
            Expr::Add(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                let nb = ev.neg(b)?;
                ev.add(a, nb)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.mul(a, b)
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.div(a, b)
            }
            Expr::Neg(a) => {
                let a = a.eval(ev)?;
                ev.neg(a)
            }
            Expr::Pow(a, e) => {
                let a = a.eval(ev)?;
                ev.pow(a, *e)
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, src };
    p.skip_ws();
    if p.pos == p.s.len() {
        return Err(parse_err("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> crate::error::Error {
        parse_err(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                b'-' => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                b'/' => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = i64::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        self.src[start..self.pos].parse::<u64>().map_err(|_| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let r: Rat = self.src[start..self.pos].parse().map_err(|e: String| parse_err(e))?;
                Ok(Expr::Num(r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let dstart = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let prefix = c as char;
                if dstart == self.pos {
                    return match prefix {
                        'z' => Ok(Expr::Zeta),
                        'i' => Ok(Expr::ImagUnit),
                        _ => {
                            self.pos = start;
                            Err(self.error("unknown identifier"))
                        }
                    };
                }
                let idx: usize = self.src[dstart..self.pos].parse().map_err(|_| self.error("bad index"))?;
                if idx == 0 {
                    self.pos = start;
                    return Err(self.error("variable indices start at 1"));
                }
                Ok(Expr::Var(prefix, idx - 1))
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}
