//! Parser for the text syntax shared by scalars and rational functions.
//!
//! Accepted atoms: integers, `l` (the variable `λ`), `i` (`ζ_4`), `zK`
//! (`ζ_K`, with `K` dividing the conductor), tower parameter names, and
//! `poly([c0,c1,...])`. Operators: `+ - * / ^` with integer exponents.

use thiserror::Error;

use super::{Poly, RatL};
use crate::scalars::{Scalar, Tower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected input at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdent(String),
    #[error("expression depends on l where a constant is required")]
    NotConstant,
    #[error("arithmetic error: {0}")]
    Arith(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v = s[st..i].parse().map_err(|_| ParseError::Syntax {
                pos: st,
                msg: "integer too large".into(),
            })?;
            out.push((st, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    tower: &'a Tower,
    end: usize,
}

impl Parser<'_> {
    fn l(&self) -> u32 {
        self.tower.conductor()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<RatL, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = arith(acc.try_add(&self.term()?))?;
            } else if self.eat('-') {
                acc = arith(acc.try_sub(&self.term()?))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatL, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = arith(acc.try_mul(&self.unary()?))?;
            } else if self.eat('/') {
                acc = arith(acc.try_div(&self.unary()?))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatL, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatL, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(v)) => *v as i64,
            _ => return self.err("expected integer exponent"),
        };
        self.at += 1;
        arith(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<RatL, ParseError> {
        let l = self.l();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(RatL::from_int(l, v as i64))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "poly" {
                    return self.poly_list();
                }
                self.ident(&name)
            }
            _ => self.err("expected a number, identifier or `(`"),
        }
    }

    fn poly_list(&mut self) -> Result<RatL, ParseError> {
        let l = self.l();
        self.expect('(')?;
        self.expect('[')?;
        let mut cs = Vec::new();
        if !self.eat(']') {
            loop {
                let c = self.expr()?.as_constant().ok_or(ParseError::NotConstant)?;
                cs.push(c);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        self.expect(')')?;
        Ok(RatL::from_poly(Poly::new(cs), l))
    }

    fn ident(&mut self, name: &str) -> Result<RatL, ParseError> {
        let l = self.l();
        if name == "l" {
            return Ok(RatL::lambda(l));
        }
        if let Some(var) = self.tower.index_of(name) {
            return Ok(RatL::constant(self.tower.param(var)));
        }
        if name == "i" {
            return self
                .tower
                .root(4, 1)
                .map(RatL::constant)
                .map_err(|e| ParseError::Arith(e.to_string()));
        }
        if let Some(k) = name.strip_prefix('z').and_then(|d| d.parse::<u32>().ok()) {
            if k == 0 {
                return Err(ParseError::UnknownIdent(name.into()));
            }
            return self
                .tower
                .root(k, 1)
                .map(RatL::constant)
                .map_err(|e| ParseError::Arith(e.to_string()));
        }
        Err(ParseError::UnknownIdent(name.into()))
    }
}

fn arith<T>(r: Result<T, crate::scalars::ScalarError>) -> Result<T, ParseError> {
    r.map_err(|e| ParseError::Arith(e.to_string()))
}

/// Parse a rational function of `l` over the given tower.
pub fn parse_ratl(s: &str, tower: &Tower) -> Result<RatL, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        tower,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a scalar (an expression not involving `l`).
pub fn parse_scalar(s: &str, tower: &Tower) -> Result<Scalar, ParseError> {
    parse_ratl(s, tower)?
        .as_constant()
        .ok_or(ParseError::NotConstant)
}
