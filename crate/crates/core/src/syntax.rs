//! Tokenizer and recursive-descent parser shared by words and equations.
//!
//! Grammar (whitespace and `*` ignored):
//!
//! ```text
//! equation := product ( '=' product )?
//! product  := item*
//! item     := primary exponent?
//! primary  := ident | '1' | '(' product ')' | '[' product ',' product ']'
//! exponent := '^' int | superscript-int
//! ```
//!
//! `a`, `t` are the generators, other identifiers are variables; an uppercase
//! leading letter denotes the inverse. `[U,V]` is `U^-1 V^-1 U V` and
//! `lhs = rhs` is `lhs rhs^-1`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Repetition cap for exponents on variables and bracketed groups.
const MAX_REPEAT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Raw {
    A(BigInt),
    T(BigInt),
    Var { name: String, inverse: bool },
}

pub(crate) fn invert(seq: &[Raw]) -> Vec<Raw> {
    seq.iter()
        .rev()
        .map(|r| match r {
            Raw::A(k) => Raw::A(-k),
            Raw::T(k) => Raw::T(-k),
            Raw::Var { name, inverse } => Raw::Var {
                name: name.clone(),
                inverse: !inverse,
            },
        })
        .collect()
}

pub(crate) fn parse(text: &str) -> Result<Vec<Raw>> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let lhs = p.product()?;
    p.skip_ws();
    let out = if p.eat('=') {
        let rhs = p.product()?;
        let mut v = lhs;
        v.extend(invert(&rhs));
        v
    } else {
        lhs
    };
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '*' || c == '·' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn product(&mut self) -> Result<Vec<Raw>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some('=') | Some(')') | Some(']') | Some(',') => return Ok(out),
                _ => out.extend(self.item()?),
            }
        }
    }

    fn item(&mut self) -> Result<Vec<Raw>> {
        let start = self.pos;
        let c = self.peek().unwrap();
        let base: Vec<Raw> = if c.is_ascii_alphabetic() {
            self.ident()
        } else if c == '1' {
            self.pos += 1;
            if self.peek().is_some_and(|d| d.is_ascii_digit()) {
                return Err(self.err("only `1` may appear as a literal".into()));
            }
            Vec::new()
        } else if c == '(' {
            self.pos += 1;
            let inner = self.product()?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.err("expected `)`".into()));
            }
            inner
        } else if c == '[' {
            self.pos += 1;
            let u = self.product()?;
            self.skip_ws();
            if !self.eat(',') {
                return Err(self.err("expected `,` in commutator".into()));
            }
            let v = self.product()?;
            self.skip_ws();
            if !self.eat(']') {
                return Err(self.err("expected `]`".into()));
            }
            let mut w = invert(&u);
            w.extend(invert(&v));
            w.extend(u);
            w.extend(v);
            w
        } else {
            return Err(self.err(format!("unexpected `{c}`")));
        };
        let Some(k) = self.exponent()? else {
            return Ok(base);
        };
        // single generators keep big exponents compressed
        if let [single] = base.as_slice() {
            match single {
                Raw::A(e) => return Ok(vec![Raw::A(e * k)]),
                Raw::T(e) => return Ok(vec![Raw::T(e * k)]),
                Raw::Var { .. } => {}
            }
        }
        let reps = k
            .abs()
            .to_u64()
            .filter(|&r| r <= MAX_REPEAT)
            .ok_or(Error::Syntax {
                pos: start,
                msg: format!("exponent {k} too large to expand"),
            })?;
        let unit = if k.is_negative() { invert(&base) } else { base };
        let mut out = Vec::with_capacity(unit.len() * reps as usize);
        for _ in 0..reps {
            out.extend(unit.iter().cloned());
        }
        Ok(out)
    }

    fn ident(&mut self) -> Vec<Raw> {
        let first = self.chars[self.pos];
        self.pos += 1;
        let mut suffix = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '_' {
                suffix.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        let inverse = first.is_ascii_uppercase();
        let lower = first.to_ascii_lowercase();
        let sign = if inverse { -1 } else { 1 };
        if suffix.is_empty() && lower == 'a' {
            return vec![Raw::A(BigInt::from(sign))];
        }
        if suffix.is_empty() && lower == 't' {
            return vec![Raw::T(BigInt::from(sign))];
        }
        vec![Raw::Var {
            name: format!("{lower}{suffix}"),
            inverse,
        }]
    }

    fn exponent(&mut self) -> Result<Option<BigInt>> {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        match self.peek() {
            Some('^') => {
                self.pos += 1;
                self.skip_ws();
                let close = if self.eat('{') {
                    Some('}')
                } else if self.eat('(') {
                    Some(')')
                } else {
                    None
                };
                let start = self.pos;
                if matches!(self.peek(), Some('-') | Some('+')) {
                    self.pos += 1;
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let k: BigInt = s
                    .parse()
                    .map_err(|_| self.err(format!("bad exponent `{s}`")))?;
                if let Some(c) = close {
                    if !self.eat(c) {
                        return Err(self.err(format!("expected `{c}`")));
                    }
                }
                Ok(Some(k))
            }
            Some(c) if c == '⁻' || SUP.contains(&c) => {
                let neg = self.eat('⁻');
                let mut k = BigInt::zero();
                let mut any = false;
                while let Some(d) = self.peek().and_then(|c| SUP.iter().position(|&s| s == c)) {
                    k = k * 10 + d;
                    any = true;
                    self.pos += 1;
                }
                if !any {
                    return Err(self.err("bad superscript exponent".into()));
                }
                Ok(Some(if neg { -k } else { k }))
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(name: &str, inverse: bool) -> Raw {
        Raw::Var {
            name: name.into(),
            inverse,
        }
    }

    #[test]
    fn generators_and_inverses() {
        let r = parse("a t A T").unwrap();
        assert_eq!(
            r,
            vec![
                Raw::A(1.into()),
                Raw::T(1.into()),
                Raw::A((-1).into()),
                Raw::T((-1).into())
            ]
        );
    }

    #[test]
    fn commutator_sugar() {
        let r = parse("[x,y]").unwrap();
        assert_eq!(
            r,
            vec![var("x", true), var("y", true), var("x", false), var("y", false)]
        );
    }

    #[test]
    fn exponents_expand_variables_only() {
        let r = parse("x^2 a^-100000000000000000000 z^-1").unwrap();
        assert_eq!(r[0], var("x", false));
        assert_eq!(r[1], var("x", false));
        assert_eq!(r[2], Raw::A("-100000000000000000000".parse().unwrap()));
        assert_eq!(r[3], var("z", true));
        assert_eq!(parse("z⁻¹").unwrap(), vec![var("z", true)]);
        assert_eq!(parse("t²").unwrap(), vec![Raw::T(2.into())]);
    }

    #[test]
    fn equals_sign_moves_rhs() {
        let r = parse("x = a t").unwrap();
        assert_eq!(
            r,
            vec![var("x", false), Raw::T((-1).into()), Raw::A((-1).into())]
        );
    }

    #[test]
    fn identity_literal_and_indexed_names() {
        assert_eq!(parse("1").unwrap(), vec![]);
        assert_eq!(parse("Z12").unwrap(), vec![var("z12", true)]);
        assert_eq!(parse("a1").unwrap(), vec![var("a1", false)]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x ? y") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse("[x,y").is_err());
        assert!(parse("a^").is_err());
        assert!(parse("12").is_err());
    }
}
