//! Precedence-climbing parser for polynomial and scalar expressions.
//!
//! Grammar: rational literals (`3`, `3/4`), `zeta(m)` for a primitive
//! m-th root of unity, generator names, `+ - * ^ ( )` and unary minus.
//! `*` is noncommutative and left-associative; `^` binds tightest and takes
//! a nonnegative integer literal.

use std::fmt;

use nckit_core::kernel::{CycloScalar, NcPoly, Rational, Word};
use num::{BigInt, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Num(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|p| p.1).collect())));
        } else {
            let t = match c {
                '+' | '-' | '*' | '^' | '/' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        pos,
                        msg: format!("unexpected character '{c}'"),
                    })
                }
            };
            out.push((pos, t));
            i += 1;
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    names: &'a [String],
    degrees: &'a [u32],
}

fn binary_prec(t: &Tok) -> Option<u8> {
    match t {
        Tok::Op('+') | Tok::Op('-') => Some(1),
        Tok::Op('*') => Some(2),
        _ => None,
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
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

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self, min_prec: u8) -> Result<NcPoly, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(p) = binary_prec(self.peek()) {
            if p < min_prec {
                break;
            }
            let op = self.bump();
            let rhs = self.expr(p + 1)?;
            lhs = match op {
                Tok::Op('+') => &lhs + &rhs,
                Tok::Op('-') => &lhs - &rhs,
                _ => &lhs * &rhs,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<NcPoly, ParseError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            let inner = self.unary()?;
            return Ok(inner.scale(&CycloScalar::from_i64(-1)));
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let e = u32::try_from(&n).or_else(|_| self.err("exponent too large"))?;
                self.bump();
                Ok(e)
            }
            _ => self.err("exponent must be a nonnegative integer literal"),
        }
    }

    fn power(&mut self) -> Result<NcPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        let mut out = NcPoly::one();
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<NcPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                let mut r = Rational::from_integer(n);
                if *self.peek() == Tok::Op('/') {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Num(d) if !d.is_zero() => {
                            self.bump();
                            r /= Rational::from_integer(d);
                        }
                        Tok::Num(_) => return self.err("division by zero"),
                        _ => return self.err("expected denominator after '/'"),
                    }
                }
                Ok(NcPoly::constant(CycloScalar::from_rational(r)))
            }
            Tok::Ident(name) => {
                if name == "zeta" && self.toks.get(self.at + 1).map(|t| &t.1) == Some(&Tok::LParen) {
                    self.bump();
                    self.bump();
                    let m = match self.peek().clone() {
                        Tok::Num(m) if !m.is_zero() && m <= BigInt::from(10_000) => {
                            u32::try_from(&m).unwrap()
                        }
                        _ => return self.err("zeta order must be a positive integer"),
                    };
                    self.bump();
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(NcPoly::constant(CycloScalar::root_of_unity(m, 1)));
                }
                match self.names.iter().position(|n| *n == name) {
                    Some(l) => {
                        self.bump();
                        Ok(NcPoly::word(Word::letter(l as u16, self.degrees)))
                    }
                    None => self.err(format!("unknown identifier '{name}'")),
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr(1)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::RParen => self.err("unbalanced ')'"),
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(format!("unexpected operator '{c}'")),
        }
    }
}

/// Parses `src` over generators `names` (letters in the given order).
pub fn parse_poly(src: &str, names: &[String], degrees: &[u32]) -> Result<NcPoly, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        names,
        degrees,
    };
    let e = p.expr(1)?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => p.err("unbalanced ')'"),
        _ => p.err("unexpected token"),
    }
}

/// Parses an expression without generators.
pub fn parse_scalar(src: &str) -> Result<CycloScalar, ParseError> {
    let p = parse_poly(src, &[], &[])?;
    if p.is_zero() {
        return Ok(CycloScalar::zero());
    }
    match p.leading() {
        Some((w, c)) if w.is_empty() && p.len() == 1 => Ok(c.clone()),
        _ => Err(ParseError {
            pos: 0,
            msg: "expected a scalar".into(),
        }),
    }
}

/// Orders of all `zeta(m)` literals appearing in `src`.
pub fn zeta_orders(src: &str) -> Vec<u32> {
    let toks = match lex(src) {
        Ok(t) => t,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::new();
    for w in toks.windows(3) {
        if let (Tok::Ident(z), Tok::LParen, Tok::Num(m)) = (&w[0].1, &w[1].1, &w[2].1) {
            if z == "zeta" {
                if let Ok(m) = u32::try_from(m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn p(s: &str) -> NcPoly {
        parse_poly(s, &names(), &[1, 1]).unwrap()
    }

    fn w(l: &[u16]) -> NcPoly {
        NcPoly::word(Word::new(l, &[1, 1]))
    }

    #[test]
    fn commutator() {
        assert_eq!(p("x*y - y*x"), &w(&[0, 1]) - &w(&[1, 0]));
    }

    #[test]
    fn down_up_relation() {
        let two = CycloScalar::from_i64(2);
        let expect = &(&w(&[0, 0, 1]) - &w(&[0, 1, 0]).scale(&two)) + &w(&[1, 0, 0]);
        assert_eq!(p("x^2*y - 2*x*y*x + y*x^2"), expect);
    }

    #[test]
    fn zeta_two_is_minus_one() {
        assert_eq!(p("x*y + zeta(2)^1*y*x"), p("x*y - y*x"));
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(p("-x^2"), w(&[0, 0]).scale(&CycloScalar::from_i64(-1)));
        assert_eq!(p("(x+y)^2"), &(&(&w(&[0, 0]) + &w(&[0, 1])) + &w(&[1, 0])) + &w(&[1, 1]));
        assert_eq!(p("x - y - x"), w(&[1]).scale(&CycloScalar::from_i64(-1)));
        assert_eq!(p("3/4*x"), w(&[0]).scale(&CycloScalar::from_ratio(3, 4)));
        assert_eq!(p("x^0"), NcPoly::one());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x + z", &names(), &[1, 1]).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.msg.contains("unknown identifier"));
        let e = parse_poly("(x + y", &names(), &[1, 1]).unwrap_err();
        assert!(e.msg.contains("')'"));
        let e = parse_poly("x + y)", &names(), &[1, 1]).unwrap_err();
        assert!(e.msg.contains("unbalanced"));
        let e = parse_poly("x^y", &names(), &[1, 1]).unwrap_err();
        assert!(e.msg.contains("exponent"));
        assert!(parse_poly("x^-1", &names(), &[1, 1]).is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("zeta(4)^2").unwrap(), CycloScalar::from_i64(-1));
        assert_eq!(parse_scalar("-1/2").unwrap(), CycloScalar::from_ratio(-1, 2));
        assert!(parse_scalar("x").is_err());
        assert_eq!(zeta_orders("1 + zeta(6)^2*x - zeta(4)"), vec![6, 4]);
    }
}
