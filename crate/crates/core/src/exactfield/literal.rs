//! Parser for tower literals such as `(1/2)+(-1)*zeta^3`, `3^(-1/4)*i`,
//! `0.25-0.5i` or a decimal pair `0.1,-0.2`.
//!
//! Recognised names: `zeta`/`z` (ζ), `rho` (ζ⁴), `i`/`I` (ζ³), `sqrt3`,
//! `alpha` (3^(1/4)). Decimals are read exactly as rationals.

use num_bigint::BigInt;

use super::tower::TowerElem;
use super::FieldError;
use crate::scalar::{Field, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Name(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, FieldError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' => k += 1,
            '+' | '*' | '/' | '^' | '(' | ')' => {
                out.push((k, Tok::Op(c)));
                k += 1;
            }
            '-' | '\u{2212}' => {
                out.push((k, Tok::Op('-')));
                k += 1;
            }
            '0'..='9' | '.' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                let text: String = chars[start..k].iter().collect();
                out.push((start, Tok::Num(parse_decimal(&text, start)?)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                    k += 1;
                }
                out.push((start, Tok::Name(chars[start..k].iter().collect())));
            }
            other => {
                return Err(FieldError::Parse {
                    pos: k,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str, pos: usize) -> Result<Rational, FieldError> {
    let bad = || FieldError::Parse {
        pos,
        msg: format!("malformed number {text:?}"),
    };
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(Rational::new(n, BigInt::from(10u32).pow(frac.len() as u32)))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err(&self, msg: impl Into<String>) -> FieldError {
        FieldError::Parse {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<TowerElem, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TowerElem, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| FieldError::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else if matches!(self.peek(), Some(Tok::Name(_))) {
                // implicit product, e.g. `0.5i` or `2zeta`
                acc = acc * self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<TowerElem, FieldError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<TowerElem, FieldError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.here();
        let exp = self.exponent()?;
        let fail = |msg: &str| FieldError::Parse {
            pos: at,
            msg: msg.into(),
        };
        if exp.is_integer() {
            let e = i64::try_from(exp.to_integer()).map_err(|_| fail("exponent too large"))?;
            return base.pow(e).ok_or_else(|| fail("zero to a negative power"));
        }
        // fractional powers only for 3: 3^(k/4) = alpha^k
        let quarters = exp * Rational::from_integer(4.into());
        if base == TowerElem::from_ints([3, 0, 0, 0]) && quarters.is_integer() {
            let k = i64::try_from(quarters.to_integer()).map_err(|_| fail("exponent too large"))?;
            return Ok(TowerElem::fourth_root3_pow(k));
        }
        Err(fail("fractional exponents are only supported as 3^(k/4)"))
    }

    fn exponent(&mut self) -> Result<Rational, FieldError> {
        let e = if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            e
        } else {
            self.unary()?
        };
        e.as_rational()
            .cloned()
            .ok_or_else(|| self.err("exponent must be rational"))
    }

    fn atom(&mut self) -> Result<TowerElem, FieldError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(q) => Ok(TowerElem::from_rational(&q)),
            Tok::Name(name) => match name.as_str() {
                "zeta" | "z" => Ok(TowerElem::zeta()),
                "rho" => Ok(TowerElem::rho()),
                "i" | "I" => Ok(TowerElem::i()),
                "sqrt3" => Ok(TowerElem::sqrt3()),
                "alpha" => Ok(TowerElem::alpha()),
                _ => {
                    self.pos -= 1;
                    Err(self.err(format!("unknown name {name:?}")))
                }
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Tok::Op(c) => {
                self.pos -= 1;
                Err(self.err(format!("unexpected {c:?}")))
            }
        }
    }
}

fn parse_expr(src: &str, offset: usize) -> Result<TowerElem, FieldError> {
    let toks = lex(src).map_err(|e| e.shifted(offset))?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: src.chars().count(),
    };
    let v = p.expr().map_err(|e| e.shifted(offset))?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input").shifted(offset));
    }
    Ok(v)
}

/// Parses a tower literal or a `re,im` pair.
pub fn parse_tower(src: &str) -> Result<TowerElem, FieldError> {
    match src.split_once(',') {
        Some((re, im)) => {
            let re = parse_expr(re, 0)?;
            let im = parse_expr(im, re_len(src))?;
            Ok(re + im * TowerElem::i())
        }
        None => parse_expr(src, 0),
    }
}

fn re_len(src: &str) -> usize {
    src.chars().take_while(|&c| c != ',').count() + 1
}

impl FieldError {
    fn shifted(self, by: usize) -> Self {
        match self {
            FieldError::Parse { pos, msg } => FieldError::Parse { pos: pos + by, msg },
            other => other,
        }
    }
}

impl std::str::FromStr for TowerElem {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tower(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Scalar};

    #[test]
    fn spec_style_literal() {
        let x = parse_tower("(1/2)+(-1)*zeta^3").unwrap();
        assert_eq!(x, TowerElem::rational(ratio(1, 2)) - TowerElem::i());
        let y = parse_tower("(1/2)+(\u{2212}1)*zeta^3").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn names_and_powers() {
        assert_eq!(parse_tower("rho").unwrap(), TowerElem::zeta_pow(4));
        assert_eq!(parse_tower("3^(1/4)").unwrap(), TowerElem::alpha());
        assert_eq!(parse_tower("3^(-1/4)*3^(1/4)").unwrap(), TowerElem::from_i64(1));
        assert_eq!(parse_tower("zeta^-1").unwrap(), TowerElem::zeta().conj());
        assert_eq!(parse_tower("sqrt3^2").unwrap(), TowerElem::from_i64(3));
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_tower("0.25").unwrap(), TowerElem::rational(ratio(1, 4)));
        assert_eq!(
            parse_tower("0.5-1.5i").unwrap(),
            TowerElem::rational(ratio(1, 2)) - TowerElem::i().scale(&ratio(3, 2))
        );
        assert_eq!(
            parse_tower("0.1,-0.2").unwrap(),
            TowerElem::rational(ratio(1, 10)) - TowerElem::i().scale(&ratio(1, 5))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_tower("1 + foo") {
            Err(FieldError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_tower("2^(1/2)").is_err());
        assert!(parse_tower("1/0").is_err());
        assert!(parse_tower("(1").is_err());
    }
}
