//! Parser for field elements written as arithmetic expressions, e.g.
//! `"3/4"`, `"5*T^3 - T^-2"`, `"(Z^2 - 1)/(4*Z^3 + 4*Z + 4)"`.

use num_bigint::BigInt;
use thiserror::Error;

use super::{ConstField, Rational, RationalFunction, TruncatedLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

/// A field whose elements can be written with rational constants and named
/// variables.
pub trait ParseTarget: ConstField {
    fn variable(name: &str) -> Option<Self>;
}

impl ParseTarget for Rational {
    fn variable(_: &str) -> Option<Self> {
        None
    }
}

impl ParseTarget for TruncatedLaurent {
    fn variable(name: &str) -> Option<Self> {
        (name == "T").then(TruncatedLaurent::t)
    }
}

impl ParseTarget for RationalFunction<Rational> {
    fn variable(name: &str) -> Option<Self> {
        (name == "Z").then(RationalFunction::variable)
    }
}

/// `ℚ(T)(Z)`: outer variable `Z`, coefficients rational functions in `T`.
impl ParseTarget for RationalFunction<RationalFunction<Rational>> {
    fn variable(name: &str) -> Option<Self> {
        match name {
            "Z" => Some(RationalFunction::variable()),
            "T" => Some(RationalFunction::constant(RationalFunction::variable())),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
            let digits: String = chars[i..j].iter().collect();
            out.push(Tok::Num(digits.parse().map_err(|e| format!("{e}"))?));
            i = j;
        } else if c.is_alphabetic() {
            let j = (i..chars.len()).find(|&j| !chars[j].is_alphanumeric()).unwrap_or(chars.len());
            out.push(Tok::Ident(chars[i..j].iter().collect()));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    toks: &'a [Tok],
    pos: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F: ParseTarget> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<F, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<F, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.times(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.try_div(&d).map_err(|e| e.to_string())?;
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                // implicit multiplication: 5T^3, 2(Z+1)
                acc = acc.times(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<F, String> {
        if self.eat('-') {
            Ok(self.unary()?.negated())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<F, String> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => u32::try_from(n).map_err(|_| "exponent too large".to_string())?,
            _ => return Err("expected integer exponent".into()),
        };
        self.pos += 1;
        let p = base.pow(e);
        if neg {
            p.try_inv().map_err(|e| e.to_string())
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<F, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(F::from_rational(&Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                F::variable(&name).ok_or_else(|| format!("unknown variable {name:?}"))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err("missing ')'".into());
                }
                Ok(v)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

/// Parses one field element.
pub fn parse_element<F: ParseTarget>(s: &str) -> Result<F, ParseError> {
    let err = |reason: String| ParseError {
        input: s.to_string(),
        reason,
    };
    let toks = lex(s).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty expression".into()));
    }
    let mut p = Parser::<F> {
        toks: &toks,
        pos: 0,
        _f: std::marker::PhantomData,
    };
    let v = p.expr().map_err(err)?;
    if p.pos != toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

/// Parses a comma- (or newline-) separated list of elements.
pub fn parse_list<F: ParseTarget>(s: &str) -> Result<Vec<F>, ParseError> {
    s.split([',', '\n', ';'])
        .map(str::trim)
        .filter(|p| !p.is_empty() && !p.starts_with('#'))
        .map(parse_element)
        .collect()
}
