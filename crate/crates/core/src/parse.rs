//! Text syntax for field elements and polynomials.
//!
//! Two polynomial forms are accepted:
//!
//! * a comma-separated coefficient list, highest power first:
//!   `1, 2, 3/2, 1/2, -7/16`
//! * an expression in `z` (or `x`): `z^4+2z^3+3/2z^2+1/2z-7/16`,
//!   `w*z^2 + (1+2*w)*z`, `(z+1)^2`.
//!
//! Literals `p/q` bind tighter than anything else, so `3/2z` is `(3/2)*z`.
//! Juxtaposition multiplies. `w` is the cube root of unity and `i` the
//! imaginary unit (approximate backend only).

use crate::error::ParseError;
use crate::field::Field;
use crate::poly::Polynomial;

/// Exponents above this are rejected to keep expansion bounded.
const MAX_EXPONENT: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var,
    Omega,
    Imag,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((start, Tok::Num(input[start..i].to_string())));
                continue;
            }
            'z' | 'x' => Tok::Var,
            'w' => Tok::Omega,
            'i' => Tok::Imag,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError::new(start, format!("unexpected character {other:?}")));
            }
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser<'a, F> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    _input: &'a str,
    _field: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn new(input: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(input)?,
            pos: 0,
            end: input.len(),
            _input: input,
            _field: std::marker::PhantomData,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn parse_all(&mut self) -> Result<Polynomial<F>, ParseError> {
        if self.toks.is_empty() {
            return Err(ParseError::new(0, "empty input"));
        }
        let p = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(ParseError::new(self.offset(), "unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    if d.degree() > 0 {
                        return Err(ParseError::new(at, "division by a non-constant"));
                    }
                    let inv = d
                        .coeff(0)
                        .inv()
                        .map_err(|_| ParseError::new(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_) | Tok::Var | Tok::Omega | Tok::Imag | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F>, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exp = match self.bump() {
            Some(Tok::Num(s)) => s
                .parse::<usize>()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| ParseError::new(at, format!("invalid exponent {s:?}")))?,
            _ => return Err(ParseError::new(at, "expected an integer exponent")),
        };
        let mut acc = Polynomial::constant(F::one());
        for _ in 0..exp {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Polynomial<F>, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(s)) => F::from_literal(&s)
                .map(Polynomial::constant)
                .ok_or_else(|| ParseError::new(at, format!("invalid number {s:?}"))),
            Some(Tok::Var) => Ok(Polynomial::identity()),
            Some(Tok::Omega) => Ok(Polynomial::constant(F::omega())),
            Some(Tok::Imag) => F::imaginary_unit().map(Polynomial::constant).ok_or_else(|| {
                ParseError::new(at, "the imaginary unit is not available in exact mode")
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(ParseError::new(self.offset().min(self.end), "expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(ParseError::new(at, "unexpected token")),
            None => Err(ParseError::new(self.end, "unexpected end of input")),
        }
    }
}

fn parse_expression<F: Field>(input: &str) -> Result<Polynomial<F>, ParseError> {
    Parser::<F>::new(input)?.parse_all()
}

/// Parses either polynomial form.
pub fn parse_polynomial<F: Field>(input: &str) -> Result<Polynomial<F>, ParseError> {
    if !input.contains(',') {
        return parse_expression(input);
    }
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for piece in input.split(',') {
        let c = parse_element::<F>(piece).map_err(|e| ParseError {
            position: e.position + offset,
            message: e.message,
        })?;
        coeffs.push(c);
        offset += piece.len() + 1;
    }
    Ok(Polynomial::from_descending(coeffs))
}

/// Parses a constant such as `3/2`, `1/2-3/4*w`, `w^2` or `1.5+2i`.
pub fn parse_element<F: Field>(input: &str) -> Result<F, ParseError> {
    let p = parse_expression::<F>(input)?;
    if p.degree() > 0 {
        let at = input.find(['z', 'x']).unwrap_or(0);
        return Err(ParseError::new(at, "expected a constant, found the variable"));
    }
    Ok(p.coeff(0))
}
