//! Parser for symbolic coordinate expressions.
//!
//! Grammar (usual precedence, `*` and `/` bind tighter than `+` and `-`,
//! `^` tighter still, unary minus between):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' integer)*
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Integers are unbounded, exponents are nonnegative, variables must come
//! from the chart's variable list, and multiplication is always explicit.

use num_bigint::BigInt;

use crate::error::Error;
use crate::exactmath::poly::{Polynomial, VarSet};
use crate::exactmath::ratfunc::RationalFunction;
use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    column: usize,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::ParseError { column, message: message.into() }
}

fn tokenize(input: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                tokens.push(Token { kind: TokenKind::Plus, column });
                i += 1;
            }
            '-' => {
                tokens.push(Token { kind: TokenKind::Minus, column });
                i += 1;
            }
            '*' => {
                tokens.push(Token { kind: TokenKind::Star, column });
                i += 1;
            }
            '/' => {
                tokens.push(Token { kind: TokenKind::Slash, column });
                i += 1;
            }
            '^' => {
                tokens.push(Token { kind: TokenKind::Caret, column });
                i += 1;
            }
            '(' => {
                tokens.push(Token { kind: TokenKind::LParen, column });
                i += 1;
            }
            ')' => {
                tokens.push(Token { kind: TokenKind::RParen, column });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text.parse::<BigInt>().expect("digit run parses");
                tokens.push(Token { kind: TokenKind::Int(value), column });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                tokens.push(Token { kind: TokenKind::Ident(name), column });
            }
            other => return Err(err(column, format!("unexpected character `{}`", other))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a VarSet,
    end_column: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.column).unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RationalFunction, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(TokenKind::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(TokenKind::Slash) => {
                    let column = self.column();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| err(column, "division by an expression that is identically zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, Error> {
        if matches!(self.peek(), Some(TokenKind::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(TokenKind::Caret)) {
            self.bump();
            let column = self.column();
            match self.bump().map(|t| t.kind) {
                Some(TokenKind::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| err(column, "exponent too large"))?;
                    base = base.pow(e);
                }
                _ => return Err(err(column, "expected a nonnegative integer exponent after `^`")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, Error> {
        let column = self.column();
        match self.bump().map(|t| t.kind) {
            Some(TokenKind::Int(n)) => Ok(RationalFunction::constant(
                self.vars,
                Rational::from_integer(n),
            )),
            Some(TokenKind::Ident(name)) => {
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                Ok(RationalFunction::var(self.vars, i))
            }
            Some(TokenKind::LParen) => {
                let inner = self.expr()?;
                match self.bump().map(|t| t.kind) {
                    Some(TokenKind::RParen) => Ok(inner),
                    _ => Err(err(self.end_column, "expected `)`")),
                }
            }
            Some(_) => Err(err(column, "expected a number, variable, or `(`")),
            None => Err(err(column, "unexpected end of expression")),
        }
    }
}

/// Parse an expression over the given chart variables into a canonical
/// rational function.
pub fn parse_expression(input: &str, vars: &VarSet) -> Result<RationalFunction, Error> {
    let tokens = tokenize(input)?;
    let end_column = input.chars().count() + 1;
    let mut parser = Parser { tokens, pos: 0, vars, end_column };
    let value = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(err(parser.column(), "unexpected trailing input"));
    }
    Ok(value)
}

/// Parse an expression that must be polynomial (trivial denominator).
pub fn parse_polynomial(input: &str, vars: &VarSet) -> Result<Polynomial, Error> {
    let f = parse_expression(input, vars)?;
    match f.as_polynomial() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::ParseError {
            column: 1,
            message: format!("`{}` is not a polynomial", input),
        }),
    }
}
