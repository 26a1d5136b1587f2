//! Recursive-descent parser for the `term "=" term` concrete syntax.
//!
//! ```text
//! equation ::= term "=" term
//! term     ::= ident | ident "(" term ("," term)* ")"
//! ```
//!
//! Whitespace is insignificant and identifiers are normalized to lowercase.

use thiserror::Error;

use crate::equation::{Equation, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("arity error at offset {offset}: `{op}` applied to {found} argument(s), expected 2")]
    Arity {
        offset: usize,
        op: String,
        found: usize,
    },
    #[error("not a functional equation: no operation symbol occurs")]
    NotFunctional,
    #[error("identifier `{0}` is used both as a variable and as an operation symbol")]
    NamespaceClash(String),
}

pub fn parse_equation(text: &str) -> Result<Equation, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let lhs = p.term()?;
    p.expect(b'=')?;
    let rhs = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Equation::new(lhs, rhs)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.error(&format!("expected `{}`", c as char))),
            None => Err(self.error(&format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if self.pos < self.src.len() {
                self.error("expected identifier")
            } else {
                self.error("expected identifier, found end of input")
            });
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).to_ascii_lowercase())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let name = self.ident()?;
        let at = self.pos;
        if self.peek() != Some(b'(') {
            return Ok(Term::Var(name));
        }
        self.pos += 1;
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(_) => return Err(self.error("expected `,` or `)`")),
                None => return Err(self.error("expected `,` or `)`, found end of input")),
            }
        }
        if args.len() != 2 {
            return Err(ParseError::Arity {
                offset: at,
                op: name,
                found: args.len(),
            });
        }
        let right = args.pop().expect("two arguments");
        let left = args.pop().expect("two arguments");
        Ok(Term::app(name, left, right))
    }
}
