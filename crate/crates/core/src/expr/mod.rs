//! A small expression language for supplying f(s) and g(x) as text.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term   (('+' | '-') term)*
//! term    := unary  (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          (right-associative)
//! primary := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Numbers are decimal with optional fraction and exponent; a number
//! written directly against `i` (`2.5i`) is imaginary, so complex
//! literals read as `a+bi`. Predefined constants are `pi`, `e` and `i`.
//! `^` is the principal-branch power exp(b·log a), with the branch cut of
//! `log` on the negative real axis.

mod eval;
mod lexer;
mod parser;

pub use eval::{evaluate, evaluate_with};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_str, BinOp, Builtin, Expr};

use std::fmt;

/// A lexing or parsing failure at a 0-based character column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError {
            message: message.into(),
            position,
        }
    }

    /// The source line with a caret under the offending column.
    pub fn render(&self, source: &str) -> String {
        format!("{source}\n{}^", " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}
