//! A small line-oriented scripting language for constructions.
//!
//! ```text
//! given A = (0, 0)
//! given B = (1, 0)
//! let M = midpoint(A, B)
//! emit points "-"
//! ```
//!
//! Every `given` point is a seed; every `let` appends compass steps to one
//! shared trace. `emit` statements are collected and left to the caller.

mod ast;
mod interp;
mod lexer;
mod parser;

use thiserror::Error;

pub use ast::{Arg, CallExpr, EmitTarget, Located, Op, Pos, Script, Statement};
pub use interp::{interpret, Binding, EmitRequest, RuntimeError, RuntimeErrorKind, Session, Value};
pub use lexer::{tokenize, LexError, Token, TokenKind, KEYWORDS};
pub use parser::{parse, ParseError};

use crate::numeric::Tolerance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScriptError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
}

impl ScriptError {
    pub fn line(&self) -> usize {
        match self {
            ScriptError::Lex(e) => e.line,
            ScriptError::Parse(e) => e.line,
            ScriptError::Runtime(e) => e.line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            ScriptError::Lex(e) => e.column,
            ScriptError::Parse(e) => e.column,
            ScriptError::Runtime(e) => e.column,
        }
    }
}

/// Parse a script without running it.
pub fn parse_source(source: &str) -> Result<Script, ScriptError> {
    Ok(parse(&tokenize(source)?)?)
}

/// Tokenize, parse and interpret in one go.
pub fn run_source(source: &str, tol: &Tolerance) -> Result<Session, ScriptError> {
    Ok(interpret(&parse_source(source)?, tol)?)
}
