//! The expression grammar and the field-file format.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)*          right-associative, INT chains folded
//! atom   := INT | IDENT | "(" expr ")"
//! ```
//!
//! `-x^2` is `-(x^2)`. `p/q` between integer literals folds to one rational
//! literal. Implicit multiplication (`2x`) is rejected.

mod expr;
mod file;

pub use expr::{parse_expr, ExprAst, EvalError, MAX_EXPONENT};
pub use file::{parse_field_file, FieldFile};

use thiserror::Error;

/// A parse or validation failure; positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {message} (found {token})")]
    Syntax { line: usize, col: usize, token: String, message: String },
    #[error("line {line}: generator `{name}` has no derivation line")]
    MissingDerivation { line: usize, name: String },
    #[error("line {line}: generator `{name}` is declared twice")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: second derivation for `{name}`")]
    DuplicateDerivation { line: usize, name: String },
    #[error("line {line}: element `{name}` is defined twice")]
    DuplicateElement { line: usize, name: String },
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::MissingDerivation { line, .. }
            | ParseError::DuplicateGenerator { line, .. }
            | ParseError::DuplicateDerivation { line, .. }
            | ParseError::DuplicateElement { line, .. }
            | ParseError::UnknownVariable { line, .. }
            | ParseError::Invalid { line, .. } => *line,
        }
    }
}
