//! Exact arithmetic substrate: rational and Gaussian-rational scalars, dense matrices,
//! canonical subspaces, truncated polynomial (Artin local) algebras, and the BCH series.

pub mod artin;
pub mod bch;
pub mod field;
pub mod matrix;
pub mod subspace;

pub use artin::{artin_mul, matrix_exp_truncated, matrix_log_truncated, ArtinAlgebra, ArtinElement, ArtinMatrix};
pub use bch::{bch, LieOps};
pub use field::{parse_gaussian, parse_rational, q, qi, Field, GaussianRational, Rational};
pub use matrix::{solve_linear, AffineSolution, Echelon, Matrix};
pub use subspace::{subspace_calc, Subspace, SubspaceOp, SubspaceResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("elements belong to different Artin algebras")]
    AlgebraMismatch,
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("Artin algebra: {0}")]
    Artin(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Split a literal like `[[1, 2], [3/4, -5]]` into rows of scalar tokens.
pub fn parse_nested_rows(text: &str) -> Result<Vec<Vec<String>>, ExactError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ExactError::Parse(format!("matrix literal must be enclosed in [...]: {text:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| ExactError::Parse(format!("expected '[' starting a row in {text:?}")))?;
        let end = body
            .find(']')
            .ok_or_else(|| ExactError::Parse(format!("unterminated row in {text:?}")))?;
        let row: Vec<String> =
            if body[..end].is_empty() { Vec::new() } else { body[..end].split(',').map(str::to_string).collect() };
        if row.iter().any(|t| t.is_empty()) {
            return Err(ExactError::Parse(format!("empty entry in {text:?}")));
        }
        rows.push(row);
        rest = &body[end + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| ExactError::Parse(format!("expected ',' between rows in {text:?}")))?;
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(ExactError::Parse(format!("ragged matrix literal {text:?}")));
    }
    Ok(rows)
}
