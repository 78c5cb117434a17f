//! Finitely presented groups, Fox calculus and matrix representations into a linear group
//! whose Lie algebra is given by a bracket-closed basis.

pub mod lie;
pub mod presentation;
pub mod representation;
pub mod word;

pub use lie::{LieAlgebra, LinearGroupData};
pub use presentation::{parse_presentation, Presentation};
pub use representation::{check_representation, parse_representation, Representation, RepresentationReport};
pub use word::{fox_derivative, GroupRingElement, Letter, Word};

use thiserror::Error;

use crate::exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("image of generator {generator} is not invertible")]
    NotInvertible { generator: String },
    #[error("conjugation by the image of {generator} leaves the Lie algebra")]
    AdNotClosed { generator: String },
    #[error("perturbation of generator {generator} is not in the maximal ideal")]
    PerturbationNotInMaximalIdeal { generator: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
