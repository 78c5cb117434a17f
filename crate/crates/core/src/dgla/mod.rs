//! Weighted differential graded Lie algebras: axioms, bigraded cohomology, Maurer-Cartan sets
//! and the gauge action over Artin algebras, finite-group invariants, augmentations, the
//! weight-truncation ideal and the reduction to a quadratic cone.

pub mod algebra;
pub mod equivariant;
pub mod file;
pub mod fixtures;
pub mod mc;
pub mod tensor;
pub mod weights;

pub use algebra::{check_dgla_axioms, AxiomReport, BasisElement, CohomologyPiece, Wdgla};
pub use equivariant::{augmentation_kernel, fixed_cohomology_dim, invariants, Augmentation, GroupAction};
pub use file::DglaFile;
pub use mc::{gauge, gauge_compose, is_mc, mc_curvature, ArtinVec};
pub use tensor::{tensor_dgla, GradedAlgebra};
pub use weights::{
    check_weight_axioms, is_one_quasi_iso, reduce_to_quadratic, truncate, DglaMorphism, QuasiIsoReport, Reduction,
    Truncation, WeightAxiomReport, WeightViolation,
};

use thiserror::Error;

use crate::cones::ConeError;
use crate::exactalg::ExactError;
use crate::grouprep::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DglaError {
    #[error("{0}")]
    Invalid(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("axioms fail: {0}")]
    Axioms(String),
    #[error("wrong degree: {0}")]
    WrongDegree(String),
    #[error("coefficient not in the maximal ideal: {0}")]
    NotInMaximalIdeal(String),
    #[error("augmentation is not surjective (rank {rank} < {target})")]
    NotSurjective { rank: usize, target: usize },
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error("purity fails: H^1 of the weight-1 part is nonzero, class {class}")]
    PurityViolation { class: String },
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}
