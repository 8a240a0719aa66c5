//! Exact-arithmetic toolkit for the symplectic and orthogonal Lie algebra
//! families: defining representations in Cartan-Weyl form, ad-invariant
//! tensors, bosonic/fermionic oscillator representations, L-operators and
//! their quadratic relations, and rational R-matrix / RTT verification.
//!
//! Every matrix entry lives in the ring of Gaussian-rational combinations of
//! square roots of squarefree integers ([`scalar::Surd`]), so every check in
//! the library is exact: a verification passes only when the residual is the
//! zero matrix, not merely small.

// index-heavy tensor loops read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod definingrep;
pub mod fock;
pub mod loper;
pub mod matrix;
pub mod report;
pub mod rootsys;
pub mod rtt;
pub mod scalar;
pub mod suite;
pub mod tensors;

pub use definingrep::{build_layout, build_rep, check_cartan_weyl, metric_form, RepBundle};
pub use fock::{
    bosonic_space, chirality_blocks, fermionic_space, metaplectic_rep, spinor_rep_b,
    spinor_rep_d, su_oscillator_rep, FockSpace, OperatorRep,
};
pub use loper::{build_l, closed_form_l, LOperator, QuadraticSpec};
pub use matrix::SurdMat;
pub use rootsys::{algebra_dim, simple_roots, Family, RootLabel, RootSystem};
pub use rtt::{build_t, check_rtt, check_ybe, monodromy, r_matrix, RMatrix, TOperator};
pub use scalar::{Rational, Surd};
pub use tensors::{complete_basis, structure_tensors, CompletionBasis, StructureTensors};

/// Errors produced by construction and verification routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("construction error: {0}")]
    Construction(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cutoff too small: {0}")]
    CutoffTooSmall(String),
    #[error("pole in R-matrix coefficient: {0}")]
    Pole(String),
    #[error("spectral structure error: {0}")]
    Spectrum(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
