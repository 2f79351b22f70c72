//! Period matrices whose entries are affine in the parameters `τ, z₁, z₂`:
//! Riemann relations, isogeny splitting, automorphism intertwining and the
//! genus-4 family.

mod affine;
mod automorphism;
mod isogeny;
mod period_matrix;
mod riemann;

use thiserror::Error;

pub use affine::{AffineForm, BallPoint, ExactPoint, Param, QuadraticForm};
pub use automorphism::{automorphism_check, side_search, Intertwining, SideVariant};
pub use isogeny::{elliptic_block, genus4_family, isogeny_split, tower_coords, IsogenySplit};
pub use period_matrix::{
    affine_left_mul, affine_mismatches, affine_right_mul, int_to_tower, to_tower, AffineMat,
    PeriodMatrix,
};
pub use riemann::{
    ball_det, first_relation_holds, hermitian_riemann_form, hermitian_signature, leading_minors,
    riemann_first_relation, riemann_positivity, PositivityVerdict, POSITIVITY_SIGN,
};

use crate::exactfield::FieldError;
use crate::intlat::LatticeError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PeriodError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("polarization is degenerate")]
    DegeneratePolarization,
    #[error("no value for parameter {0}")]
    MissingParameter(String),
    #[error("malformed period matrix JSON: {0}")]
    Json(String),
    #[error("inconclusive at {prec} bits: {what}")]
    Inconclusive { what: String, prec: u64 },
    #[error("{which} kernel has rank {got}, expected {expected}")]
    KernelRank { which: &'static str, expected: usize, got: usize },
    #[error("product is not block diagonal at {0:?}")]
    NotBlockDiagonal(Vec<(usize, usize)>),
    #[error("base change is singular")]
    SingularBaseChange,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
