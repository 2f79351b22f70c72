//! Exact arithmetic in Q ⊂ Q(ρ) ⊂ Q(ζ₁₂) ⊂ Q(ζ₁₂)(3^(1/4)) and certified
//! complex embeddings.

mod ball;
mod cyclo;
mod literal;
mod tower;

use thiserror::Error;

pub use ball::{fourth_root3_ball, sqrt3_ball, ComplexBall, Dyadic};
pub use cyclo::CycloElem;
pub use literal::parse_tower;
pub use tower::{rational_from_json, rational_to_json, tower_q, TowerElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} does not lie in Q(rho)")]
    NotInEisenstein(String),
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}
