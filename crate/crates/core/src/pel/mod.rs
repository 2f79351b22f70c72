//! Shimura's family of abelian threefolds with `Z[ρ]`-multiplication over the
//! complex 2-ball: lattice module, skew-Hermitian form, diagonalizer, period
//! family and the matching that locates the special fiber.

pub mod errata;
mod family;
mod hermitian;
mod matching;
mod module;

use serde_json::{json, Value};
use thiserror::Error;

pub use family::{
    ball_norm_sq, endomorphism_check, family_periods, polarization_identity_check, rho_action,
    search_conventions, select_conventions, to_ambient, ConventionCandidate, FamilyDatum,
};
pub use hermitian::{
    defw_residual, defw_residual_ball, diagonalize_w, integrality_check, max_abs_upper, signature,
    solve_t, t_from_traces, Diagonalizer, IntegralityReport, SkewHermitian3,
};
pub use matching::{match_solver, prym_family, MatchSolution};
pub use module::{build_module, PelModule};

use crate::exactfield::FieldError;
use crate::intlat::LatticeError;
use crate::periods::PeriodError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PelError {
    #[error("ρ-action does not satisfy M² + M + I = 0")]
    NotOrderThree,
    #[error("chosen elements do not form a Z-basis; elementary divisors {divisors:?}")]
    NotABasis { divisors: Vec<String> },
    #[error("entry ({0},{1}) is not in Q(ρ)")]
    NotInK(usize, usize),
    #[error("matrix is not skew-Hermitian at ({0},{1})")]
    NotSkewHermitian(usize, usize),
    #[error("form is degenerate")]
    Degenerate,
    #[error("signature is ({0},{1}), expected (2,1)")]
    WrongSignature(usize, usize),
    #[error("matching system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("matching system has more than one solution: {0}")]
    NotUnique(String),
    #[error("anchor mismatch at entries {0:?}")]
    AnchorMismatch(Vec<(usize, usize)>),
    #[error("no convention reproduces the anchor")]
    NoConvention,
    #[error("conventions tie: {0:?}")]
    AmbiguousConvention(Vec<String>),
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Embedding of `K` used on the first coordinate of `C³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Embedding {
    Sigma,
    SigmaBar,
}

/// Reading of the `I₂` block inside `J_z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityReading {
    Identity,
    ITimesIdentity,
}

/// Column layout of the family: `(u₁,u₂,u₃,ρu₁,ρu₂,ρu₃)` or interleaved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnOrder {
    Grouped,
    Interleaved,
}

impl Embedding {
    pub fn name(self) -> &'static str {
        match self {
            Embedding::Sigma => "sigma",
            Embedding::SigmaBar => "sigma-bar",
        }
    }
}

impl IdentityReading {
    pub fn name(self) -> &'static str {
        match self {
            IdentityReading::Identity => "identity",
            IdentityReading::ITimesIdentity => "i-identity",
        }
    }
}

impl ColumnOrder {
    pub fn name(self) -> &'static str {
        match self {
            ColumnOrder::Grouped => "grouped",
            ColumnOrder::Interleaved => "interleaved",
        }
    }

    /// Position of `ρ^s·u_k` (`s ∈ {0,1}`).
    pub fn position(self, k: usize, s: usize) -> usize {
        match self {
            ColumnOrder::Grouped => 3 * s + k,
            ColumnOrder::Interleaved => 2 * k + s,
        }
    }
}

/// Frozen sign and side choices reported with every run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conventions {
    pub embedding: Embedding,
    pub i2_in_jz: IdentityReading,
    pub column_order: ColumnOrder,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            embedding: Embedding::Sigma,
            i2_in_jz: IdentityReading::Identity,
            column_order: ColumnOrder::Grouped,
        }
    }
}

impl Conventions {
    pub fn all() -> Vec<Conventions> {
        let mut out = Vec::new();
        for embedding in [Embedding::Sigma, Embedding::SigmaBar] {
            for i2_in_jz in [IdentityReading::Identity, IdentityReading::ITimesIdentity] {
                for column_order in [ColumnOrder::Grouped, ColumnOrder::Interleaved] {
                    out.push(Conventions { embedding, i2_in_jz, column_order });
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{}/{}/{}", self.embedding.name(), self.i2_in_jz.name(), self.column_order.name())
    }

    /// The conventions record, with the fixed global choices made elsewhere.
    pub fn to_json(&self) -> Value {
        json!({
            "embedding": self.embedding.name(),
            "I2_in_Jz": self.i2_in_jz.name(),
            "column_order": self.column_order.name(),
            "side": "right",
            "automorphism": "A·Π = Π·M3",
            "positivity_sign": crate::periods::POSITIVITY_SIGN,
            "hermitian_form": "x^T H conj(y)",
            "zeta": "exp(pi i/6)",
            "alpha": "3^(1/4) > 0",
        })
    }
}
