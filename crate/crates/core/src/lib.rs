//! Exact period matrices for the genus-4 Shimura–Teichmüller family and the
//! Picard-type family of (1,1,3)-polarized abelian threefolds.
//!
//! Layers, bottom up: [`exactfield`] (cyclotomic tower and complex balls),
//! [`intlat`] (integer lattices), [`covers`] (cyclic covers of the line),
//! [`periods`] (period matrices affine in parameters) and [`pel`] (the
//! Shimura family over the 2-ball). [`suite`] runs every reproduction check.

pub mod covers;
pub mod exactfield;
pub mod fixtures;
pub mod intlat;
pub mod matrix;
pub mod pel;
pub mod periods;
pub mod scalar;
pub mod suite;

pub use exactfield::{ComplexBall, CycloElem, TowerElem};
pub use matrix::Matrix;
pub use scalar::{Field, Rational, Scalar};

pub type IntMat = Matrix<num_bigint::BigInt>;
pub type RatMat = Matrix<Rational>;
pub type TowerMat = Matrix<TowerElem>;
pub type BallMat = Matrix<ComplexBall>;
