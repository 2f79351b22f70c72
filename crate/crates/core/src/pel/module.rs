use num_bigint::BigInt;

use super::PelError;
use crate::intlat::{is_unimodular, smith_normal_form};
use crate::IntMat;

/// Rank-6 lattice with ρ-action and a chosen `Z[ρ]`-basis `u₁, u₂, u₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct PelModule {
    rho: IntMat,
    generators: Vec<Vec<BigInt>>,
    l: IntMat,
}

impl PelModule {
    /// Matrix of ρ in the ambient basis.
    pub fn rho(&self) -> &IntMat {
        &self.rho
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Columns `u₁, u₂, u₃, ρu₁, ρu₂, ρu₃`.
    pub fn l(&self) -> &IntMat {
        &self.l
    }

    /// `(LᵀEL, Lᵀρᵀ E L)` restricted to the first three indices: the traces
    /// of `T` and `ρT` on the `Z[ρ]`-basis.
    pub fn trace_data(&self, e: &IntMat) -> (IntMat, IntMat) {
        let first: Vec<usize> = (0..3).collect();
        let g0 = self.l.transpose().mul(e).mul(&self.l);
        let g1 = self.l.transpose().mul(&self.rho.transpose()).mul(e).mul(&self.l);
        (
            g0.select_rows(&first).select_cols(&first),
            g1.select_rows(&first).select_cols(&first),
        )
    }

    /// `LᵀEL`, the pairing on `u₁ … u₆`.
    pub fn pairing(&self, e: &IntMat) -> IntMat {
        self.l.transpose().mul(e).mul(&self.l)
    }
}

/// Checks `ρ² + ρ + 1 = 0` and that `u_k, ρu_k` form a Z-basis.
pub fn build_module(rho: &IntMat, generators: &[Vec<i64>]) -> Result<PelModule, PelError> {
    let n = rho.rows();
    let id = IntMat::identity(n);
    if !rho.is_square() || !rho.mul(rho).add(rho).add(&id).is_zero() {
        return Err(PelError::NotOrderThree);
    }
    let generators: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|u| u.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut cols = generators.clone();
    cols.extend(generators.iter().map(|u| rho.mul_vec(u)));
    let l = IntMat::from_cols(cols);
    if l.rows() != n || l.cols() != n || !is_unimodular(&l) {
        let divisors = smith_normal_form(&l).diagonal().iter().map(BigInt::to_string).collect();
        return Err(PelError::NotABasis { divisors });
    }
    Ok(PelModule { rho: rho.clone(), generators, l })
}
