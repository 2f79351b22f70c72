use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::affine::{AffineForm, Param};
use super::period_matrix::{affine_right_mul, to_tower, AffineMat, PeriodMatrix};
use super::PeriodError;
use crate::intlat::{det_bareiss, integer_kernel, to_rational};
use crate::{IntMat, Matrix, RatMat, Rational, TowerElem};

/// Coordinates over `Q` in the basis `ζ^k, ζ^k·α` (`k = 0..3`).
pub fn tower_coords(x: &TowerElem) -> [Rational; 8] {
    let b = x.base().coeffs();
    let a = x.alpha_part().coeffs();
    [
        b[0].clone(),
        b[1].clone(),
        b[2].clone(),
        b[3].clone(),
        a[0].clone(),
        a[1].clone(),
        a[2].clone(),
        a[3].clone(),
    ]
}

/// Rational matrix whose kernel is `{v : Σ_j row_j · v_j = 0}` for the given
/// tower-valued rows.
fn coordinate_rows(rows: &[Vec<TowerElem>]) -> RatMat {
    let mut out = Vec::new();
    for row in rows {
        let coords: Vec<[Rational; 8]> = row.iter().map(tower_coords).collect();
        for c in 0..8 {
            out.push(coords.iter().map(|x| x[c].clone()).collect());
        }
    }
    RatMat::from_rows(out)
}

/// Elliptic and Prym sublattices of a period matrix with parameter-dependent
/// and parameter-free rows.
#[derive(Debug, Clone)]
pub struct IsogenySplit {
    /// Kernel of the parameter-free rows.
    pub elliptic: Vec<Vec<BigInt>>,
    /// Kernel of every coefficient row of the parameter-dependent rows.
    pub prym: Vec<Vec<BigInt>>,
    /// Columns: `elliptic` then `prym`.
    pub base_change: IntMat,
    /// `[Z^{2g} : Λ_E ⊕ Λ_P]`.
    pub index: BigInt,
    pub varying_rows: Vec<usize>,
    pub constant_rows: Vec<usize>,
    /// `P · base_change`.
    pub product: AffineMat,
}

pub fn isogeny_split(p: &PeriodMatrix) -> Result<IsogenySplit, PeriodError> {
    let pi = p.entries();
    let (varying_rows, constant_rows): (Vec<usize>, Vec<usize>) =
        (0..pi.rows()).partition(|&i| pi.row(i).iter().any(|a| !a.is_constant()));

    let constant: Vec<Vec<TowerElem>> = constant_rows
        .iter()
        .map(|&i| pi.row(i).iter().map(|a| a.constant_term().clone()).collect())
        .collect();
    let mut coeff_rows = Vec::new();
    for &i in &varying_rows {
        coeff_rows.push(pi.row(i).iter().map(|a| a.constant_term().clone()).collect());
        for param in Param::ALL {
            let r: Vec<TowerElem> = pi.row(i).iter().map(|a| a.coeff(param)).collect();
            if r.iter().any(|x| !x.is_zero()) {
                coeff_rows.push(r);
            }
        }
    }

    let elliptic = integer_kernel(&coordinate_rows(&constant));
    let prym = integer_kernel(&coordinate_rows(&coeff_rows));
    let n = pi.cols();
    let expected_e = 2 * varying_rows.len();
    if elliptic.len() != expected_e {
        return Err(PeriodError::KernelRank { which: "elliptic", expected: expected_e, got: elliptic.len() });
    }
    if prym.len() != n - expected_e {
        return Err(PeriodError::KernelRank { which: "prym", expected: n - expected_e, got: prym.len() });
    }
    let cols: Vec<Vec<BigInt>> = elliptic.iter().chain(prym.iter()).cloned().collect();
    let base_change = IntMat::from_cols(cols);
    let index = det_bareiss(&base_change).abs();
    let product = affine_right_mul(pi, &to_tower(&to_rational(&base_change)));
    Ok(IsogenySplit {
        elliptic,
        prym,
        base_change,
        index,
        varying_rows,
        constant_rows,
        product,
    })
}

/// The elliptic periods `(3τ, 3τ + 3)` carried by the elliptic columns.
pub fn elliptic_block(tau: &AffineForm) -> [AffineForm; 2] {
    let three = TowerElem::rational(Rational::from_integer(3.into()));
    let a = tau.scale(&three);
    let b = a.clone() + AffineForm::constant(three);
    [a, b]
}

/// `blockdiag(elliptic, prym) · Bc⁻¹`, with the elliptic periods in row 0 at
/// `elliptic_cols` and the Prym block in rows `1..` at `prym_cols`.
pub fn genus4_family(
    tau: &AffineForm,
    prym: &AffineMat,
    bc: &IntMat,
    elliptic_cols: &[usize],
    prym_cols: &[usize],
) -> Result<PeriodMatrix, PeriodError> {
    let n = bc.rows();
    if !bc.is_square() || elliptic_cols.len() + prym_cols.len() != n || prym.cols() != prym_cols.len() {
        return Err(PeriodError::Shape("base change and block sizes disagree".into()));
    }
    let inv = to_rational(bc).inverse().ok_or(PeriodError::SingularBaseChange)?;
    let g = 1 + prym.rows();
    let mut blocks: AffineMat = Matrix::from_fn(g, n, |_, _| AffineForm::zero());
    for (k, e) in elliptic_block(tau).into_iter().enumerate() {
        blocks[(0, elliptic_cols[k])] = e;
    }
    for i in 0..prym.rows() {
        for (j, &c) in prym_cols.iter().enumerate() {
            blocks[(i + 1, c)] = prym[(i, j)].clone();
        }
    }
    let entries = affine_right_mul(&blocks, &to_tower(&inv));
    PeriodMatrix::from_matrix(entries, IntMat::standard_symplectic(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        let x = TowerElem::zeta() + TowerElem::alpha();
        let c = tower_coords(&x);
        assert_eq!(c.iter().filter(|q| !q.is_zero()).count(), 2);
    }
}
