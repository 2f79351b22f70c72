use num_traits::Zero;

use super::PelError;
use crate::periods::{affine_left_mul, AffineMat, ExactPoint, Param, PeriodMatrix};
use crate::{IntMat, TowerElem, TowerMat};

/// Block matrix `C = diag(c₁₁, [[c₂₂, c₂₃], [c₃₂, c₃₃]])` and the point `z*`
/// with `C·F(z*) = target`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchSolution {
    pub c: TowerMat,
    pub z1: TowerElem,
    pub z2: TowerElem,
}

impl MatchSolution {
    pub fn point(&self) -> ExactPoint {
        let mut p = ExactPoint::new();
        p.insert(Param::Z1, self.z1.clone());
        p.insert(Param::Z2, self.z2.clone());
        p
    }

    /// `[c₁₁, c₂₂, c₂₃, c₃₂, c₃₃]`.
    pub fn constants(&self) -> [TowerElem; 5] {
        let c = &self.c;
        [
            c[(0, 0)].clone(),
            c[(1, 1)].clone(),
            c[(1, 2)].clone(),
            c[(2, 1)].clone(),
            c[(2, 2)].clone(),
        ]
    }
}

/// Unique solution of `a·x = b`, distinguishing inconsistent from
/// underdetermined systems.
fn solve_unique(a: &TowerMat, b: &[TowerElem], what: &str) -> Result<Vec<TowerElem>, PelError> {
    let rank = a.rank();
    let x = a
        .solve(b)
        .ok_or_else(|| PelError::Inconsistent(format!("{what}: no solution")))?;
    if rank < a.cols() {
        return Err(PelError::NotUnique(format!("{what}: rank {rank} < {}", a.cols())));
    }
    Ok(x)
}

/// Solves `C·F(z) = target` for block-shaped `C` and `z = (z₁, z₂)`.
///
/// Row 0 is linear in `(c₁₁, c₁₁z₁, c₁₁z₂)`; once `z` is known, rows 1–2
/// are linear in the 2×2 block. The result is rechecked on all 18 entries.
pub fn match_solver(family: &AffineMat, target: &TowerMat) -> Result<MatchSolution, PelError> {
    let n = family.cols();
    let a0 = TowerMat::from_fn(n, 3, |j, k| match k {
        0 => family[(0, j)].constant_term().clone(),
        1 => family[(0, j)].coeff(Param::Z1),
        _ => family[(0, j)].coeff(Param::Z2),
    });
    let x = solve_unique(&a0, target.row(0), "row 1")?;
    if x[0].is_zero() {
        return Err(PelError::Inconsistent("c11 = 0".into()));
    }
    let z1 = x[1].checked_div(&x[0])?;
    let z2 = x[2].checked_div(&x[0])?;
    let sol_point = {
        let mut p = ExactPoint::new();
        p.insert(Param::Z1, z1.clone());
        p.insert(Param::Z2, z2.clone());
        p
    };
    let f_at = family.try_map(|a| a.eval_exact(&sol_point))?;
    let lower_t = TowerMat::from_fn(n, 2, |j, r| f_at[(r + 1, j)].clone());
    let mut c = TowerMat::zeros(3, 3);
    c[(0, 0)] = x[0].clone();
    for r in 1..3 {
        let y = solve_unique(&lower_t, target.row(r), &format!("row {}", r + 1))?;
        c[(r, 1)] = y[0].clone();
        c[(r, 2)] = y[1].clone();
    }
    let check = c.mul(&f_at);
    let bad: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| check[(i, j)] != target[(i, j)])
        .collect();
    if !bad.is_empty() {
        return Err(PelError::AnchorMismatch(bad));
    }
    Ok(MatchSolution { c, z1, z2 })
}

/// `Z⁽³⁾(z) = C·F(z)` with the given polarization.
pub fn prym_family(c: &TowerMat, family: &AffineMat, polarization: &IntMat) -> Result<PeriodMatrix, PelError> {
    Ok(PeriodMatrix::from_matrix(affine_left_mul(c, family), polarization.clone())?)
}
