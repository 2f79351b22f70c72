//! Reference data for the genus-4 curve `y⁶ = x(x+1)(x−t)`.
//!
//! Integer data is stored exactly as published. Where a published value is
//! inconsistent with the rest, both the published and the corrected value are
//! provided (suffixes `_displayed` / no suffix) and the audit in
//! [`crate::pel::errata`] compares them.

use crate::exactfield::{CycloElem, TowerElem};
use crate::intlat::int_mat;
use crate::covers::HomologyModel;
use crate::periods::{AffineForm, AffineMat, Param, PeriodMatrix};
use crate::scalar::ratio;
use num_traits::{One, Zero};

use crate::{IntMat, Matrix, TowerMat};

/// Intersection numbers of the paths `u₁ … u₁₂`.
pub fn intersection_matrix() -> IntMat {
    int_mat(&[
        &[0, -1, 0, 0, 0, 1, -1, 1, 0, 0, 0, 0],
        &[1, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0],
        &[0, 1, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0],
        &[0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 1, 0],
        &[0, 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 1],
        &[-1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1],
        &[1, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1],
        &[-1, 1, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0],
        &[0, -1, 1, 0, 0, 0, 0, 1, 0, -1, 0, 0],
        &[0, 0, -1, 1, 0, 0, 0, 0, 1, 0, -1, 0],
        &[0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, -1],
        &[0, 0, 0, 0, -1, 1, -1, 0, 0, 0, 1, 0],
    ])
}

/// Deck shift on `u₁ … u₁₂` (0-based): each block of six is rotated.
pub fn deck_shift() -> Vec<usize> {
    (0..12).map(|k| 6 * (k / 6) + (k % 6 + 1) % 6).collect()
}

/// 0-based indices of the 8×8 minor that must be nondegenerate.
pub const GENERATING_MINOR: [usize; 8] = [0, 1, 2, 3, 6, 7, 8, 9];

fn u_combination(terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; 12];
    for &(k, c) in terms {
        v[k - 1] += c;
    }
    v
}

fn columns(vs: Vec<Vec<i64>>) -> IntMat {
    let rows: Vec<Vec<i64>> = (0..12).map(|i| vs.iter().map(|v| v[i]).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    int_mat(&refs)
}

/// The published combinations `e₁ … e₈` of the `u`'s, as columns.
pub fn e_basis_displayed() -> IntMat {
    columns(vec![
        u_combination(&[(1, 1)]),
        u_combination(&[(3, 1)]),
        u_combination(&[(1, 1), (3, -1), (5, 1), (6, 1)]),
        u_combination(&[(2, 1), (5, -1), (8, -1)]),
        u_combination(&[(7, 1)]),
        u_combination(&[(9, 1)]),
        u_combination(&[(2, 1), (3, 1), (5, -1), (7, 1)]),
        u_combination(&[(1, 1), (2, 1), (4, 1), (6, 1)]),
    ])
}

/// A symplectic basis whose periods are exactly the genus-4 period matrix;
/// recovered as integer preimages under the period model.
pub fn e_basis() -> IntMat {
    columns(vec![
        u_combination(&[(1, 1)]),
        u_combination(&[(3, 1)]),
        u_combination(&[(1, -1), (6, -1), (7, -1), (12, -1)]),
        u_combination(&[(5, -1), (12, -1)]),
        u_combination(&[(8, 1)]),
        u_combination(&[(10, 1)]),
        u_combination(&[(4, -1), (5, -1), (10, -1), (11, -1)]),
        u_combination(&[(12, -1)]),
    ])
}

/// Base change splitting the lattice into elliptic and Prym parts.
pub fn base_change() -> IntMat {
    int_mat(&[
        &[1, 0, -1, -1, 1, 0, 1, -2],
        &[1, 0, 1, 2, 1, 0, 0, 1],
        &[0, 1, 0, 0, 0, 0, 0, 0],
        &[-1, 0, 0, 1, -1, 0, 1, -1],
        &[0, 0, 0, 1, 1, 0, 0, 0],
        &[0, 0, 0, 1, 1, 0, 1, 0],
        &[0, 0, 0, 0, 0, 1, 0, 0],
        &[1, 0, 0, 1, 0, 0, 0, 1],
    ])
}

/// Columns of [`base_change`] carrying the elliptic factor (0-based).
pub const ELLIPTIC_COLUMNS: [usize; 2] = [0, 4];
/// Columns of [`base_change`] carrying the Prym part (0-based).
pub const PRYM_COLUMNS: [usize; 6] = [1, 2, 3, 5, 6, 7];

/// Order-three lattice automorphism of the Prym part.
pub fn m3() -> IntMat {
    int_mat(&[
        &[0, 0, 0, -1, 0, 0],
        &[0, 1, 0, 0, -3, 3],
        &[0, 0, 1, 0, 1, 0],
        &[1, 0, 0, -1, 0, 0],
        &[0, 0, -3, 0, -2, 0],
        &[0, -1, -3, 0, 0, -2],
    ])
}

/// `u₁ = e₁, u₂ = e₂ + e₅, u₃ = 2e₃ + e₅ − e₆` in the Prym basis.
pub fn module_generators() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 1, 0],
        vec![0, 0, 2, 0, 1, -1],
    ]
}

fn z(c: [i64; 4]) -> TowerElem {
    TowerElem::from_ints(c)
}

fn tower_rows(rows: Vec<Vec<[i64; 4]>>) -> TowerMat {
    TowerMat::from_rows(rows.into_iter().map(|r| r.into_iter().map(z).collect()).collect())
}

/// Constant and τ-coefficient parts of the genus-4 period matrix (4×8).
pub fn genus4_period_matrix() -> PeriodMatrix {
    let tau_row = [1, 1, 0, -1, 0, 0, 0, 0];
    let const_row = [0, 0, 0, -1, 1, 1, 0, -1];
    let rest = tower_rows(vec![
        vec![[-1, 0, 1, 0], [1, 0, 0, 0], [1, 0, -1, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 1, 0], [1, 0, -1, 0]],
        vec![[0, -1, 0, 1], [0, 0, 0, -1], [-1, 1, 2, -2], [0, -1, 1, 0], [1, 0, 0, 0], [-1, 0, 1, 0], [2, -2, -1, 1], [0, 0, 1, 0]],
        vec![[0, 1, 0, -1], [0, 0, 0, 1], [-1, -1, 2, 2], [0, 1, 1, 0], [1, 0, 0, 0], [-1, 0, 1, 0], [2, 2, -1, -1], [0, 0, 1, 0]],
    ]);
    let mut entries = Vec::with_capacity(4);
    entries.push(
        (0..8)
            .map(|j| {
                AffineForm::constant(TowerElem::from_ints([const_row[j], 0, 0, 0]))
                    + AffineForm::param(Param::Tau).scale(&TowerElem::from_ints([tau_row[j], 0, 0, 0]))
            })
            .collect(),
    );
    for i in 0..3 {
        entries.push((0..8).map(|j| AffineForm::constant(rest[(i, j)].clone())).collect());
    }
    PeriodMatrix::new(entries, IntMat::standard_symplectic(4)).expect("valid fixture")
}

/// Published Prym block; entry (2,2) reads `2ζ³ + ζ`.
pub fn z3_special_displayed() -> TowerMat {
    let mut m = z3_special();
    m[(1, 1)] = z([0, 1, 0, 2]);
    m
}

/// Prym block of the product decomposition, with entry (2,2) = `ζ − 2ζ³`.
pub fn z3_special() -> TowerMat {
    tower_rows(vec![
        vec![[1, 0, -1, 0], [2, 0, -1, 0], [6, 0, -3, 0], [0, 0, 1, 0], [0, 0, 0, 0], [3, 0, -3, 0]],
        vec![[-1, 1, 2, -2], [0, 1, 0, -2], [0, 0, 3, -3], [2, -2, -1, 1], [-1, -2, 2, 1], [0, 3, 0, -3]],
        vec![[-1, -1, 2, 2], [0, -1, 0, 2], [0, 0, 3, 3], [2, 2, -1, -1], [-1, 2, 2, -1], [0, -3, 0, 3]],
    ])
}

/// Polarization on the Prym columns: `[[0, D], [−D, 0]]`, `D = diag(1,1,3)`.
pub fn j3() -> IntMat {
    let b = base_change();
    let full = b.transpose().mul(&IntMat::standard_symplectic(4)).mul(&b);
    full.select_rows(&PRYM_COLUMNS).select_cols(&PRYM_COLUMNS)
}

/// Special point of the 2-ball: `z₁ = (−2ζ³ + ζ² + ζ − 3)/2`,
/// `z₂ = 3^(−1/4)(ζ³ − 2ζ² + 1)/2`.
pub fn special_point() -> [TowerElem; 2] {
    let half = ratio(1, 2);
    let z1 = z([-3, 1, 1, -2]).scale(&half);
    let z2 = z([1, 0, -2, 1]).scale(&half) * TowerElem::fourth_root3_pow(-1);
    [z1, z2]
}

/// Published block constants `c₁₁, c₂₂, c₂₃, c₃₂, c₃₃` of the matching matrix.
pub fn matching_constants() -> [TowerElem; 5] {
    let a3 = TowerElem::fourth_root3_pow(3);
    [
        z([1, 3, 1, 0]),
        z([0, -3, 0, 0]),
        a3.clone() * z([1, 0, -1, 1]),
        z([-4, -5, 2, 4]),
        a3 * z([-1, 0, 1, 1]),
    ]
}

/// The diagonalizer as printed (3×3, rows).
pub fn w_displayed() -> TowerMat {
    let a = TowerElem::fourth_root3_pow(-1);
    let zero = TowerElem::from_ints([0, 0, 0, 0]);
    let one = TowerElem::from_ints([1, 0, 0, 0]);
    TowerMat::from_rows(vec![
        vec![zero.clone(), z([3, -1, 0, 0]), zero.clone()],
        vec![a, zero.clone(), zero.clone()],
        vec![zero, one, z([3, 0, 0, -1])],
    ])
}

/// Diagonalizer read off from the first row of the printed family:
/// row 1 of the family is `(z₁, z₂, 1)·W`.
pub fn w_from_family_row() -> TowerMat {
    let a = TowerElem::fourth_root3_pow(-1);
    let zero = TowerElem::from_ints([0, 0, 0, 0]);
    let one = TowerElem::from_ints([1, 0, 0, 0]);
    TowerMat::from_rows(vec![
        vec![zero.clone(), one.clone(), z([3, -1, 0, 0])],
        vec![a, zero.clone(), zero.clone()],
        vec![zero, one, z([3, 0, 0, -1])],
    ])
}

/// The skew-Hermitian matrix as printed.
pub fn t_displayed() -> TowerMat {
    let zero = z([0, 0, 0, 0]);
    let rho = CycloElem::rho();
    let t11 = TowerElem::rational(ratio(1, 3)) + TowerElem::cyclo(rho.clone()).scale(&ratio(2, 3));
    let r = TowerElem::cyclo(rho);
    let one = z([1, 0, 0, 0]);
    TowerMat::from_rows(vec![
        vec![t11, zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), -r.clone()],
        vec![zero, -(one.clone() + r.clone()), -(z([3, 0, 0, 0]) + r.scale(&ratio(6, 1)))],
    ])
}

/// Intersection pairing and deck shift on `u₁ … u₁₂`.
pub fn homology_model() -> HomologyModel {
    HomologyModel::new(intersection_matrix(), deck_shift())
}

/// Deck characters on `ω₁ … ω₄`.
pub fn deck_characters() -> [TowerElem; 4] {
    [
        TowerElem::from_ints([-1, 0, 0, 0]),
        TowerElem::zeta_pow(4),
        TowerElem::zeta_pow(2),
        TowerElem::zeta_pow(2),
    ]
}

/// Periods of `u₁ … u₁₂` (4×12): `u_{1+k}` has periods `χᵏ·f`, `u_{7+l}`
/// has `χ^{l−1}·g`, with `f = (τ, ζ⁴, ζ⁵, ζ¹¹)` and `g = 1`.
pub fn u_periods() -> AffineMat {
    let chi = deck_characters();
    let f: [AffineForm; 4] = [
        AffineForm::param(Param::Tau),
        AffineForm::constant(TowerElem::zeta_pow(4)),
        AffineForm::constant(TowerElem::zeta_pow(5)),
        AffineForm::constant(TowerElem::zeta_pow(11)),
    ];
    Matrix::from_fn(4, 12, |i, k| {
        if k < 6 {
            f[i].scale(&chi[i].pow(k as i64).expect("unit"))
        } else {
            AffineForm::constant(chi[i].pow(k as i64 - 7).expect("unit"))
        }
    })
}

fn affine(c: TowerElem, z1: TowerElem, z2: TowerElem) -> AffineForm {
    AffineForm::constant(c) + AffineForm::linear(Param::Z1, z1) + AffineForm::linear(Param::Z2, z2)
}

/// `c·(z₁ + shift)`.
fn times_z1_plus(c: TowerElem, shift: i64) -> AffineForm {
    affine(c.clone() * TowerElem::from_ints([shift, 0, 0, 0]), c, TowerElem::zero())
}

/// The family over the 2-ball as printed, in the `u₁ … u₆` basis.
pub fn z_s_displayed() -> AffineMat {
    let ai = TowerElem::fourth_root3_pow(-1);
    let r = TowerElem::zeta_pow(4);
    let r2 = TowerElem::zeta_pow(8);
    let zero = TowerElem::zero();
    let one = TowerElem::one();
    let z1_plus_1 = times_z1_plus(one.clone(), 1);
    // (3 − ζ)z₁ + 3 − i
    let a13 = affine(z([3, 0, 0, -1]), z([3, -1, 0, 0]), zero.clone());
    // (3 − i)(z₁ + 1) + 3 − ζ⁻¹
    let a23 = times_z1_plus(z([3, 0, 0, -1]), 1) + AffineForm::constant(z([3, 0, 0, 0]) - TowerElem::zeta_pow(-1));
    let a33 = AffineForm::linear(Param::Z2, z([3, 0, 0, 1]));
    let row0 = vec![
        AffineForm::linear(Param::Z2, ai.clone()),
        z1_plus_1.clone(),
        a13.clone(),
        AffineForm::linear(Param::Z2, ai.clone() * r.clone()),
        z1_plus_1.scale(&r),
        a13.scale(&r),
    ];
    let row1 = vec![
        AffineForm::zero(),
        z1_plus_1.clone(),
        a23.clone(),
        AffineForm::zero(),
        z1_plus_1.scale(&r2),
        a23.scale(&r2),
    ];
    let row2 = vec![
        AffineForm::constant(ai.clone()),
        AffineForm::param(Param::Z2),
        a33.clone(),
        AffineForm::constant(ai * r2.clone()),
        AffineForm::linear(Param::Z2, r2.clone()),
        a33.scale(&r2),
    ];
    Matrix::from_rows(vec![row0, row1, row2])
}

/// The closed-form Prym family `(Z₁⁽³⁾ | Z₂⁽³⁾)(z₁, z₂)` as printed.
pub fn prym_family_displayed() -> AffineMat {
    let ai = TowerElem::fourth_root3_pow(-1);
    let s = TowerElem::fourth_root3_pow(3);
    let c = |v: [i64; 4]| AffineForm::constant(z(v));
    let lin_z2 = |k: TowerElem, v: [i64; 4]| AffineForm::linear(Param::Z2, k * z(v));
    let zero = TowerElem::zero();

    let a23 = lin_z2(s.clone(), [-1, -2, 3, 3]) + times_z1_plus(z([-1, -3, 1, 0]).scale(&ratio(-3, 1)), -1);
    let a33 = lin_z2(s.clone(), [-4, -1, 3, 3]) + affine(z([-11, -13, 2, 8]), z([-11, -17, 1, 10]), zero.clone());
    let b13 = affine(z([-6, -8, 6, 10]), z([-3, -7, 3, 8]), zero.clone());
    let b23 = affine(z([0, 0, -3, 9]), z([-3, 0, 0, 9]), -(s.clone() * z([9, -9, -3, 12])));
    let b33 = affine(z([2, 8, 5, 5]), z([7, 10, 10, 1]), -(s.clone() * z([-3, -3, -1, 1])));

    let row0 = vec![
        lin_z2(ai.clone(), [1, 3, 1, 0]),
        times_z1_plus(z([1, 3, 1, 0]), 1),
        times_z1_plus(z([3, 8, 0, -1]), 1),
        lin_z2(ai, [-2, -3, 1, 3]),
        times_z1_plus(z([-2, -3, 1, 3]), 1),
        b13,
    ];
    let row1 = vec![
        c([-1, 1, 2, -2]),
        lin_z2(s.clone(), [-1, 0, 1, 1]) + times_z1_plus(z([0, 0, -3, 0]), -1),
        a23,
        c([2, -2, -1, 1]),
        times_z1_plus(z([3, 0, 0, 0]), 1) + lin_z2(s.clone(), [1, -1, 0, 1]),
        b23,
    ];
    let row2 = vec![
        c([-1, -1, 2, 2]),
        lin_z2(s.clone(), [-1, 0, 1, 1]) + times_z1_plus(z([-4, -5, 2, 4]), -1),
        a33,
        c([2, -2, -1, -1]),
        lin_z2(s, [1, 1, 0, -1]) + times_z1_plus(z([2, 4, 2, 1]), 1),
        b33,
    ];
    Matrix::from_rows(vec![row0, row1, row2])
}
