use super::period_matrix::{affine_left_mul, affine_mismatches, affine_right_mul, to_tower, AffineMat};
use crate::intlat::to_rational;
use crate::{IntMat, RatMat, TowerElem, TowerMat};

/// Outcome of `A·Π = Π·R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertwining {
    pub holds: bool,
    pub mismatches: Vec<(usize, usize)>,
}

/// Compares `diag(a)·Π` and `Π·R` as affine matrices.
pub fn automorphism_check(a: &[TowerElem], p: &AffineMat, r: &RatMat) -> Intertwining {
    assert_eq!(a.len(), p.rows(), "diagonal length must equal row count");
    assert_eq!((r.rows(), r.cols()), (p.cols(), p.cols()), "R must be square of size 2g");
    let left = affine_left_mul(&TowerMat::diagonal(a), p);
    let right = affine_right_mul(p, &to_tower(r));
    let mismatches = affine_mismatches(&left, &right);
    Intertwining { holds: mismatches.is_empty(), mismatches }
}

/// Which matrix derived from a lattice automorphism `M` plays the role of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideVariant {
    Direct,
    Inverse,
    Transpose,
    InverseTranspose,
}

impl SideVariant {
    pub const ALL: [SideVariant; 4] = [
        SideVariant::Direct,
        SideVariant::Inverse,
        SideVariant::Transpose,
        SideVariant::InverseTranspose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SideVariant::Direct => "M",
            SideVariant::Inverse => "M^-1",
            SideVariant::Transpose => "M^T",
            SideVariant::InverseTranspose => "(M^T)^-1",
        }
    }

    /// `None` when `m` is singular and an inverse is asked for.
    pub fn apply(self, m: &IntMat) -> Option<RatMat> {
        let q = to_rational(m);
        match self {
            SideVariant::Direct => Some(q),
            SideVariant::Inverse => q.inverse(),
            SideVariant::Transpose => Some(q.transpose()),
            SideVariant::InverseTranspose => q.transpose().inverse(),
        }
    }
}

/// Runs [`automorphism_check`] for every [`SideVariant`] of `m`.
pub fn side_search(a: &[TowerElem], p: &AffineMat, m: &IntMat) -> Vec<(SideVariant, RatMat, Intertwining)> {
    SideVariant::ALL
        .into_iter()
        .filter_map(|v| {
            let r = v.apply(m)?;
            let verdict = automorphism_check(a, p, &r);
            Some((v, r, verdict))
        })
        .collect()
}
