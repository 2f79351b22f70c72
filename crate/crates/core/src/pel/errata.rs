//! Entrywise comparison of computed data with the printed values.

use num_traits::Zero;
use serde_json::{json, Value};

use super::family::{to_ambient, FamilyDatum};
use super::hermitian::defw_residual;
use super::matching::MatchSolution;
use crate::fixtures;
use crate::periods::{affine_left_mul, affine_mismatches};
use crate::{IntMat, TowerElem, TowerMat};

/// One audited object.
#[derive(Debug, Clone, PartialEq)]
pub struct ErratumItem {
    pub subject: &'static str,
    pub total: usize,
    /// Entries (row, col) where computed and printed values differ.
    pub disagreements: Vec<(usize, usize)>,
    /// Entries that are required to agree.
    pub required: Vec<(usize, usize)>,
}

impl ErratumItem {
    pub fn agree(&self) -> usize {
        self.total - self.disagreements.len()
    }

    /// A required entry disagrees.
    pub fn is_fatal(&self) -> bool {
        self.required.iter().any(|e| self.disagreements.contains(e))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "agree": self.agree(),
            "total": self.total,
            "disagreements": self.disagreements.iter().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
            "fatal": self.is_fatal(),
        })
    }
}

fn tower_mismatches(a: &TowerMat, b: &TowerMat) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)] != b[(i, j)] {
                out.push((i, j));
            }
        }
    }
    out
}

fn nonzero_entries(m: &TowerMat) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Audits the family, diagonalizer, matching constants, closed-form Prym
/// family, Prym block and printed symplectic basis.
pub fn audit(datum: &FamilyDatum, solution: &MatchSolution) -> Vec<ErratumItem> {
    let mut items = Vec::new();

    let family = datum.periods();
    items.push(ErratumItem {
        subject: "family over the 2-ball",
        total: 18,
        disagreements: affine_mismatches(&family, &fixtures::z_s_displayed()),
        required: (0..6).map(|j| (0, j)).collect(),
    });

    items.push(ErratumItem {
        subject: "printed W vs W from family row 1",
        total: 9,
        disagreements: tower_mismatches(&fixtures::w_displayed(), &datum.w),
        required: Vec::new(),
    });
    items.push(ErratumItem {
        subject: "T = W^T D conj(W) for printed W",
        total: 9,
        disagreements: nonzero_entries(&defw_residual(datum.t.matrix(), &fixtures::w_displayed())),
        required: Vec::new(),
    });

    let computed: Vec<TowerElem> = solution.constants().to_vec();
    let printed = fixtures::matching_constants();
    items.push(ErratumItem {
        subject: "matching constants c11 c22 c23 c32 c33",
        total: 5,
        disagreements: (0..5).filter(|&k| computed[k] != printed[k]).map(|k| (0, k)).collect(),
        required: vec![(0, 0)],
    });

    let prym = affine_left_mul(&solution.c, &to_ambient(&family, datum.module.l()));
    let printed_prym = fixtures::prym_family_displayed();
    items.push(ErratumItem {
        subject: "closed-form Prym family",
        total: 18,
        disagreements: affine_mismatches(&prym, &printed_prym),
        required: Vec::new(),
    });
    let at = solution.point();
    let eval = |m: &crate::periods::AffineMat| m.map(|a| a.substitute(&at));
    items.push(ErratumItem {
        subject: "closed-form Prym family at z*",
        total: 18,
        disagreements: affine_mismatches(&eval(&prym), &eval(&printed_prym)),
        required: Vec::new(),
    });

    items.push(ErratumItem {
        subject: "Prym block vs block of (Z1|Z2)B",
        total: 18,
        disagreements: tower_mismatches(&fixtures::z3_special_displayed(), &fixtures::z3_special()),
        required: Vec::new(),
    });

    let gram = fixtures::homology_model().gram(&fixtures::e_basis_displayed());
    let j = IntMat::standard_symplectic(4);
    let mut gram_bad = Vec::new();
    for a in 0..8 {
        for b in 0..8 {
            if gram[(a, b)] != j[(a, b)] {
                gram_bad.push((a, b));
            }
        }
    }
    items.push(ErratumItem {
        subject: "Gram matrix of printed e1..e8",
        total: 64,
        disagreements: gram_bad,
        required: Vec::new(),
    });

    items
}
