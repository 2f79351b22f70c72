use std::fmt;

use num_traits::{One, Zero};

use crate::intlat::{det_bareiss, to_rational};
use crate::{IntMat, RatMat};

/// Intersection pairing on generators `u₁ … u_N` together with the deck
/// transformation as a permutation (`shift[k]` is the image of `u_k`).
#[derive(Debug, Clone, PartialEq)]
pub struct HomologyModel {
    pairing: IntMat,
    shift: Vec<usize>,
}

impl HomologyModel {
    pub fn new(pairing: IntMat, shift: Vec<usize>) -> Self {
        assert!(pairing.is_square() && pairing.rows() == shift.len(), "pairing and shift sizes differ");
        HomologyModel { pairing, shift }
    }

    pub fn pairing(&self) -> &IntMat {
        &self.pairing
    }

    pub fn shift(&self) -> &[usize] {
        &self.shift
    }

    /// Permutation matrix `S` with `S·e_k = e_{shift[k]}`.
    pub fn shift_matrix(&self) -> IntMat {
        let n = self.shift.len();
        let mut s = IntMat::zeros(n, n);
        for (k, &t) in self.shift.iter().enumerate() {
            s[(t, k)] = One::one();
        }
        s
    }

    /// `Xᵀ M X` for combinations given as columns of `x`.
    pub fn gram(&self, x: &IntMat) -> IntMat {
        x.transpose().mul(&self.pairing).mul(x)
    }

    /// Matrix of the deck transformation on the span of the columns of `x`,
    /// `R = (XᵀMX)⁻¹ XᵀM S X`. Integral iff the span is stable.
    pub fn deck_action(&self, x: &IntMat) -> Option<RatMat> {
        let g = to_rational(&self.gram(x)).inverse()?;
        let rhs = to_rational(&x.transpose().mul(&self.pairing).mul(&self.shift_matrix()).mul(x));
        Some(g.mul(&rhs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomologyCheck {
    SkewSymmetric,
    ShiftEquivariant,
    Rank,
    GeneratingMinor,
    SymplecticGram,
}

impl fmt::Display for HomologyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomologyCheck::SkewSymmetric => "skew-symmetry",
            HomologyCheck::ShiftEquivariant => "shift equivariance",
            HomologyCheck::Rank => "rank",
            HomologyCheck::GeneratingMinor => "generating minor",
            HomologyCheck::SymplecticGram => "symplectic Gram matrix",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub check: HomologyCheck,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomologyReport {
    pub outcomes: Vec<CheckOutcome>,
    pub gram: IntMat,
}

impl HomologyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed).collect()
    }

    pub fn passed(&self, check: HomologyCheck) -> bool {
        self.outcomes.iter().any(|o| o.check == check && o.passed)
    }
}

/// Itemized checks on the model: the pairing is alternating and
/// shift-invariant, has rank `minor.len()`, the principal minor on `minor`
/// is nondegenerate, and the columns of `x` have Gram matrix `J`.
pub fn verify_homology_model(h: &HomologyModel, minor: &[usize], x: &IntMat) -> HomologyReport {
    let m = &h.pairing;
    let n = m.rows();
    let mut outcomes = Vec::new();

    let bad: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m[(i, j)] != -m[(j, i)].clone() || (i == j && !m[(i, i)].is_zero()))
        .filter(|&(i, j)| i <= j)
        .collect();
    outcomes.push(CheckOutcome {
        check: HomologyCheck::SkewSymmetric,
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "M^T = -M".into() } else { format!("violated at {bad:?}") },
    });

    let sigma = &h.shift;
    let bad: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m[(sigma[i], sigma[j])] != m[(i, j)])
        .collect();
    outcomes.push(CheckOutcome {
        check: HomologyCheck::ShiftEquivariant,
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "M[s(i),s(j)] = M[i,j]".into()
        } else {
            format!("{} entries violate, first {:?}", bad.len(), bad[0])
        },
    });

    let rank = to_rational(m).rank();
    outcomes.push(CheckOutcome {
        check: HomologyCheck::Rank,
        passed: rank == minor.len(),
        detail: format!("rank {rank}, expected {}", minor.len()),
    });

    let det = det_bareiss(&m.select_rows(minor).select_cols(minor));
    outcomes.push(CheckOutcome {
        check: HomologyCheck::GeneratingMinor,
        passed: !det.is_zero(),
        detail: format!("det of minor {minor:?} = {det}"),
    });

    let gram = h.gram(x);
    let g = x.cols() / 2;
    let j = IntMat::standard_symplectic(g);
    let ok = x.cols().is_multiple_of(2) && gram == j;
    let detail = if ok {
        "X^T M X = J".to_string()
    } else {
        let diff: Vec<(usize, usize)> = if gram.rows() == j.rows() {
            (0..gram.rows())
                .flat_map(|a| (0..gram.cols()).map(move |b| (a, b)))
                .filter(|&(a, b)| gram[(a, b)] != j[(a, b)])
                .collect()
        } else {
            Vec::new()
        };
        format!("X^T M X differs from J at {} entries {:?}", diff.len(), diff)
    };
    outcomes.push(CheckOutcome { check: HomologyCheck::SymplecticGram, passed: ok, detail });

    HomologyReport { outcomes, gram }
}
