use num_traits::{One, Zero};

use super::hermitian::SkewHermitian3;
use super::matching::{match_solver, prym_family};
use super::module::PelModule;
use super::{ColumnOrder, Conventions, Embedding, IdentityReading, PelError};
use crate::exactfield::ComplexBall;
use crate::intlat::to_rational;
use crate::periods::{
    affine_mismatches, affine_right_mul, automorphism_check, to_tower, AffineForm, AffineMat, BallPoint,
    Intertwining, Param, PeriodError,
};
use crate::scalar::ratio;
use crate::{BallMat, IntMat, Matrix, RatMat, TowerElem, TowerMat};

/// Module, form, diagonalizer and the conventions used to build the family.
#[derive(Debug, Clone)]
pub struct FamilyDatum {
    pub module: PelModule,
    pub t: SkewHermitian3,
    pub w: TowerMat,
    pub conventions: Conventions,
}

impl FamilyDatum {
    /// Periods in the `u₁ … u₆` basis.
    pub fn periods(&self) -> AffineMat {
        family_periods(&self.w, self.conventions)
    }

    /// Periods in the ambient lattice basis.
    pub fn ambient_periods(&self) -> AffineMat {
        to_ambient(&self.periods(), self.module.l())
    }
}

fn sigma_rho(e: Embedding) -> TowerElem {
    match e {
        Embedding::Sigma => TowerElem::zeta_pow(4),
        Embedding::SigmaBar => TowerElem::zeta_pow(8),
    }
}

/// Columns `J_z(j(ρ^s u_k))`: row 0 is `(z₁, z₂, 1)·W` times `σ(ρ^s)`,
/// rows 1–2 are `(I₂ | z)·W̄` times `σ̄(ρ^s)`.
pub fn family_periods(w: &TowerMat, conv: Conventions) -> AffineMat {
    let z = [
        AffineForm::param(Param::Z1),
        AffineForm::param(Param::Z2),
        AffineForm::constant(TowerElem::one()),
    ];
    let w_bar = w.map(TowerElem::conj);
    let ident = match conv.i2_in_jz {
        IdentityReading::Identity => TowerElem::one(),
        IdentityReading::ITimesIdentity => TowerElem::i(),
    };
    let s1 = sigma_rho(conv.embedding);
    let mut out: AffineMat = Matrix::from_fn(3, 6, |_, _| AffineForm::zero());
    for k in 0..3 {
        let top = (0..3).fold(AffineForm::zero(), |acc, m| acc + z[m].scale(&w[(m, k)]));
        let lower: Vec<AffineForm> = (0..2)
            .map(|r| AffineForm::constant(ident.clone() * w_bar[(r, k)].clone()) + z[r].scale(&w_bar[(2, k)]))
            .collect();
        for s in 0..2 {
            let unit = if s == 0 { TowerElem::one() } else { s1.clone() };
            let col = conv.column_order.position(k, s);
            out[(0, col)] = top.scale(&unit);
            for r in 0..2 {
                out[(r + 1, col)] = lower[r].scale(&unit.conj());
            }
        }
    }
    out
}

/// `F·L⁻¹`: from the `u`-basis to the ambient basis.
pub fn to_ambient(f: &AffineMat, l: &IntMat) -> AffineMat {
    let inv = to_rational(l).inverse().expect("L is unimodular");
    affine_right_mul(f, &to_tower(&inv))
}

/// Matrix of multiplication by ρ on the `u`-basis, acting on the right.
pub fn rho_action(order: ColumnOrder) -> RatMat {
    let mut r = RatMat::zeros(6, 6);
    for k in 0..3 {
        let (a, b) = (order.position(k, 0), order.position(k, 1));
        r[(b, a)] = ratio(1, 1);
        r[(a, b)] = ratio(-1, 1);
        r[(b, b)] = ratio(-1, 1);
    }
    r
}

/// `ρ·J_z(j(b)) = J_z(j(ρb))` on every basis column, symbolically in `z`.
pub fn endomorphism_check(f: &AffineMat, conv: Conventions) -> Intertwining {
    let s = sigma_rho(conv.embedding);
    let a = [s.clone(), s.conj(), s.conj()];
    automorphism_check(&a, f, &rho_action(conv.column_order))
}

/// `|z₁|² + |z₂|²` on balls.
pub fn ball_norm_sq(z1: &ComplexBall, z2: &ComplexBall) -> ComplexBall {
    (z1.clone() * z1.conj() + z2.clone() * z2.conj()).real_part()
}

fn point(z1: &ComplexBall, z2: &ComplexBall) -> BallPoint {
    let mut p = BallPoint::new();
    p.insert(Param::Z1, z1.clone());
    p.insert(Param::Z2, z2.clone());
    p
}

/// `H = 2·diag((1 − |z|²)⁻¹, (I₂ − z̄zᵀ)⁻¹)`.
fn polarization_h(z1: &ComplexBall, z2: &ComplexBall, prec: u64) -> Result<BallMat, PeriodError> {
    let inconclusive = |what: &str| PeriodError::Inconclusive { what: what.into(), prec };
    let one = ComplexBall::from_int(1);
    let two = ComplexBall::from_int(2);
    let h11 = (one.clone() - ball_norm_sq(z1, z2)).inverse().ok_or_else(|| inconclusive("1 - |z|^2"))?;
    let z = [z1.clone(), z2.clone()];
    let m = BallMat::from_fn(2, 2, |a, b| {
        let d = if a == b { one.clone() } else { ComplexBall::zero() };
        d - z[a].conj() * z[b].clone()
    });
    let det = m[(0, 0)].clone() * m[(1, 1)].clone() - m[(0, 1)].clone() * m[(1, 0)].clone();
    let inv_det = det.inverse().ok_or_else(|| inconclusive("det(I - z̄zᵀ)"))?;
    let adj = [
        [m[(1, 1)].clone(), -m[(0, 1)].clone()],
        [-m[(1, 0)].clone(), m[(0, 0)].clone()],
    ];
    Ok(BallMat::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => two.clone() * h11.clone(),
        (0, _) | (_, 0) => ComplexBall::zero(),
        _ => two.clone() * adj[i - 1][j - 1].clone() * inv_det.clone(),
    }))
}

/// Checks `Im(xᵀ H ȳ) = E(a, b)` for the family columns at one ball point;
/// returns the failing index pairs.
pub fn polarization_identity_check(
    f: &AffineMat,
    pairing: &IntMat,
    z1: &ComplexBall,
    z2: &ComplexBall,
    prec: u64,
) -> Result<Vec<(usize, usize)>, PeriodError> {
    let vals = f.try_map(|a| a.eval_ball(&point(z1, z2), prec))?;
    let h = polarization_h(z1, z2, prec)?;
    let half_i = ComplexBall::from_rational(&ratio(1, 2), prec).mul_i();
    let n = f.cols();
    let mut bad = Vec::new();
    for k in 0..n {
        for l in 0..n {
            let mut v = ComplexBall::zero();
            for a in 0..3 {
                for b in 0..3 {
                    if h[(a, b)].is_zero() {
                        continue;
                    }
                    v = v + vals[(a, k)].clone() * h[(a, b)].clone() * vals[(b, l)].conj();
                }
            }
            // Im v = (v̄ − v)·i/2
            let im = (v.conj() - v) * half_i.clone();
            let target = crate::Rational::from_integer(pairing[(k, l)].clone());
            if !im.contains_rational(&target, &crate::Rational::zero()) {
                bad.push((k, l));
            }
        }
    }
    Ok(bad)
}

/// One row of the convention search.
#[derive(Debug, Clone)]
pub struct ConventionCandidate {
    pub conventions: Conventions,
    /// Entries agreeing with the displayed family.
    pub agreement: usize,
    pub mismatches: Vec<(usize, usize)>,
    /// Whether matching against the anchor succeeds exactly.
    pub anchor_ok: bool,
}

/// Tries every convention; scores agreement with `displayed` and checks that
/// the anchor is reproduced by [`match_solver`] and [`prym_family`].
pub fn search_conventions(
    w: &TowerMat,
    l: &IntMat,
    displayed: &AffineMat,
    anchor: &TowerMat,
    polarization: &IntMat,
) -> Vec<ConventionCandidate> {
    Conventions::all()
        .into_iter()
        .map(|conv| {
            let f = family_periods(w, conv);
            let mismatches = affine_mismatches(&f, displayed);
            let amb = to_ambient(&f, l);
            let anchor_ok = match_solver(&amb, anchor)
                .and_then(|sol| {
                    let p = prym_family(&sol.c, &amb, polarization)?;
                    Ok(p.eval_exact(&sol.point())? == *anchor)
                })
                .unwrap_or(false);
            ConventionCandidate {
                conventions: conv,
                agreement: 18 - mismatches.len(),
                mismatches,
                anchor_ok,
            }
        })
        .collect()
}

/// Best-agreeing candidate among those reproducing the anchor.
pub fn select_conventions(candidates: &[ConventionCandidate]) -> Result<Conventions, PelError> {
    let ok: Vec<&ConventionCandidate> = candidates.iter().filter(|c| c.anchor_ok).collect();
    let best = ok.iter().map(|c| c.agreement).max().ok_or(PelError::NoConvention)?;
    let top: Vec<&&ConventionCandidate> = ok.iter().filter(|c| c.agreement == best).collect();
    if top.len() > 1 {
        return Err(PelError::AmbiguousConvention(top.iter().map(|c| c.conventions.label()).collect()));
    }
    Ok(top[0].conventions)
}
