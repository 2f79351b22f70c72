use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::module::PelModule;
use super::PelError;
use crate::exactfield::{ComplexBall, Dyadic};
use crate::intlat::to_rational;
use crate::periods::{hermitian_signature, PeriodError};
use crate::scalar::Field;
use crate::{BallMat, IntMat, Matrix, RatMat, Rational, TowerElem, TowerMat};

/// 3×3 skew-Hermitian matrix over `K = Q(ρ)`, nondegenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitian3(TowerMat);

impl SkewHermitian3 {
    pub fn new(t: TowerMat) -> Result<Self, PelError> {
        if t.rows() != 3 || t.cols() != 3 {
            return Err(PelError::Period(PeriodError::Shape("T must be 3x3".into())));
        }
        for i in 0..3 {
            for j in 0..3 {
                if !t[(i, j)].in_eisenstein() {
                    return Err(PelError::NotInK(i, j));
                }
                if t[(j, i)].conj() != -t[(i, j)].clone() {
                    return Err(PelError::NotSkewHermitian(i, j));
                }
            }
        }
        if t.det().is_zero() {
            return Err(PelError::Degenerate);
        }
        Ok(SkewHermitian3(t))
    }

    pub fn matrix(&self) -> &TowerMat {
        &self.0
    }

    /// The Hermitian matrix `−iT`.
    pub fn hermitian(&self) -> TowerMat {
        let mi = -TowerElem::i();
        self.0.map(|x| x.clone() * mi.clone())
    }

    pub fn neg(&self) -> Self {
        SkewHermitian3(self.0.neg())
    }

    /// Trace data `(tr T_kl, tr ρT_kl)`.
    pub fn traces(&self) -> Result<(RatMat, RatMat), PelError> {
        let rho = TowerElem::rho();
        let tr0 = self.0.try_map(|x| x.trace_k())?;
        let tr1 = self.0.try_map(|x| (rho.clone() * x.clone()).trace_k())?;
        Ok((tr0, tr1))
    }
}

/// Entrywise `p + qρ` from `tr = 2p − q` and `tr ρ· = −p − q`.
pub fn t_from_traces(g0: &RatMat, g1: &RatMat) -> TowerMat {
    Matrix::from_fn(g0.rows(), g0.cols(), |i, j| {
        let p = (g0[(i, j)].clone() - g1[(i, j)].clone()) / Rational::from_integer(3.into());
        let q = -g1[(i, j)].clone() - p.clone();
        TowerElem::rational(p) + TowerElem::rho().scale(&q)
    })
}

/// The unique `T` over `K` with the given trace data, checked skew-Hermitian.
pub fn solve_t(g0: &IntMat, g1: &IntMat) -> Result<SkewHermitian3, PelError> {
    SkewHermitian3::new(t_from_traces(&to_rational(g0), &to_rational(g1)))
}

/// Inertia of `−iT`, certified on balls.
pub fn signature(t: &SkewHermitian3, prec: u64) -> Result<(usize, usize), PelError> {
    let h = t.hermitian().map(|x| x.embed(prec));
    Ok(hermitian_signature(&h, prec)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityReport {
    /// `tr(aᵀ T b̄)` on `u₁ … u₆`.
    pub pairing: RatMat,
    pub non_integral: Vec<(usize, usize)>,
    /// Entries differing from the lattice pairing.
    pub mismatched: Vec<(usize, usize)>,
}

impl IntegralityReport {
    pub fn ok(&self) -> bool {
        self.non_integral.is_empty() && self.mismatched.is_empty()
    }
}

/// Evaluates the trace pairing on all 36 basis pairs and compares it with
/// `LᵀEL`.
pub fn integrality_check(module: &PelModule, t: &TowerMat, e: &IntMat) -> Result<IntegralityReport, PelError> {
    let unit = |s: usize| if s < 3 { TowerElem::one() } else { TowerElem::rho() };
    let mut entries = Vec::with_capacity(36);
    for k in 0..6 {
        for l in 0..6 {
            let x = unit(k) * t[(k % 3, l % 3)].clone() * unit(l).conj();
            entries.push(x.trace_k()?);
        }
    }
    let pairing = RatMat::from_fn(6, 6, |k, l| entries[6 * k + l].clone());
    let expected = to_rational(&module.pairing(e));
    let mut non_integral = Vec::new();
    let mut mismatched = Vec::new();
    for k in 0..6 {
        for l in 0..6 {
            if !pairing[(k, l)].is_integer() {
                non_integral.push((k, l));
            }
            if pairing[(k, l)] != expected[(k, l)] {
                mismatched.push((k, l));
            }
        }
    }
    Ok(IntegralityReport { pairing, non_integral, mismatched })
}

fn d_matrix() -> TowerMat {
    let i = TowerElem::i();
    TowerMat::diagonal(&[i.clone(), i.clone(), -i])
}

/// `T − Wᵀ·diag(i, i, −i)·W̄`.
pub fn defw_residual(t: &TowerMat, w: &TowerMat) -> TowerMat {
    let w_bar = w.map(TowerElem::conj);
    t.sub(&w.transpose().mul(&d_matrix()).mul(&w_bar))
}

/// Ball version of [`defw_residual`].
pub fn defw_residual_ball(t: &TowerMat, w: &BallMat, prec: u64) -> BallMat {
    let w_bar = w.map(ComplexBall::conj);
    let d = d_matrix().map(|x| x.embed(prec));
    t.map(|x| x.embed(prec)).sub(&w.transpose().mul(&d).mul(&w_bar))
}

/// Upper bound on `|entry|` over a ball matrix.
pub fn max_abs_upper(m: &BallMat) -> Dyadic {
    m.iter().map(ComplexBall::abs_upper).max().unwrap_or_else(Dyadic::zero)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagonalizer {
    /// Every entry lies in the tower.
    Exact(TowerMat),
    /// Some square root left the tower; entries are certified balls.
    Ball(BallMat),
}

/// `A ← EᴴAE`, `G ← GE` for `E` adding `c·col_src` to `col_dst`.
fn congruence_add(a: &mut TowerMat, g: &mut TowerMat, dst: usize, src: usize, c: &TowerElem) {
    let n = a.rows();
    for i in 0..n {
        let v = a[(i, src)].clone() * c.clone();
        a[(i, dst)] = a[(i, dst)].clone() + v;
        let v = g[(i, src)].clone() * c.clone();
        g[(i, dst)] = g[(i, dst)].clone() + v;
    }
    let cb = c.conj();
    for j in 0..n {
        let v = a[(src, j)].clone() * cb.clone();
        a[(dst, j)] = a[(dst, j)].clone() + v;
    }
}

fn congruence_swap(a: &mut TowerMat, g: &mut TowerMat, x: usize, y: usize) {
    a.swap_rows(x, y);
    a.swap_cols(x, y);
    g.swap_cols(x, y);
}

fn real_sign(x: &TowerElem) -> Option<Ordering> {
    let mut prec = 64;
    while prec <= 4096 {
        if let Some(s) = x.embed(prec).real_sign() {
            return Some(s);
        }
        prec *= 2;
    }
    None
}

/// Finds `W` with `T = Wᵀ·diag(i, i, −i)·W̄` by Hermitian congruence on
/// `conj(−iT) = W̄ᵀ S W`, `S = diag(1, 1, −1)`.
pub fn diagonalize_w(t: &SkewHermitian3, prec: u64) -> Result<Diagonalizer, PelError> {
    let n = 3;
    let mut a = t.hermitian().map(TowerElem::conj);
    let mut g = TowerMat::identity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                congruence_swap(&mut a, &mut g, k, j);
            } else {
                let j = (k + 1..n).find(|&j| !a[(k, j)].is_zero()).ok_or(PelError::Degenerate)?;
                let c = [TowerElem::one(), TowerElem::i()]
                    .into_iter()
                    .find(|c| {
                        let x = a[(k, j)].clone() * c.clone();
                        !(x.clone() + x.conj()).is_zero()
                    })
                    .expect("one of 1, i gives a nonzero diagonal");
                congruence_add(&mut a, &mut g, k, j, &c);
            }
        }
        let inv = a[(k, k)].inverse().ok_or(PelError::Degenerate)?;
        for j in k + 1..n {
            if !a[(k, j)].is_zero() {
                let c = -(a[(k, j)].clone() * inv.clone());
                congruence_add(&mut a, &mut g, j, k, &c);
            }
        }
    }
    // a = Gᴴ·conj(−iT)·G is diagonal, so conj(−iT) = G⁻ᴴ a G⁻¹.
    let g_inv = g.inverse().ok_or(PelError::Degenerate)?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for k in 0..n {
        match real_sign(&a[(k, k)]) {
            Some(Ordering::Greater) => pos.push(k),
            Some(Ordering::Less) => neg.push(k),
            _ => return Err(PelError::Degenerate),
        }
    }
    if pos.len() != 2 {
        return Err(PelError::WrongSignature(pos.len(), neg.len()));
    }
    let order: Vec<usize> = pos.into_iter().chain(neg).collect();
    let roots: Vec<Option<TowerElem>> = order
        .iter()
        .map(|&k| {
            let d = a[(k, k)].clone();
            let abs = if real_sign(&d) == Some(Ordering::Less) { -d } else { d };
            abs.sqrt_positive()
        })
        .collect();
    if roots.iter().all(Option::is_some) {
        let w = Matrix::from_fn(n, n, |i, j| {
            roots[i].clone().expect("checked") * g_inv[(order[i], j)].clone()
        });
        return Ok(Diagonalizer::Exact(w));
    }
    let mut rows = Vec::new();
    for (i, &k) in order.iter().enumerate() {
        let d = a[(k, k)].embed(prec + 32);
        let abs = if i < 2 { d } else { -d };
        let r = abs
            .real_part()
            .sqrt_positive()
            .ok_or(PelError::Period(PeriodError::Inconclusive { what: "pivot square root".into(), prec }))?;
        rows.push((0..n).map(|j| r.clone() * g_inv[(k, j)].embed(prec + 32)).collect());
    }
    Ok(Diagonalizer::Ball(Matrix::from_rows(rows)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::int_mat;
    use crate::scalar::ratio;

    #[test]
    fn solve_t_entries() {
        let g0 = int_mat(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        let g1 = int_mat(&[&[-1, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let t = t_from_traces(&to_rational(&g0), &to_rational(&g1));
        assert_eq!(t[(0, 0)], TowerElem::rational(ratio(1, 3)) + TowerElem::rho().scale(&ratio(2, 3)));
        assert_eq!(t[(1, 2)], -TowerElem::rho());
    }

    #[test]
    fn diagonal_form_signature() {
        // √−3 = 1 + 2ρ is i·√3 in K
        let s = TowerElem::one() + TowerElem::rho().scale(&ratio(2, 1));
        let t = SkewHermitian3::new(TowerMat::diagonal(&[s.clone(), s.clone(), -s])).unwrap();
        assert_eq!(signature(&t, 64).unwrap(), (2, 1));
        assert_eq!(signature(&t.neg(), 64).unwrap(), (1, 2));
    }
}
