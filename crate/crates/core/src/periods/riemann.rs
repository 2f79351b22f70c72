use std::cmp::Ordering;

use num_traits::Zero;

use super::affine::{BallPoint, QuadraticForm};
use super::period_matrix::PeriodMatrix;
use super::PeriodError;
use crate::exactfield::ComplexBall;
use crate::{BallMat, Matrix};

/// Global sign `s` in `s·i·Π E⁻¹ Π̄ᵀ ≻ 0`.
pub const POSITIVITY_SIGN: i64 = 1;

/// `Π E⁻¹ Πᵀ` expanded symbolically.
pub fn riemann_first_relation(p: &PeriodMatrix) -> Matrix<QuadraticForm> {
    let e_inv = p
        .polarization()
        .to_rational()
        .inverse()
        .expect("polarization is nondegenerate");
    let pi = p.entries();
    let n = pi.cols();
    Matrix::from_fn(pi.rows(), pi.rows(), |a, b| {
        let mut acc = QuadraticForm::default();
        for k in 0..n {
            for l in 0..n {
                let c = &e_inv[(k, l)];
                if c.is_zero() || pi[(a, k)].is_zero() || pi[(b, l)].is_zero() {
                    continue;
                }
                let term = (pi[(a, k)].clone() * pi[(b, l)].clone())
                    .scale(&crate::TowerElem::rational(c.clone()));
                acc = acc + term;
            }
        }
        acc
    })
}

pub fn first_relation_holds(p: &PeriodMatrix) -> bool {
    riemann_first_relation(p).iter().all(QuadraticForm::is_identically_zero)
}

#[derive(Debug, Clone)]
pub enum PositivityVerdict {
    /// Every leading principal minor is certified positive.
    Positive { minors: Vec<ComplexBall> },
    /// Minor `index` (1-based size) is certified negative.
    NotPositive { index: usize, minor: ComplexBall },
}

impl PositivityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, PositivityVerdict::Positive { .. })
    }
}

/// `sign · i · Π E⁻¹ Π̄ᵀ` at a point, as a ball matrix.
pub fn hermitian_riemann_form(
    p: &PeriodMatrix,
    point: &BallPoint,
    prec: u64,
    sign: i64,
) -> Result<BallMat, PeriodError> {
    let pi = p.eval_ball(point, prec)?;
    let e_inv = p
        .polarization()
        .to_rational()
        .inverse()
        .expect("polarization is nondegenerate")
        .map(|q| ComplexBall::from_rational(q, prec));
    let pi_bar_t = pi.transpose().map(ComplexBall::conj);
    let h = pi.mul(&e_inv).mul(&pi_bar_t);
    let s = ComplexBall::from_int(sign);
    Ok(h.map(|x| x.mul_i() * s.clone()))
}

/// Certifies positive definiteness by leading principal minors.
pub fn riemann_positivity(
    p: &PeriodMatrix,
    point: &BallPoint,
    prec: u64,
) -> Result<PositivityVerdict, PeriodError> {
    let h = hermitian_riemann_form(p, point, prec, POSITIVITY_SIGN)?;
    let minors = leading_minors(&h);
    for (k, m) in minors.iter().enumerate() {
        match m.real_sign() {
            Some(Ordering::Greater) => {}
            Some(_) => {
                return Ok(PositivityVerdict::NotPositive {
                    index: k + 1,
                    minor: m.clone(),
                })
            }
            None => {
                return Err(PeriodError::Inconclusive {
                    what: format!("leading minor {} encloses zero", k + 1),
                    prec,
                })
            }
        }
    }
    Ok(PositivityVerdict::Positive { minors })
}

/// Determinant by cofactor expansion (sizes here are at most 6).
pub fn ball_det(m: &BallMat) -> ComplexBall {
    assert!(m.is_square());
    let n = m.rows();
    match n {
        0 => ComplexBall::from_int(1),
        1 => m[(0, 0)].clone(),
        2 => m[(0, 0)].clone() * m[(1, 1)].clone() - m[(0, 1)].clone() * m[(1, 0)].clone(),
        _ => {
            let mut acc = ComplexBall::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let rows: Vec<usize> = (1..n).collect();
                let minor = ball_det(&m.select_rows(&rows).select_cols(&cols));
                let term = m[(0, j)].clone() * minor;
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

pub fn leading_minors(m: &BallMat) -> Vec<ComplexBall> {
    (1..=m.rows())
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            ball_det(&m.select_rows(&idx).select_cols(&idx))
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Inertia `(positive, negative)` of a Hermitian ball matrix by Jacobi's
/// sign-change rule, trying symmetric permutations until every leading
/// minor is certified nonzero.
pub fn hermitian_signature(h: &BallMat, prec: u64) -> Result<(usize, usize), PeriodError> {
    let n = h.rows();
    for perm in permutations(n) {
        let hp = h.select_rows(&perm).select_cols(&perm);
        let signs: Option<Vec<Ordering>> = leading_minors(&hp).iter().map(ComplexBall::real_sign).collect();
        let Some(signs) = signs else { continue };
        if signs.contains(&Ordering::Equal) {
            continue;
        }
        let mut prev = Ordering::Greater;
        let mut negative = 0;
        for s in signs {
            if s != prev {
                negative += 1;
            }
            prev = s;
        }
        return Ok((n - negative, negative));
    }
    Err(PeriodError::Inconclusive {
        what: "no ordering with all leading minors certified nonzero".into(),
        prec,
    })
}
