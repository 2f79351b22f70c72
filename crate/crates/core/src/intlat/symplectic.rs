use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{integer_kernel, AlternatingForm, LatticeError};
use crate::IntMat;

/// Basis `s` (as columns) with `sᵀ E s = [[0, D], [−D, 0]]`, `D = diag(d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticBasis {
    pub s: IntMat,
    pub d: Vec<BigInt>,
}

fn pair(e: &IntMat, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            let g = &e[(i, j)];
            if !g.is_zero() && !yj.is_zero() {
                acc += xi * g * yj;
            }
        }
    }
    acc
}

/// `v += k·w`
fn axpy(v: &mut [BigInt], k: &BigInt, w: &[BigInt]) {
    for (a, b) in v.iter_mut().zip(w) {
        *a += k * b;
    }
}

/// Index pair with the smallest nonzero |pairing|.
fn min_pair(e: &IntMat, vs: &[Vec<BigInt>]) -> Option<(usize, usize, BigInt)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let p = pair(e, &vs[i], &vs[j]);
            if p.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| p.abs() < b.abs()) {
                best = Some((i, j, p));
            }
        }
    }
    best
}

/// Splits off one hyperbolic pair from `rest`, leaving the remaining vectors
/// orthogonal to it and all their mutual pairings divisible by `d`.
fn split_pair(e: &IntMat, rest: &mut Vec<Vec<BigInt>>) -> Option<(Vec<BigInt>, Vec<BigInt>, BigInt)> {
    'restart: loop {
        let (i, j, p) = min_pair(e, rest)?;
        let (mut x, mut y) = (rest[i].clone(), rest[j].clone());
        let mut d = p;
        if d.is_negative() {
            std::mem::swap(&mut x, &mut y);
            d = -d;
        }
        let others: Vec<usize> = (0..rest.len()).filter(|&k| k != i && k != j).collect();
        for &k in &others {
            let a = pair(e, &x, &rest[k]);
            let b = pair(e, &y, &rest[k]);
            let (qa, ra) = a.div_mod_floor(&d);
            let (qb, rb) = b.div_mod_floor(&d);
            // ⟨x, w − qa·y⟩ = a − qa·d, ⟨y, w + qb·x⟩ = b − qb·d
            axpy(&mut rest[k], &-qa, &y);
            axpy(&mut rest[k], &qb, &x);
            if !ra.is_zero() || !rb.is_zero() {
                // a smaller pairing now exists; pick again
                continue 'restart;
            }
        }
        for (n, &k) in others.iter().enumerate() {
            for &l in &others[n + 1..] {
                if !pair(e, &rest[k], &rest[l]).is_multiple_of(&d) {
                    // ⟨x + w_k, w_l⟩ = ⟨w_k, w_l⟩ is not divisible by d
                    let wk = rest[k].clone();
                    axpy(&mut rest[i], &BigInt::from(1), &wk);
                    continue 'restart;
                }
            }
        }
        let remaining = others.iter().map(|&k| rest[k].clone()).collect();
        *rest = remaining;
        return Some((x, y, d));
    }
}

/// Frobenius normal form of a nondegenerate integral alternating form.
pub fn symplectic_basis(form: &AlternatingForm) -> Result<SymplecticBasis, LatticeError> {
    let e = form.gram();
    let n = e.rows();
    let radical = integer_kernel(&e.convert(|x| crate::Rational::from_integer(x.clone())));
    if !radical.is_empty() {
        return Err(LatticeError::Degenerate { radical });
    }
    let mut rest: Vec<Vec<BigInt>> = IntMat::identity(n).to_rows();
    let (mut xs, mut ys, mut ds) = (Vec::new(), Vec::new(), Vec::new());
    while !rest.is_empty() {
        let (x, y, d) = split_pair(e, &mut rest).expect("nondegenerate form always has a pair");
        xs.push(x);
        ys.push(y);
        ds.push(d);
    }
    xs.extend(ys);
    Ok(SymplecticBasis {
        s: IntMat::from_cols(xs),
        d: ds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::{det_bareiss, int_mat};

    #[test]
    fn standard_2x2_is_fixed() {
        let e = AlternatingForm::new(int_mat(&[&[0, 1], &[-1, 0]])).unwrap();
        let b = symplectic_basis(&e).unwrap();
        assert!(b.s.is_identity());
        assert_eq!(b.d, vec![BigInt::from(1)]);
    }

    #[test]
    fn reduces_to_divisor_chain() {
        let g = int_mat(&[&[0, 2, 3, 0], &[-2, 0, 0, 5], &[-3, 0, 0, 4], &[0, -5, -4, 0]]);
        let e = AlternatingForm::new(g.clone()).unwrap();
        let b = symplectic_basis(&e).unwrap();
        let f = IntMat::frobenius_form(&b.d);
        assert_eq!(b.s.transpose().mul(&g).mul(&b.s), f);
        assert_eq!(det_bareiss(&b.s).abs(), BigInt::from(1));
        assert!(b.d[1].is_multiple_of(&b.d[0]));
    }

    #[test]
    fn degenerate_reports_radical() {
        let e = AlternatingForm::new(int_mat(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])).unwrap();
        match symplectic_basis(&e) {
            Err(LatticeError::Degenerate { radical }) => {
                assert_eq!(radical, vec![vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)]]);
            }
            other => panic!("{other:?}"),
        }
    }
}
