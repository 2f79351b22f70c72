use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::smith_normal_form;
use crate::{IntMat, RatMat, Rational};

/// Fraction-free (Bareiss) determinant.
pub fn det_bareiss(a: &IntMat) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetInverse {
    pub det: BigInt,
    pub inverse: Option<RatMat>,
}

/// Exact determinant plus the rational inverse when it exists.
pub fn exact_det_inv(a: &IntMat) -> DetInverse {
    let det = det_bareiss(a);
    let inverse = if det.is_zero() {
        None
    } else {
        a.convert(|x| Rational::from_integer(x.clone())).inverse()
    };
    DetInverse { det, inverse }
}

pub fn is_unimodular(a: &IntMat) -> bool {
    a.is_square() && det_bareiss(a).abs().is_one()
}

/// Clears denominators row by row.
pub fn integral_rows(a: &RatMat) -> IntMat {
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let l = a.row(i).iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        rows.push(
            a.row(i)
                .iter()
                .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        );
    }
    if rows.is_empty() {
        return IntMat::zeros(0, a.cols());
    }
    IntMat::from_rows(rows)
}

/// Z-basis of `{v ∈ Zⁿ : a·v = 0}`; the result is saturated.
pub fn integer_kernel(a: &RatMat) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if a.rows() == 0 {
        return IntMat::identity(n).to_rows();
    }
    let s = smith_normal_form(&integral_rows(a));
    let r = s.rank();
    (r..n).map(|j| s.v.col(j)).collect()
}

/// Integer solution of `a·x = b`, if any.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_normal_form(a);
    let ub = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            _ if !c.is_zero() => return None,
            _ => {}
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// echelon rows with positive pivots and reduced entries above each pivot.
pub fn hermite_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(n) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut top = 0;
    for c in 0..n {
        // Euclid on column c among rows top..
        loop {
            let live: Vec<usize> = (top..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if live.len() <= 1 {
                if let Some(&p) = live.first() {
                    rows.swap(top, p);
                }
                break;
            }
            let p = *live.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &live {
                if i != p {
                    let q = rows[i][c].div_floor(&rows[p][c]);
                    let src = rows[p].clone();
                    for (x, s) in rows[i].iter_mut().zip(&src) {
                        *x -= &q * s;
                    }
                }
            }
        }
        if top >= rows.len() || rows[top][c].is_zero() {
            continue;
        }
        if rows[top][c].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -x.clone();
            }
        }
        let piv = rows[top].clone();
        for row in rows.iter_mut().take(top) {
            let q = row[c].div_floor(&piv[c]);
            for (x, s) in row.iter_mut().zip(&piv) {
                *x -= &q * s;
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}

/// Equality of the lattices spanned by two vector families.
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    hermite_basis(a) == hermite_basis(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::int_mat;
    use crate::scalar::ratio;

    #[test]
    fn bareiss_matches_known() {
        assert_eq!(det_bareiss(&IntMat::standard_symplectic(4)), BigInt::from(1));
        assert_eq!(det_bareiss(&int_mat(&[&[0, 2], &[3, 1]])), BigInt::from(-6));
        assert_eq!(det_bareiss(&int_mat(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn inverse_exists_iff_det_nonzero() {
        let r = exact_det_inv(&int_mat(&[&[2, 1], &[1, 1]]));
        assert_eq!(r.det, BigInt::from(1));
        assert!(r.inverse.unwrap().mul(&RatMat::from_fn(2, 2, |i, j| ratio([[2, 1], [1, 1]][i][j], 1))).is_identity());
        assert!(exact_det_inv(&int_mat(&[&[1, 2], &[2, 4]])).inverse.is_none());
    }

    #[test]
    fn kernel_cases() {
        assert!(integer_kernel(&RatMat::identity(3)).is_empty());
        assert_eq!(integer_kernel(&RatMat::zeros(1, 3)).len(), 3);
        let a = RatMat::from_rows(vec![vec![ratio(1, 2), ratio(1, 3), ratio(0, 1)]]);
        let k = integer_kernel(&a);
        let expect = vec![
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)],
        ];
        assert!(same_lattice(&k, &expect));
    }

    #[test]
    fn hermite_detects_index() {
        let a = vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(1)]];
        let b = vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(1)]];
        assert!(!same_lattice(&a, &b));
        let c = vec![vec![BigInt::from(2), BigInt::from(1)], vec![BigInt::from(4), BigInt::from(1)]];
        assert!(same_lattice(&a, &c));
    }

    #[test]
    fn integer_solve() {
        let a = int_mat(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&a, &[BigInt::from(4), BigInt::from(9)]), Some(vec![BigInt::from(2), BigInt::from(3)]));
        assert_eq!(solve_integer(&a, &[BigInt::from(1), BigInt::from(0)]), None);
    }
}
