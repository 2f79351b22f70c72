use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::IntMat;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, `dᵢ | dᵢ₊₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    /// Diagonal entries of `d`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Nonzero elementary divisors.
    pub fn divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

struct Reducer {
    a: IntMat,
    u: IntMat,
    v: IntMat,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.v.swap_cols(i, j);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let t = &m[(src, j)] * k;
                m[(dst, j)] += t;
            }
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for i in 0..m.rows() {
                let t = &m[(i, src)] * k;
                m[(i, dst)] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let t = -m[(i, j)].clone();
                m[(i, j)] = t;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` outside the pivot. Returns false when a
    /// remainder appeared and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            let q = self.a[(i, t)].div_floor(&p);
            if !q.is_zero() {
                self.add_row(i, t, &-q);
            }
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            let q = self.a[(t, j)].div_floor(&p);
            if !q.is_zero() {
                self.add_col(j, t, &-q);
            }
            clean &= self.a[(t, j)].is_zero();
        }
        clean
    }
}

pub fn smith_normal_form(a: &IntMat) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: IntMat::identity(m),
        v: IntMat::identity(n),
    };
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = r.min_entry(t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            if !r.clear_cross(t) {
                continue;
            }
            // pivot must divide the remaining block
            let p = r.a[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !r.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }
    SmithForm {
        u: r.u,
        d: r.a,
        v: r.v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::{det_bareiss, int_mat};

    fn check(a: &IntMat) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(det_bareiss(&s.u).abs(), BigInt::from(1));
        assert_eq!(det_bareiss(&s.v).abs(), BigInt::from(1));
        let d = s.divisors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn diag_2_4() {
        let s = check(&int_mat(&[&[2, 0], &[0, 4]]));
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn diag_needs_gcd_step() {
        let s = check(&int_mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.divisors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check(&int_mat(&[&[0, 0, 0], &[0, 0, 0]]));
        assert!(s.divisors().is_empty());
        let s = check(&int_mat(&[&[4, 6, 8], &[6, 9, 12]]));
        assert_eq!(s.divisors(), vec![BigInt::from(1)]);
    }
}
