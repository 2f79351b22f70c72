//! The cyclotomic field Q(ζ) with ζ a primitive 12th root of unity.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{ratio, Field, Rational, Scalar};

/// `c0 + c1 ζ + c2 ζ² + c3 ζ³`, reduced modulo `x⁴ − x² + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    coeffs: [Rational; 4],
}

impl CycloElem {
    pub fn new(coeffs: [Rational; 4]) -> Self {
        CycloElem { coeffs }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        CycloElem::new(c.map(|x| Rational::from_integer(BigInt::from(x))))
    }

    pub fn rational(q: Rational) -> Self {
        CycloElem::new([q, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn zeta() -> Self {
        CycloElem::from_ints([0, 1, 0, 0])
    }

    /// ζ⁴, a primitive cube root of unity.
    pub fn rho() -> Self {
        CycloElem::from_ints([-1, 0, 1, 0])
    }

    /// ζ³.
    pub fn i() -> Self {
        CycloElem::from_ints([0, 0, 0, 1])
    }

    /// `2ζ − ζ³ = ζ + ζ⁻¹`, the positive square root of 3.
    pub fn sqrt3() -> Self {
        CycloElem::from_ints([0, 2, 0, -1])
    }

    /// ζᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12);
        let (base, sign) = if k >= 6 { (k - 6, -1) } else { (k, 1) };
        let c = match base {
            0 => [1, 0, 0, 0],
            1 => [0, 1, 0, 0],
            2 => [0, 0, 1, 0],
            3 => [0, 0, 0, 1],
            4 => [-1, 0, 1, 0],
            _ => [0, -1, 0, 1],
        };
        CycloElem::from_ints(c.map(|x| x * sign))
    }

    /// Image under the automorphism ζ ↦ ζᵏ, `k` a unit mod 12.
    pub fn galois(&self, k: i64) -> Self {
        let mut acc = CycloElem::rational(self.coeffs[0].clone());
        for j in 1..4 {
            if !self.coeffs[j].is_zero() {
                acc = acc + CycloElem::zeta_pow(k * j as i64).scale(&self.coeffs[j]);
            }
        }
        acc
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois(11)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElem::new(self.coeffs.clone().map(|c| c * q))
    }

    /// Product of all four Galois conjugates; always rational.
    pub fn norm(&self) -> Rational {
        let n = self.clone() * self.galois(5) * self.galois(7) * self.galois(11);
        n.coeffs[0].clone()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    /// Membership in Q(ρ) = span{1, ζ²}.
    pub fn in_eisenstein(&self) -> bool {
        self.coeffs[1].is_zero() && self.coeffs[3].is_zero()
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = CycloElem::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }

    /// Real and imaginary parts as `x + y√3` pairs of rationals.
    pub(crate) fn real_imag_parts(&self) -> ([Rational; 2], [Rational; 2]) {
        let [c0, c1, c2, c3] = &self.coeffs;
        let half = ratio(1, 2);
        (
            [c0 + c2 * &half, c1 * &half],
            [c1 * &half + c3, c2 * &half],
        )
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    write!(f, "zeta")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Zero for CycloElem {
    fn zero() -> Self {
        CycloElem::new(std::array::from_fn(|_| Rational::zero()))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycloElem {
    fn one() -> Self {
        CycloElem::rational(Rational::one())
    }
}

impl Add for CycloElem {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs;
        let [b0, b1, b2, b3] = rhs.coeffs;
        CycloElem::new([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl Sub for CycloElem {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for CycloElem {
    type Output = Self;

    fn neg(self) -> Self {
        CycloElem::new(self.coeffs.map(|c| -c))
    }
}

impl Mul for CycloElem {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut prod: [Rational; 7] = std::array::from_fn(|_| Rational::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // x^k = x^(k-2) - x^(k-4)
        for k in (4..7).rev() {
            let top = std::mem::take(&mut prod[k]);
            if !top.is_zero() {
                prod[k - 2] += &top;
                prod[k - 4] -= &top;
            }
        }
        let [p0, p1, p2, p3, ..] = prod;
        CycloElem::new([p0, p1, p2, p3])
    }
}

impl Div for CycloElem {
    type Output = Self;

    /// Panics on division by zero; use [`Field::inverse`] to check.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in Q(zeta12)")
    }
}

impl Scalar for CycloElem {
    fn from_i64(n: i64) -> Self {
        CycloElem::from_ints([n, 0, 0, 0])
    }

    fn from_bigint(n: &BigInt) -> Self {
        CycloElem::rational(Rational::from_integer(n.clone()))
    }
}

impl Field for CycloElem {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let cofactor = self.galois(5) * self.galois(7) * self.galois(11);
        let norm = (self.clone() * cofactor.clone()).coeffs[0].clone();
        Some(cofactor.scale(&norm.recip()))
    }

    fn from_rational(q: &Rational) -> Self {
        CycloElem::rational(q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_to_the_sixth_is_minus_one() {
        let z = CycloElem::zeta();
        assert_eq!(z.clone() * CycloElem::zeta_pow(5), -CycloElem::one());
        assert_eq!(z.pow(12).unwrap(), CycloElem::one());
    }

    #[test]
    fn rho_and_i() {
        let rho = CycloElem::rho();
        assert!((rho.clone() * rho.clone() + rho + CycloElem::one()).is_zero());
        assert_eq!(CycloElem::i().pow(2).unwrap(), -CycloElem::one());
        let s = CycloElem::sqrt3();
        assert_eq!(s.clone() * s, CycloElem::from_i64(3));
    }

    #[test]
    fn conj_of_zeta_and_rho() {
        assert_eq!(CycloElem::zeta().conj(), CycloElem::from_ints([0, 1, 0, -1]));
        let rho = CycloElem::rho();
        assert_eq!(rho.conj(), rho.clone() * rho);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = CycloElem::from_ints([3, -1, 2, 5]);
        assert!((a.clone() * a.inverse().unwrap()).is_one());
        assert!(CycloElem::zero().inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(CycloElem::from_ints([1, 0, -1, 2]).to_string(), "1 - zeta^2 + 2*zeta^3");
        assert_eq!(CycloElem::zero().to_string(), "0");
    }
}
