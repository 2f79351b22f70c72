//! The quadratic extension L = Q(ζ)(α) with α⁴ = 3.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ball::{fourth_root3_ball, sqrt3_ball, ComplexBall};
use super::cyclo::CycloElem;
use super::FieldError;
use crate::scalar::{ratio, Field, Rational, Scalar};

/// `base + alpha_part · α`, where α is the positive real fourth root of 3
/// and `α² = 2ζ − ζ³`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerElem {
    base: CycloElem,
    alpha_part: CycloElem,
}

impl TowerElem {
    pub fn new(base: CycloElem, alpha_part: CycloElem) -> Self {
        TowerElem { base, alpha_part }
    }

    pub fn cyclo(base: CycloElem) -> Self {
        TowerElem::new(base, CycloElem::zero())
    }

    pub fn rational(q: Rational) -> Self {
        TowerElem::cyclo(CycloElem::rational(q))
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        TowerElem::cyclo(CycloElem::from_ints(c))
    }

    pub fn base(&self) -> &CycloElem {
        &self.base
    }

    pub fn alpha_part(&self) -> &CycloElem {
        &self.alpha_part
    }

    pub fn zeta() -> Self {
        TowerElem::cyclo(CycloElem::zeta())
    }

    pub fn zeta_pow(k: i64) -> Self {
        TowerElem::cyclo(CycloElem::zeta_pow(k))
    }

    pub fn rho() -> Self {
        TowerElem::cyclo(CycloElem::rho())
    }

    pub fn i() -> Self {
        TowerElem::cyclo(CycloElem::i())
    }

    pub fn sqrt3() -> Self {
        TowerElem::cyclo(CycloElem::sqrt3())
    }

    pub fn alpha() -> Self {
        TowerElem::new(CycloElem::zero(), CycloElem::one())
    }

    /// 3^(k/4).
    pub fn fourth_root3_pow(k: i64) -> Self {
        TowerElem::alpha().pow(k).expect("alpha is a unit")
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.alpha_part.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_cyclotomic() {
            self.base.as_rational()
        } else {
            None
        }
    }

    pub fn in_eisenstein(&self) -> bool {
        self.is_cyclotomic() && self.base.in_eisenstein()
    }

    /// Complex conjugation: ζ ↦ ζ⁻¹, α fixed.
    pub fn conj(&self) -> Self {
        TowerElem::new(self.base.conj(), self.alpha_part.conj())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        TowerElem::new(self.base.scale(q), self.alpha_part.scale(q))
    }

    /// `a + ā` for `a` in Q(ρ).
    pub fn trace_k(&self) -> Result<Rational, FieldError> {
        if !self.in_eisenstein() {
            return Err(FieldError::NotInEisenstein(self.to_string()));
        }
        let c = self.base.coeffs();
        Ok(&c[0] * Rational::from_integer(2.into()) + &c[2])
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = TowerElem::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            k >>= 1;
        }
        Some(acc)
    }

    pub fn checked_div(&self, other: &TowerElem) -> Result<Self, FieldError> {
        other
            .inverse()
            .map(|inv| self.clone() * inv)
            .ok_or(FieldError::DivisionByZero)
    }

    /// Certified enclosure under ζ ↦ e^(πi/6), α ↦ 3^(1/4) > 0.
    pub fn embed(&self, prec: u64) -> ComplexBall {
        let prec = prec.max(16);
        let work = prec + 16;
        let s3 = sqrt3_ball(work);
        let q = |x: &Rational| ComplexBall::from_rational(x, work);
        let part = |c: &CycloElem| -> (ComplexBall, ComplexBall) {
            let ([r0, r1], [i0, i1]) = c.real_imag_parts();
            let mut re = q(&r0);
            if !r1.is_zero() {
                re = re + q(&r1) * s3.clone();
            }
            let mut im = q(&i0);
            if !i1.is_zero() {
                im = im + q(&i1) * s3.clone();
            }
            (re, im)
        };
        let (mut re, mut im) = part(&self.base);
        if !self.alpha_part.is_zero() {
            let a = fourth_root3_ball(work);
            let (ar, ai) = part(&self.alpha_part);
            re = re + ar * a.clone();
            im = im + ai * a;
        }
        (re + im.mul_i()).with_precision(prec)
    }

    /// Square root of a positive element of Q(√3), found in Q(√3) or
    /// Q(√3)·α. `None` when the root is not in either.
    pub fn sqrt_positive(&self) -> Option<Self> {
        let (a, b) = self.as_real_quadratic()?;
        let three = Rational::from_integer(3.into());
        if a.is_zero() && b.is_zero() {
            return Some(TowerElem::zero());
        }
        // (c + d√3)² = a + b√3  ⇔  c² + 3d² = a, 2cd = b
        // (c + d√3)²·√3 = a + b√3  ⇔  6cd = a, c² + 3d² = b
        let candidates = [(a.clone(), b.clone(), false), (b.clone(), a.clone() / &three, true)];
        for (sum, prod2, with_alpha) in candidates {
            // c² + 3d² = sum, cd = prod2/2
            let disc = &sum * &sum - &three * &prod2 * &prod2;
            let Some(root) = rational_sqrt(&disc) else { continue };
            for c2 in [(&sum + &root) / Rational::from_integer(2.into()), (&sum - &root) / Rational::from_integer(2.into())] {
                let Some(c) = rational_sqrt(&c2) else { continue };
                let d = if c.is_zero() {
                    match rational_sqrt(&(&sum / &three)) {
                        Some(d) => d,
                        None => continue,
                    }
                } else {
                    &prod2 / (&c * Rational::from_integer(2.into()))
                };
                let mut y = TowerElem::rational(c) + TowerElem::sqrt3().scale(&d);
                if with_alpha {
                    y = y * TowerElem::alpha();
                }
                if y.clone() * y.clone() != *self {
                    continue;
                }
                return match y.embed(64).real_sign() {
                    Some(std::cmp::Ordering::Greater) => Some(y),
                    Some(std::cmp::Ordering::Less) => Some(-y),
                    _ => None,
                };
            }
        }
        None
    }

    /// `(a, b)` with `self = a + b√3`, if `self` lies in Q(√3).
    pub fn as_real_quadratic(&self) -> Option<(Rational, Rational)> {
        if !self.is_cyclotomic() {
            return None;
        }
        let [c0, c1, c2, c3] = self.base.coeffs();
        let b = -c3.clone();
        (c2.is_zero() && *c1 == &b * Rational::from_integer(2.into())).then(|| (c0.clone(), b))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |c: &CycloElem| {
            serde_json::Value::Array(c.coeffs().iter().map(rational_to_json).collect())
        };
        serde_json::json!({ "c": enc(&self.base), "a": enc(&self.alpha_part) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, FieldError> {
        let dec = |key: &str| -> Result<CycloElem, FieldError> {
            let Some(arr) = v.get(key) else {
                return if key == "a" {
                    Ok(CycloElem::zero())
                } else {
                    Err(FieldError::Json(format!("missing key {key:?}")))
                };
            };
            let arr = arr
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| FieldError::Json(format!("{key:?} must be a list of 4 rationals")))?;
            let mut out: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
            for (slot, x) in out.iter_mut().zip(arr) {
                *slot = rational_from_json(x)?;
            }
            Ok(CycloElem::new(out))
        };
        Ok(TowerElem::new(dec("c")?, dec("a")?))
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// `[n, d]` with integers as JSON numbers when they fit, strings otherwise.
pub fn rational_to_json(q: &Rational) -> serde_json::Value {
    let enc = |n: &BigInt| match i64::try_from(n) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::from(n.to_string()),
    };
    serde_json::Value::Array(vec![enc(q.numer()), enc(q.denom())])
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational, FieldError> {
    let int = |x: &serde_json::Value| -> Result<BigInt, FieldError> {
        match x {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| FieldError::Json(format!("non-integer number {n}"))),
            serde_json::Value::String(s) => s
                .parse()
                .map_err(|_| FieldError::Json(format!("bad integer {s:?}"))),
            other => Err(FieldError::Json(format!("expected integer, got {other}"))),
        }
    };
    match v {
        serde_json::Value::Array(pair) if pair.len() == 2 => {
            let d = int(&pair[1])?;
            if d.is_zero() {
                return Err(FieldError::Json("zero denominator".into()));
            }
            Ok(Rational::new(int(&pair[0])?, d))
        }
        other => Ok(Rational::from_integer(int(other)?)),
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha_part.is_zero() {
            return write!(f, "{}", self.base);
        }
        if self.base.is_zero() {
            return write!(f, "({})*alpha", self.alpha_part);
        }
        write!(f, "{} + ({})*alpha", self.base, self.alpha_part)
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for TowerElem {
    fn zero() -> Self {
        TowerElem::cyclo(CycloElem::zero())
    }

    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.alpha_part.is_zero()
    }
}

impl One for TowerElem {
    fn one() -> Self {
        TowerElem::cyclo(CycloElem::one())
    }
}

impl Add for TowerElem {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        TowerElem::new(self.base + rhs.base, self.alpha_part + rhs.alpha_part)
    }
}

impl Sub for TowerElem {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        TowerElem::new(self.base - rhs.base, self.alpha_part - rhs.alpha_part)
    }
}

impl Neg for TowerElem {
    type Output = Self;

    fn neg(self) -> Self {
        TowerElem::new(-self.base, -self.alpha_part)
    }
}

impl Mul for TowerElem {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.alpha_part.is_zero() && rhs.alpha_part.is_zero() {
            return TowerElem::cyclo(self.base * rhs.base);
        }
        let cross = self.alpha_part.clone() * rhs.alpha_part.clone();
        let base = self.base.clone() * rhs.base.clone() + cross * CycloElem::sqrt3();
        let alpha_part = self.base * rhs.alpha_part + self.alpha_part * rhs.base;
        TowerElem::new(base, alpha_part)
    }
}

impl Div for TowerElem {
    type Output = Self;

    /// Panics on division by zero; [`TowerElem::checked_div`] reports it.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero in tower")
    }
}

impl Scalar for TowerElem {
    fn from_i64(n: i64) -> Self {
        TowerElem::from_ints([n, 0, 0, 0])
    }

    fn from_bigint(n: &BigInt) -> Self {
        TowerElem::rational(Rational::from_integer(n.clone()))
    }
}

impl Field for TowerElem {
    fn inverse(&self) -> Option<Self> {
        if self.alpha_part.is_zero() {
            return self.base.inverse().map(TowerElem::cyclo);
        }
        // (a + bα)(a − bα) = a² − b²√3
        let n = self.base.clone() * self.base.clone()
            - self.alpha_part.clone() * self.alpha_part.clone() * CycloElem::sqrt3();
        let n_inv = n.inverse()?;
        Some(TowerElem::new(
            self.base.clone() * n_inv.clone(),
            -(self.alpha_part.clone() * n_inv),
        ))
    }

    fn from_rational(q: &Rational) -> Self {
        TowerElem::rational(q.clone())
    }
}

/// `c0 + c1ζ + c2ζ² + c3ζ³` from `(numerator, denominator)` pairs.
pub fn tower_q(c: [(i64, i64); 4]) -> TowerElem {
    TowerElem::cyclo(CycloElem::new(c.map(|(n, d)| ratio(n, d))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_squared_is_sqrt3() {
        let a = TowerElem::alpha();
        assert_eq!(a.clone() * a.clone(), TowerElem::from_ints([0, 2, 0, -1]));
        assert_eq!(a.pow(4).unwrap(), TowerElem::from_i64(3));
    }

    #[test]
    fn trace_values() {
        assert_eq!(TowerElem::rho().trace_k().unwrap(), ratio(-1, 1));
        let t11 = TowerElem::rational(ratio(1, 3)) + TowerElem::rho().scale(&ratio(2, 3));
        assert_eq!(t11.trace_k().unwrap(), ratio(0, 1));
        assert!(TowerElem::zeta().trace_k().is_err());
    }

    #[test]
    fn conj_fixes_alpha() {
        assert_eq!(TowerElem::alpha().conj(), TowerElem::alpha());
        assert_eq!(TowerElem::rho().conj(), TowerElem::from_ints([0, 0, -1, 0]));
    }

    #[test]
    fn inverse_with_alpha() {
        let x = TowerElem::new(CycloElem::from_ints([1, 2, 0, -1]), CycloElem::from_ints([0, 1, 1, 0]));
        assert!((x.clone() * x.inverse().unwrap()).is_one());
        assert_eq!(TowerElem::zero().checked_div(&TowerElem::zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn embed_known_values() {
        let i = TowerElem::i().embed(64);
        assert!(i.contains_rational(&ratio(0, 1), &ratio(1, 1)));
        assert!(i.is_exact());
        let z = TowerElem::zero().embed(16);
        assert!(z.is_exact() && z.is_zero());
    }

    #[test]
    fn square_roots_of_pivots() {
        let s3 = TowerElem::sqrt3();
        for x in [s3.scale(&ratio(3, 1)), s3.scale(&ratio(1, 9)), s3.inverse().unwrap(), TowerElem::from_i64(4)] {
            let r = x.sqrt_positive().expect("root in tower");
            assert_eq!(r.clone() * r.clone(), x);
            assert_eq!(r.embed(64).real_sign(), Some(std::cmp::Ordering::Greater));
        }
        assert!(TowerElem::from_i64(2).sqrt_positive().is_none());
    }

    #[test]
    fn json_roundtrip() {
        let x = TowerElem::new(CycloElem::from_ints([1, 0, -3, 2]), CycloElem::rational(ratio(-1, 4)));
        let v = x.to_json();
        assert_eq!(TowerElem::from_json(&v).unwrap(), x);
        assert_eq!(v["a"][0], serde_json::json!([-1, 4]));
    }
}
