//! Midpoint-radius complex balls over dyadic numbers.
//!
//! Midpoints are rounded to the working precision after every operation and
//! the rounding error is folded into the radius, so a ball always encloses
//! the exact result of the same computation on exact inputs. Radii are kept
//! short (at most [`RADIUS_BITS`] mantissa bits) and are only ever rounded up.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

const RADIUS_BITS: u64 = 30;

/// `mant · 2^exp`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Bit length of the mantissa.
    fn bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// `floor(q · 2^bits) · 2^-bits`, error below `2^-bits`.
    pub fn floor_rational(q: &Rational, bits: i64) -> Self {
        let scaled = if bits >= 0 {
            q * Rational::from_integer(BigInt::one() << bits as usize)
        } else {
            q / Rational::from_integer(BigInt::one() << (-bits) as usize)
        };
        Dyadic::new(scaled.floor().to_integer(), -bits)
    }

    /// Truncates to `prec` significant bits; returns the value and an upper
    /// bound on the discarded part. `prec == 0` means no rounding.
    fn truncate(&self, prec: u64) -> (Dyadic, Dyadic) {
        let bits = self.bits();
        if prec == 0 || bits <= prec {
            return (self.clone(), Dyadic::zero());
        }
        let shift = bits - prec;
        let mant = &self.mant >> shift as usize;
        // arithmetic shift floors; the discarded part is in [0, 2^(exp+shift))
        (
            Dyadic::new(mant, self.exp + shift as i64),
            Dyadic::pow2(self.exp + shift as i64),
        )
    }

    /// Smallest short dyadic not below `self` (for nonnegative radii).
    fn round_up(&self) -> Dyadic {
        let bits = self.bits();
        if bits <= RADIUS_BITS {
            return self.clone();
        }
        let shift = bits - RADIUS_BITS;
        let mant = (&self.mant >> shift as usize) + 1;
        Dyadic::new(mant, self.exp + shift as i64)
    }

    /// Quotient approximation with `prec` significant bits and an error bound.
    fn div(&self, other: &Dyadic, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let k = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.mant << k as usize;
        let q = num_integer::Integer::div_floor(&num, &other.mant);
        let exp = self.exp - other.exp - k;
        (Dyadic::new(q, exp), Dyadic::pow2(exp))
    }

    /// Upper bound on `self / other` for positive operands.
    fn div_up(&self, other: &Dyadic) -> Dyadic {
        let (q, err) = self.div(other, RADIUS_BITS + 2);
        (q + err).round_up()
    }

    /// Floor of the square root with `prec` bits, plus an error bound.
    fn sqrt(&self, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!self.is_negative(), "square root of negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        // make exponent even and leave 2*prec+2 bits under the root
        let mut shift = (2 * prec as i64 + 2 - self.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as usize;
        let root = m.sqrt();
        let exp = (self.exp - shift) / 2;
        (Dyadic::new(root, exp), Dyadic::pow2(exp))
    }

    /// Decimal rendering with `digits` digits after the point (rounded).
    pub fn to_decimal(&self, digits: usize) -> String {
        let q = self.to_rational() * Rational::from_integer(BigInt::from(10).pow(digits as u32));
        let n = q.round().to_integer();
        let neg = n.is_negative();
        let s = n.abs().to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.clone() - other.clone()).mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let e = self.exp.min(rhs.exp);
        let a = self.mant << (self.exp - e) as usize;
        let b = rhs.mant << (rhs.exp - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

/// Complex ball `{ x : |x − (re + i·im)| ≤ rad }` at working precision `prec`
/// bits (0 for exact values that have not been rounded).
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
    prec: u64,
}

impl ComplexBall {
    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        ComplexBall {
            re,
            im,
            rad: Dyadic::zero(),
            prec: 0,
        }
    }

    pub fn from_parts(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u64) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        ComplexBall {
            re,
            im,
            rad: rad.round_up(),
            prec,
        }
        .rounded()
    }

    pub fn from_int(n: i64) -> Self {
        ComplexBall::exact(Dyadic::from_int(n), Dyadic::zero())
    }

    /// Encloses a rational; exact when the denominator is a power of two.
    pub fn from_rational(q: &Rational, prec: u64) -> Self {
        let d = q.denom();
        if d.is_one() || (d & (d - BigInt::one())).is_zero() {
            let exp = -(d.bits() as i64 - 1);
            let ball = ComplexBall::exact(Dyadic::new(q.numer().clone(), exp), Dyadic::zero());
            return ComplexBall { prec, ..ball }.rounded();
        }
        let scale = prec as i64 + d.bits() as i64 - q.numer().bits() as i64 + 2;
        let mid = Dyadic::floor_rational(q, scale.max(prec as i64));
        let rad = Dyadic::pow2(-scale.max(prec as i64));
        ComplexBall::from_parts(mid, Dyadic::zero(), rad, prec)
    }

    pub fn from_f64_pair(re: f64, im: f64, prec: u64) -> Option<Self> {
        let to_q = |x: f64| Rational::from_float(x);
        Some(ComplexBall::from_parts(
            Dyadic::floor_rational(&to_q(re)?, 1100),
            Dyadic::floor_rational(&to_q(im)?, 1100),
            Dyadic::zero(),
            prec,
        ))
    }

    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn radius(&self) -> &Dyadic {
        &self.rad
    }

    pub fn precision(&self) -> u64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn with_precision(&self, prec: u64) -> Self {
        ComplexBall { prec, ..self.clone() }.rounded()
    }

    fn rounded(self) -> Self {
        let (re, e1) = self.re.truncate(self.prec);
        let (im, e2) = self.im.truncate(self.prec);
        let rad = if e1.is_zero() && e2.is_zero() {
            self.rad
        } else {
            (self.rad + e1 + e2).round_up()
        };
        ComplexBall {
            re,
            im,
            rad,
            prec: self.prec,
        }
    }

    /// Upper bound on the modulus of the midpoint.
    fn mid_abs_upper(&self) -> Dyadic {
        self.re.abs() + self.im.abs()
    }

    /// Upper bound on every |x| for x in the ball.
    pub fn abs_upper(&self) -> Dyadic {
        (self.mid_abs_upper() + self.rad.clone()).round_up()
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            im: -self.im.clone(),
            ..self.clone()
        }
    }

    pub fn mul_i(&self) -> Self {
        ComplexBall {
            re: -self.im.clone(),
            im: self.re.clone(),
            ..self.clone()
        }
    }

    pub fn real_part(&self) -> Self {
        ComplexBall {
            im: Dyadic::zero(),
            ..self.clone()
        }
    }

    /// Multiplicative inverse; `None` when the ball may contain zero.
    pub fn inverse(&self) -> Option<Self> {
        let prec = self.prec.max(64);
        let m_lo = self.re.abs().max(self.im.abs());
        if m_lo <= self.rad {
            return None;
        }
        let norm = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        let (qr, er) = self.re.div(&norm, prec + 4);
        let (qi, ei) = (-self.im.clone()).div(&norm, prec + 4);
        let mut rad = er + ei;
        if !self.rad.is_zero() {
            let gap = m_lo.clone() - self.rad.clone();
            let denom = m_lo * gap;
            rad = rad + self.rad.div_up(&denom);
        }
        Some(ComplexBall::from_parts(qr, qi, rad, prec.max(self.prec)))
    }

    /// Square root of a ball on the positive real axis.
    pub fn sqrt_positive(&self) -> Option<Self> {
        let prec = self.prec.max(64);
        if !self.im.is_zero() || self.re.clone() - self.rad.clone() <= Dyadic::zero() {
            return None;
        }
        let (s, es) = self.re.sqrt(prec + 4);
        // |sqrt(m+e) - sqrt(m)| <= r / sqrt(m - r) and sqrt(m - r) >= s_lo
        let lower = self.re.clone() - self.rad.clone();
        let (s_lo, e_lo) = lower.sqrt(RADIUS_BITS);
        let s_lo = s_lo - e_lo;
        if s_lo <= Dyadic::zero() {
            return None;
        }
        let rad = es + self.rad.div_up(&s_lo);
        Some(ComplexBall::from_parts(s, Dyadic::zero(), rad, prec))
    }

    /// Sign of the real part when certified.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.re.clone() - self.rad.clone() > Dyadic::zero() {
            Some(Ordering::Greater)
        } else if self.re.clone() + self.rad.clone() < Dyadic::zero() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// True when zero is certainly outside the ball.
    pub fn excludes_zero(&self) -> bool {
        self.re.abs().max(self.im.abs()) > self.rad
    }

    /// Exact rational test of `|q − mid| ≤ rad`.
    pub fn contains_rational(&self, re: &Rational, im: &Rational) -> bool {
        let dr = re - self.re.to_rational();
        let di = im - self.im.to_rational();
        let r = self.rad.to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    /// Sufficient test that `other ⊆ self`.
    pub fn contains(&self, other: &ComplexBall) -> bool {
        let dr = (self.re.clone() - other.re.clone()).abs();
        let di = (self.im.clone() - other.im.clone()).abs();
        dr + di + other.rad.clone() <= self.rad
    }

    /// Widens the radius by `extra`.
    pub fn inflate(&self, extra: &Dyadic) -> Self {
        ComplexBall {
            rad: (self.rad.clone() + extra.abs()).round_up(),
            ..self.clone()
        }
    }

    /// `re+imi` with the precision's worth of decimal digits.
    pub fn to_decimal(&self) -> String {
        let digits = ((self.prec.max(16) as f64) * std::f64::consts::LOG10_2).floor() as usize;
        let re = self.re.to_decimal(digits);
        let im = self.im.to_decimal(digits);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use crate::scalar::rational_to_f64;
        (
            rational_to_f64(&self.re.to_rational()),
            rational_to_f64(&self.im.to_rational()),
        )
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        write!(
            f,
            "[{re:e} {im:+e}i ± {:e}]",
            crate::scalar::rational_to_f64(&self.rad.to_rational())
        )
    }
}

impl Zero for ComplexBall {
    fn zero() -> Self {
        ComplexBall::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }
}

impl One for ComplexBall {
    fn one() -> Self {
        ComplexBall::from_int(1)
    }
}

impl Add for ComplexBall {
    type Output = ComplexBall;

    fn add(self, rhs: ComplexBall) -> ComplexBall {
        ComplexBall {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
            rad: (self.rad + rhs.rad).round_up(),
            prec: self.prec.max(rhs.prec),
        }
        .rounded()
    }
}

impl Sub for ComplexBall {
    type Output = ComplexBall;

    fn sub(self, rhs: ComplexBall) -> ComplexBall {
        self + (-rhs)
    }
}

impl Neg for ComplexBall {
    type Output = ComplexBall;

    fn neg(self) -> ComplexBall {
        ComplexBall {
            re: -self.re,
            im: -self.im,
            ..self
        }
    }
}

impl Mul for ComplexBall {
    type Output = ComplexBall;

    fn mul(self, rhs: ComplexBall) -> ComplexBall {
        let prec = self.prec.max(rhs.prec);
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re.clone() * rhs.im.clone() + self.im.clone() * rhs.re.clone();
        let rad = if self.rad.is_zero() && rhs.rad.is_zero() {
            Dyadic::zero()
        } else {
            (self.mid_abs_upper() * rhs.rad.clone()
                + rhs.mid_abs_upper() * self.rad.clone()
                + self.rad * rhs.rad)
                .round_up()
        };
        ComplexBall { re, im, rad, prec }.rounded()
    }
}

impl Scalar for ComplexBall {
    fn from_i64(n: i64) -> Self {
        ComplexBall::from_int(n)
    }

    fn from_bigint(n: &BigInt) -> Self {
        ComplexBall::exact(Dyadic::new(n.clone(), 0), Dyadic::zero())
    }
}

/// √3 to `prec` bits.
pub fn sqrt3_ball(prec: u64) -> ComplexBall {
    let p = prec + 8;
    let root = (BigInt::from(3) << (2 * p) as usize).sqrt();
    ComplexBall::from_parts(
        Dyadic::new(root, -(p as i64)),
        Dyadic::zero(),
        Dyadic::pow2(-(p as i64)),
        prec,
    )
}

/// 3^(1/4) to `prec` bits.
pub fn fourth_root3_ball(prec: u64) -> ComplexBall {
    let p = prec + 8;
    let root = (BigInt::from(3) << (4 * p) as usize).nth_root(4);
    ComplexBall::from_parts(
        Dyadic::new(root, -(p as i64)),
        Dyadic::zero(),
        Dyadic::pow2(-(p as i64)),
        prec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn sqrt3_encloses() {
        let b = sqrt3_ball(64);
        assert!(b.radius() < &Dyadic::pow2(-60));
        let lo = ratio(17320508075, 10_000_000_000);
        let hi = ratio(17320508076, 10_000_000_000);
        let m = b.re().to_rational();
        assert!(lo < m && m < hi);
        let sq = b.clone() * b;
        assert!(sq.contains_rational(&ratio(3, 1), &ratio(0, 1)));
    }

    #[test]
    fn third_is_enclosed() {
        let b = ComplexBall::from_rational(&ratio(1, 3), 80);
        assert!(b.contains_rational(&ratio(1, 3), &ratio(0, 1)));
        assert!(b.radius() < &Dyadic::pow2(-78));
        let inv = b.inverse().unwrap();
        assert!(inv.contains_rational(&ratio(3, 1), &ratio(0, 1)));
    }

    #[test]
    fn inverse_of_ball_with_zero_fails() {
        let b = ComplexBall::from_parts(Dyadic::pow2(-10), Dyadic::zero(), Dyadic::pow2(-5), 64);
        assert!(b.inverse().is_none());
    }

    #[test]
    fn sqrt_positive_encloses() {
        let b = ComplexBall::from_rational(&ratio(2, 1), 96);
        let s = b.sqrt_positive().unwrap();
        assert!((s.clone() * s).contains_rational(&ratio(2, 1), &ratio(0, 1)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Dyadic::new(BigInt::from(-3), -2).to_decimal(3), "-0.750");
        assert_eq!(Dyadic::from_int(5).to_decimal(0), "5");
    }
}
