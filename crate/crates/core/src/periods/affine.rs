use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use super::PeriodError;
use crate::exactfield::{ComplexBall, TowerElem};

/// Free parameters of the families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Tau,
    Z1,
    Z2,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::Tau, Param::Z1, Param::Z2];

    pub fn name(self) -> &'static str {
        match self {
            Param::Tau => "tau",
            Param::Z1 => "z1",
            Param::Z2 => "z2",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact values for some of the parameters.
pub type ExactPoint = BTreeMap<Param, TowerElem>;
/// Ball enclosures for some of the parameters.
pub type BallPoint = BTreeMap<Param, ComplexBall>;

/// `constant + Σ coeff[p] · p` over the tower; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineForm {
    constant: TowerElem,
    coeffs: BTreeMap<Param, TowerElem>,
}

impl AffineForm {
    pub fn constant(c: TowerElem) -> Self {
        AffineForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn param(p: Param) -> Self {
        AffineForm::linear(p, TowerElem::one())
    }

    pub fn linear(p: Param, c: TowerElem) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(p, c);
        }
        AffineForm {
            constant: TowerElem::zero(),
            coeffs,
        }
    }

    pub fn constant_term(&self) -> &TowerElem {
        &self.constant
    }

    pub fn coeff(&self, p: Param) -> TowerElem {
        self.coeffs.get(&p).cloned().unwrap_or_else(TowerElem::zero)
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &TowerElem) -> Self {
        if c.is_zero() {
            return AffineForm::zero();
        }
        AffineForm {
            constant: self.constant.clone() * c.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, x)| (*p, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Substitutes the parameters present in `point`; others stay symbolic.
    pub fn substitute(&self, point: &ExactPoint) -> Self {
        let mut out = AffineForm::constant(self.constant.clone());
        for (p, c) in &self.coeffs {
            match point.get(p) {
                Some(v) => out.constant = out.constant + c.clone() * v.clone(),
                None => {
                    out.coeffs.insert(*p, c.clone());
                }
            }
        }
        out
    }

    pub fn eval_exact(&self, point: &ExactPoint) -> Result<TowerElem, PeriodError> {
        let s = self.substitute(point);
        match s.coeffs.keys().next() {
            Some(p) => Err(PeriodError::MissingParameter(p.name().to_string())),
            None => Ok(s.constant),
        }
    }

    pub fn eval_ball(&self, point: &BallPoint, prec: u64) -> Result<ComplexBall, PeriodError> {
        let mut acc = self.constant.embed(prec);
        for (p, c) in &self.coeffs {
            let v = point
                .get(p)
                .ok_or_else(|| PeriodError::MissingParameter(p.name().to_string()))?;
            acc = acc + c.embed(prec) * v.clone();
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("const".into(), self.constant.to_json());
        for (p, c) in &self.coeffs {
            m.insert(p.name().into(), c.to_json());
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self, PeriodError> {
        let obj = v
            .as_object()
            .ok_or_else(|| PeriodError::Json("affine form must be an object".into()))?;
        let mut out = AffineForm::zero();
        for (k, x) in obj {
            let c = TowerElem::from_json(x).map_err(|e| PeriodError::Json(format!("{k}: {e}")))?;
            if k == "const" {
                out.constant = c;
            } else {
                let p = Param::from_name(k).ok_or_else(|| PeriodError::Json(format!("unknown parameter {k:?}")))?;
                out = out + AffineForm::linear(p, c);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (p, c) in &self.coeffs {
            parts.push(format!("({c})*{p}"));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(format!("{}", self.constant));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Zero for AffineForm {
    fn zero() -> Self {
        AffineForm::constant(TowerElem::zero())
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }
}

impl Add for AffineForm {
    type Output = AffineForm;

    fn add(mut self, rhs: AffineForm) -> AffineForm {
        self.constant = self.constant + rhs.constant;
        for (p, c) in rhs.coeffs {
            let sum = self.coeff(p) + c;
            if sum.is_zero() {
                self.coeffs.remove(&p);
            } else {
                self.coeffs.insert(p, sum);
            }
        }
        self
    }
}

impl Neg for AffineForm {
    type Output = AffineForm;

    fn neg(self) -> AffineForm {
        AffineForm {
            constant: -self.constant,
            coeffs: self.coeffs.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for AffineForm {
    type Output = AffineForm;

    fn sub(self, rhs: AffineForm) -> AffineForm {
        self + (-rhs)
    }
}

impl Mul for AffineForm {
    type Output = QuadraticForm;

    fn mul(self, rhs: AffineForm) -> QuadraticForm {
        QuadraticForm::from(self) * QuadraticForm::from(rhs)
    }
}

/// Monomial of degree ≤ 2 as a sorted parameter list.
type Monomial = Vec<Param>;

/// Polynomial of degree ≤ 2 over the tower. Only produced by products of
/// [`AffineForm`]s inside relation checks.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QuadraticForm {
    terms: BTreeMap<Monomial, TowerElem>,
}

impl QuadraticForm {
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: TowerElem) {
        let sum = self.terms.remove(&m).unwrap_or_else(TowerElem::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn scale(&self, c: &TowerElem) -> Self {
        let mut out = QuadraticForm::default();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl From<AffineForm> for QuadraticForm {
    fn from(a: AffineForm) -> Self {
        let mut q = QuadraticForm::default();
        q.add_term(Vec::new(), a.constant);
        for (p, c) in a.coeffs {
            q.add_term(vec![p], c);
        }
        q
    }
}

impl Add for QuadraticForm {
    type Output = QuadraticForm;

    fn add(mut self, rhs: QuadraticForm) -> QuadraticForm {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Mul for QuadraticForm {
    type Output = QuadraticForm;

    fn mul(self, rhs: QuadraticForm) -> QuadraticForm {
        let mut out = QuadraticForm::default();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let mut m: Monomial = ma.iter().chain(mb).copied().collect();
                m.sort();
                out.add_term(m, a.clone() * b.clone());
            }
        }
        out
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let names: Vec<&str> = m.iter().map(|p| p.name()).collect();
                if names.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", names.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = AffineForm::param(Param::Tau) - AffineForm::param(Param::Tau);
        assert!(a.is_zero());
        assert!(AffineForm::param(Param::Z1).scale(&TowerElem::zero()).is_zero());
    }

    #[test]
    fn product_expands() {
        let t = AffineForm::param(Param::Tau);
        let one = AffineForm::constant(TowerElem::one());
        let q = (t.clone() + one.clone()) * (t.clone() - one);
        // tau^2 - 1
        assert_eq!(q.num_terms(), 2);
        let r = q + (t.clone() * t).scale(&TowerElem::from_i64(-1)) + QuadraticForm::from(AffineForm::constant(TowerElem::one()));
        assert!(r.is_identically_zero());
    }

    #[test]
    fn substitution_and_json() {
        let a = AffineForm::constant(TowerElem::one()) + AffineForm::linear(Param::Z1, TowerElem::zeta());
        let mut pt = ExactPoint::new();
        pt.insert(Param::Z1, TowerElem::zeta_pow(11));
        assert_eq!(a.eval_exact(&pt).unwrap(), TowerElem::from_i64(2));
        assert!(a.eval_exact(&ExactPoint::new()).is_err());
        assert_eq!(AffineForm::from_json(&a.to_json()).unwrap(), a);
    }
}
