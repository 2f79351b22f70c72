//! Cyclic covers `yⁿ = ∏ (x − b_j)^{a_j}` of the projective line: genus,
//! eigenspace dimensions, and checks on a homology intersection model.

mod homology;

use num_integer::Integer;
use num_rational::Ratio;
use serde_json::Value;
use thiserror::Error;

pub use homology::{verify_homology_model, CheckOutcome, HomologyCheck, HomologyModel, HomologyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("degree must be at least 2, got {0}")]
    BadDegree(u32),
    #[error("exponent at {label:?} is divisible by n")]
    ZeroExponent { label: String },
    #[error("exponents sum to {sum} which is not divisible by n = {n}")]
    UnbalancedExponents { n: u32, sum: u64 },
    #[error("cover is disconnected: gcd of n and all exponents is {0}")]
    Disconnected(u32),
    #[error("malformed cover JSON: {0}")]
    Json(String),
}

pub const INFINITY_LABEL: &str = "inf";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: String,
    pub exponent: u32,
}

/// Degree `n` and local exponents, ∞ included as the last point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCoverData {
    n: u32,
    points: Vec<BranchPoint>,
}

/// One row of the character table; `index` is the exponent `i` of the
/// character `y ↦ ζₙ^i y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenRow {
    pub index: u32,
    pub rank: u32,
    pub dim: u32,
}

impl CyclicCoverData {
    /// Finite points only; the exponent at ∞ is `−Σ a_j mod n` (0 when
    /// unramified there).
    pub fn from_finite(n: u32, finite: &[(&str, i64)]) -> Result<Self, CoverError> {
        if n < 2 {
            return Err(CoverError::BadDegree(n));
        }
        let mut points = Vec::new();
        let mut total = 0i64;
        for &(label, a) in finite {
            let e = a.rem_euclid(n as i64) as u32;
            if e == 0 {
                return Err(CoverError::ZeroExponent { label: label.to_string() });
            }
            total += e as i64;
            points.push(BranchPoint { label: label.to_string(), exponent: e });
        }
        points.push(BranchPoint {
            label: INFINITY_LABEL.to_string(),
            exponent: (-total).rem_euclid(n as i64) as u32,
        });
        Ok(CyclicCoverData { n, points })
    }

    /// All points given explicitly, ∞ among them or not.
    pub fn new(n: u32, points: Vec<(String, i64)>) -> Result<Self, CoverError> {
        if n < 2 {
            return Err(CoverError::BadDegree(n));
        }
        let mut out = Vec::new();
        let mut sum = 0u64;
        for (label, a) in points {
            let e = a.rem_euclid(n as i64) as u32;
            if e == 0 && label != INFINITY_LABEL {
                return Err(CoverError::ZeroExponent { label });
            }
            sum += e as u64;
            out.push(BranchPoint { label, exponent: e });
        }
        if !sum.is_multiple_of(n as u64) {
            return Err(CoverError::UnbalancedExponents { n, sum });
        }
        Ok(CyclicCoverData { n, points: out })
    }

    /// Reads `{"n":6,"exponents":[["-1",1],["0",1],["t",1],["inf",3]]}`.
    pub fn from_json(v: &Value) -> Result<Self, CoverError> {
        let bad = |m: &str| CoverError::Json(m.to_string());
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing integer \"n\""))?;
        let list = v
            .get("exponents")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing list \"exponents\""))?;
        let mut points = Vec::new();
        for (k, item) in list.iter().enumerate() {
            let pair = item.as_array().filter(|p| p.len() == 2);
            let parsed = pair.and_then(|p| {
                let label = match &p[0] {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                Some((label, p[1].as_i64()?))
            });
            points.push(parsed.ok_or_else(|| bad(&format!("exponents[{k}] must be [label, integer]")))?);
        }
        CyclicCoverData::new(n as u32, points)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &[BranchPoint] {
        &self.points
    }

    fn check_connected(&self) -> Result<(), CoverError> {
        let g = self.points.iter().fold(self.n, |g, p| g.gcd(&p.exponent));
        if g == 1 {
            Ok(())
        } else {
            Err(CoverError::Disconnected(g))
        }
    }

    /// Riemann–Hurwitz, with `gcd(a_j, n)` preimages above `b_j`.
    pub fn genus(&self) -> Result<u32, CoverError> {
        self.check_connected()?;
        let n = self.n as i64;
        let ramification: i64 = self.points.iter().map(|p| n - (p.exponent as i64).gcd(&n)).sum();
        Ok(((-2 * n + ramification) / 2 + 1) as u32)
    }

    /// Holomorphic dimension `−1 + Σ_j ⟨i·a_j / n⟩` and H¹ rank
    /// `#{j : n ∤ i·a_j} − 2` for each `i = 1 .. n−1`.
    pub fn eigenspace_dims(&self) -> Result<Vec<EigenRow>, CoverError> {
        self.check_connected()?;
        let n = self.n as i64;
        let rows = (1..self.n)
            .map(|i| {
                let mut frac_sum = Ratio::from_integer(-1i64);
                let mut moving = 0i64;
                for p in &self.points {
                    let r = (i as i64 * p.exponent as i64) % n;
                    frac_sum += Ratio::new(r, n);
                    moving += (r != 0) as i64;
                }
                EigenRow {
                    index: i,
                    rank: (moving - 2).max(0) as u32,
                    dim: frac_sum.to_integer().max(0) as u32,
                }
            })
            .collect();
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st_curve() -> CyclicCoverData {
        CyclicCoverData::from_finite(6, &[("-1", 1), ("0", 1), ("t", 1)]).unwrap()
    }

    #[test]
    fn infinity_exponent_is_filled_in() {
        assert_eq!(st_curve().points().last().unwrap().exponent, 3);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(st_curve().genus().unwrap(), 4);
        let ell = CyclicCoverData::from_finite(2, &[("a", 1), ("b", 1), ("c", 1), ("d", 1)]).unwrap();
        assert_eq!(ell.genus().unwrap(), 1);
        let cubic = CyclicCoverData::from_finite(3, &[("a", 1), ("b", 1), ("c", 1)]).unwrap();
        assert_eq!(cubic.points().last().unwrap().exponent, 0);
        assert_eq!(cubic.genus().unwrap(), 1);
    }

    #[test]
    fn table_for_degree_six() {
        let rows = st_curve().eigenspace_dims().unwrap();
        let dims: Vec<u32> = rows.iter().map(|r| r.dim).collect();
        let ranks: Vec<u32> = rows.iter().map(|r| r.rank).collect();
        assert_eq!(dims, vec![0, 0, 1, 1, 2]);
        assert_eq!(ranks, vec![2, 1, 2, 1, 2]);
    }

    #[test]
    fn disconnected_is_rejected() {
        let c = CyclicCoverData::from_finite(4, &[("a", 2), ("b", 2)]).unwrap();
        assert_eq!(c.genus(), Err(CoverError::Disconnected(2)));
    }

    #[test]
    fn json_input() {
        let v = serde_json::json!({"n":6,"exponents":[["-1",1],["0",1],["t",1],["inf",3]]});
        assert_eq!(CyclicCoverData::from_json(&v).unwrap(), st_curve());
        let bad = serde_json::json!({"n":6,"exponents":[["-1",1],["0",1]]});
        assert!(matches!(CyclicCoverData::from_json(&bad), Err(CoverError::UnbalancedExponents { .. })));
    }
}
