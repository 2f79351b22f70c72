//! Integer and rational matrix algorithms: Smith form, symplectic bases of
//! alternating forms, fraction-free determinants and lattice kernels.

mod lattice;
mod snf;
mod symplectic;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

pub use lattice::{
    det_bareiss, exact_det_inv, hermite_basis, integer_kernel, integral_rows, is_unimodular,
    same_lattice, solve_integer, DetInverse,
};
pub use snf::{smith_normal_form, SmithForm};
pub use symplectic::{symplectic_basis, SymplecticBasis};

use crate::exactfield::{rational_from_json, rational_to_json};
use crate::{IntMat, RatMat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),
    #[error("alternating form is degenerate; radical spanned by {radical:?}")]
    Degenerate { radical: Vec<Vec<BigInt>> },
    #[error("malformed matrix JSON at {at}: {msg}")]
    Json { at: String, msg: String },
}

/// Integral Gram matrix with `gᵀ = −g` and zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingForm {
    gram: IntMat,
}

impl AlternatingForm {
    pub fn new(gram: IntMat) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotAlternating(format!(
                "{}x{} is not square",
                gram.rows(),
                gram.cols()
            )));
        }
        for i in 0..gram.rows() {
            if !gram[(i, i)].is_zero() {
                return Err(LatticeError::NotAlternating(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if gram[(i, j)] != -gram[(j, i)].clone() {
                    return Err(LatticeError::NotAlternating(format!("entries ({i},{j}) and ({j},{i})")));
                }
            }
        }
        Ok(AlternatingForm { gram })
    }

    /// `[[0, I], [−I, 0]]` of size `2g`.
    pub fn standard(g: usize) -> Self {
        AlternatingForm {
            gram: IntMat::standard_symplectic(g),
        }
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// `bᵀ E b`, the form in a new basis.
    pub fn pullback(&self, b: &IntMat) -> Result<Self, LatticeError> {
        AlternatingForm::new(b.transpose().mul(&self.gram).mul(b))
    }

    pub fn restrict(&self, idx: &[usize]) -> Result<Self, LatticeError> {
        AlternatingForm::new(self.gram.select_rows(idx).select_cols(idx))
    }

    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        smith_normal_form(&self.gram).divisors()
    }

    pub fn to_rational(&self) -> RatMat {
        to_rational(&self.gram)
    }
}

/// Small literal integer matrix.
pub fn int_mat(rows: &[&[i64]]) -> IntMat {
    IntMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

pub fn to_rational(a: &IntMat) -> RatMat {
    a.convert(|x| Rational::from_integer(x.clone()))
}

fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

pub fn int_matrix_to_json(a: &IntMat) -> Value {
    let data: Vec<Vec<Value>> = a.to_rows().iter().map(|r| r.iter().map(int_json).collect()).collect();
    json!({ "rows": a.rows(), "cols": a.cols(), "data": data })
}

pub fn rat_matrix_to_json(a: &RatMat) -> Value {
    let data: Vec<Vec<Value>> = a
        .to_rows()
        .iter()
        .map(|r| r.iter().map(rational_to_json).collect())
        .collect();
    json!({ "rows": a.rows(), "cols": a.cols(), "data": data })
}

/// Reads `{"rows","cols","data"}` with integer or `[n, d]` entries.
pub fn rat_matrix_from_json(v: &Value) -> Result<RatMat, LatticeError> {
    let err = |at: &str, msg: &str| LatticeError::Json {
        at: at.to_string(),
        msg: msg.to_string(),
    };
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| err("data", "missing or not a list"))?;
    let mut rows = Vec::with_capacity(data.len());
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| err(&format!("data[{i}]"), "row is not a list"))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            out.push(rational_from_json(x).map_err(|e| err(&format!("data[{i}][{j}]"), &e.to_string()))?);
        }
        rows.push(out);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(err("data", "ragged rows"));
    }
    for (key, want) in [("rows", rows.len()), ("cols", cols)] {
        if let Some(n) = v.get(key) {
            if n.as_u64() != Some(want as u64) {
                return Err(err(key, &format!("declared {n}, data has {want}")));
            }
        }
    }
    if rows.is_empty() {
        return Err(err("data", "empty matrix"));
    }
    Ok(RatMat::from_rows(rows))
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMat, LatticeError> {
    let q = rat_matrix_from_json(v)?;
    q.try_map(|x| {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(LatticeError::Json {
                at: "data".into(),
                msg: format!("non-integral entry {x}"),
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_alternating() {
        assert!(AlternatingForm::new(int_mat(&[&[0, 1], &[1, 0]])).is_err());
        assert!(AlternatingForm::new(int_mat(&[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = int_mat(&[&[1, -2], &[3, 4]]);
        assert_eq!(int_matrix_from_json(&int_matrix_to_json(&a)).unwrap(), a);
        let bad = json!({"rows": 1, "cols": 2, "data": [[1, [1, 2]]]});
        assert!(int_matrix_from_json(&bad).is_err());
        assert!(rat_matrix_from_json(&bad).is_ok());
    }
}
