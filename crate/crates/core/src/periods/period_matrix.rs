use std::collections::BTreeSet;

use num_traits::Zero;
use serde_json::{json, Value};

use super::affine::{AffineForm, BallPoint, ExactPoint, Param};
use super::PeriodError;
use crate::intlat::{det_bareiss, int_matrix_from_json, int_matrix_to_json, AlternatingForm};
use crate::{BallMat, IntMat, Matrix, RatMat, TowerElem, TowerMat};

pub type AffineMat = Matrix<AffineForm>;

/// `g × 2g` matrix of affine forms with an integral polarization.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    entries: AffineMat,
    polarization: AlternatingForm,
}

impl PeriodMatrix {
    pub fn new(rows: Vec<Vec<AffineForm>>, polarization: IntMat) -> Result<Self, PeriodError> {
        let r = rows.len();
        if r == 0 || rows.iter().any(|row| row.len() != 2 * r) {
            return Err(PeriodError::Shape(format!("expected {r} rows of length {}", 2 * r)));
        }
        PeriodMatrix::from_matrix(Matrix::from_rows(rows), polarization)
    }

    pub fn from_matrix(entries: AffineMat, polarization: IntMat) -> Result<Self, PeriodError> {
        let g = entries.rows();
        if entries.cols() != 2 * g {
            return Err(PeriodError::Shape(format!("{}x{} is not g x 2g", g, entries.cols())));
        }
        if polarization.rows() != 2 * g || polarization.cols() != 2 * g {
            return Err(PeriodError::Shape(format!(
                "polarization is {}x{}, expected {n}x{n}",
                polarization.rows(),
                polarization.cols(),
                n = 2 * g
            )));
        }
        let polarization = AlternatingForm::new(polarization)?;
        if det_bareiss(polarization.gram()).is_zero() {
            return Err(PeriodError::DegeneratePolarization);
        }
        Ok(PeriodMatrix { entries, polarization })
    }

    pub fn from_constant(m: &TowerMat, polarization: IntMat) -> Result<Self, PeriodError> {
        PeriodMatrix::from_matrix(m.map(|x| AffineForm::constant(x.clone())), polarization)
    }

    pub fn genus(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &AffineMat {
        &self.entries
    }

    pub fn polarization(&self) -> &AlternatingForm {
        &self.polarization
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.entries.iter().flat_map(|a| a.params()).collect()
    }

    pub fn substitute(&self, point: &ExactPoint) -> PeriodMatrix {
        PeriodMatrix {
            entries: self.entries.map(|a| a.substitute(point)),
            polarization: self.polarization.clone(),
        }
    }

    pub fn eval_exact(&self, point: &ExactPoint) -> Result<TowerMat, PeriodError> {
        self.entries.try_map(|a| a.eval_exact(point))
    }

    pub fn eval_ball(&self, point: &BallPoint, prec: u64) -> Result<BallMat, PeriodError> {
        self.entries.try_map(|a| a.eval_ball(point, prec))
    }

    /// True when the matrix has no parameters and equals `m`.
    pub fn equals_constant(&self, m: &TowerMat) -> bool {
        self.entries.rows() == m.rows()
            && self.entries.cols() == m.cols()
            && self
                .entries
                .iter()
                .zip(m.iter())
                .all(|(a, b)| a.is_constant() && a.constant_term() == b)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<Value>> = self
            .entries
            .to_rows()
            .iter()
            .map(|r| r.iter().map(AffineForm::to_json).collect())
            .collect();
        let params: Vec<&str> = self.params().into_iter().map(Param::name).collect();
        json!({
            "g": self.genus(),
            "params": params,
            "entries": entries,
            "polarization": int_matrix_to_json(self.polarization.gram()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, PeriodError> {
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| PeriodError::Json("missing \"entries\"".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| PeriodError::Json(format!("entries[{i}] is not a list")))?;
            let parsed: Result<Vec<_>, _> = row
                .iter()
                .enumerate()
                .map(|(j, x)| AffineForm::from_json(x).map_err(|e| PeriodError::Json(format!("entries[{i}][{j}]: {e}"))))
                .collect();
            out.push(parsed?);
        }
        let pol = v
            .get("polarization")
            .ok_or_else(|| PeriodError::Json("missing \"polarization\"".into()))?;
        let pol = int_matrix_from_json(pol)?;
        let pm = PeriodMatrix::new(out, pol)?;
        if let Some(g) = v.get("g") {
            if g.as_u64() != Some(pm.genus() as u64) {
                return Err(PeriodError::Json(format!("declared g = {g}, entries give {}", pm.genus())));
            }
        }
        Ok(pm)
    }
}

pub fn to_tower(m: &RatMat) -> TowerMat {
    m.map(|q| TowerElem::rational(q.clone()))
}

pub fn int_to_tower(m: &IntMat) -> TowerMat {
    m.map(|x| TowerElem::rational(crate::Rational::from_integer(x.clone())))
}

fn dot(row: impl Iterator<Item = AffineForm>) -> AffineForm {
    row.fold(AffineForm::zero(), |acc, x| acc + x)
}

/// `a · p` with `a` constant.
pub fn affine_left_mul(a: &TowerMat, p: &AffineMat) -> AffineMat {
    assert_eq!(a.cols(), p.rows(), "dimension mismatch");
    Matrix::from_fn(a.rows(), p.cols(), |i, j| {
        dot((0..a.cols()).filter(|&k| !a[(i, k)].is_zero()).map(|k| p[(k, j)].scale(&a[(i, k)])))
    })
}

/// `p · r` with `r` constant.
pub fn affine_right_mul(p: &AffineMat, r: &TowerMat) -> AffineMat {
    assert_eq!(p.cols(), r.rows(), "dimension mismatch");
    Matrix::from_fn(p.rows(), r.cols(), |i, j| {
        dot((0..p.cols()).filter(|&k| !r[(k, j)].is_zero()).map(|k| p[(i, k)].scale(&r[(k, j)])))
    })
}

/// Entries where two affine matrices differ.
pub fn affine_mismatches(a: &AffineMat, b: &AffineMat) -> Vec<(usize, usize)> {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)] != b[(i, j)] {
                out.push((i, j));
            }
        }
    }
    out
}
