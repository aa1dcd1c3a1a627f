//! JSON input schemas and shared output helpers.
//!
//! Complex numbers are `[re, im]` pairs throughout: operators are
//! `{"dim": d, "matrix": [[[re, im], ...], ...]}` row-major, states are
//! `{"dim": d, "amplitudes": [[re, im], ...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qvar_core::{ComplexMatrix, Observable, PureState};

#[derive(Debug, Deserialize)]
pub struct OperatorInput {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
pub struct StateInput {
    pub dim: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
pub struct PairInput {
    pub a: OperatorInput,
    pub b: OperatorInput,
}

#[derive(Debug, Deserialize)]
pub struct BoundsInput {
    pub a: OperatorInput,
    pub b: OperatorInput,
    pub psi: StateInput,
}

impl OperatorInput {
    pub fn to_observable(&self, name: &str) -> Result<Observable, String> {
        if self.matrix.len() != self.dim {
            return Err(format!(
                "operator `{name}`: {} rows for declared dim {}",
                self.matrix.len(),
                self.dim
            ));
        }
        let rows: Vec<Vec<Complex64>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        for row in &rows {
            if row.len() != self.dim {
                return Err(format!(
                    "operator `{name}`: row of length {} for declared dim {}",
                    row.len(),
                    self.dim
                ));
            }
        }
        let m = ComplexMatrix::from_rows(&rows)
            .map_err(|e| format!("operator `{name}`: {e}"))?;
        Observable::new(m).map_err(|e| format!("operator `{name}`: {e}"))
    }
}

impl StateInput {
    pub fn to_state(&self, name: &str) -> Result<PureState, String> {
        if self.amplitudes.len() != self.dim {
            return Err(format!(
                "state `{name}`: {} amplitudes for declared dim {}",
                self.amplitudes.len(),
                self.dim
            ));
        }
        let amps: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        PureState::new(amps).map_err(|e| format!("state `{name}`: {e}"))
    }
}

/// A JSON field that is either a finite number or an explicit status string,
/// never a bare non-numeric token.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum NumOrStatus {
    Num(f64),
    Status(String),
}

impl NumOrStatus {
    pub fn num(v: f64) -> Self {
        if v.is_finite() {
            NumOrStatus::Num(v)
        } else if v.is_nan() {
            NumOrStatus::Status("nan".to_string())
        } else {
            NumOrStatus::Status("inf".to_string())
        }
    }

    pub fn status(s: &str) -> Self {
        NumOrStatus::Status(s.to_string())
    }
}

impl From<qvar_core::relations::ReportValue> for NumOrStatus {
    fn from(v: qvar_core::relations::ReportValue) -> Self {
        match v.value() {
            Some(x) => NumOrStatus::num(x),
            None => NumOrStatus::status(v.status().unwrap_or("undefined")),
        }
    }
}

/// Either a boolean flag or a status string.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum BoolOrStatus {
    Bool(bool),
    Status(String),
}

impl BoolOrStatus {
    pub fn from_option(v: Option<bool>, status: &str) -> Self {
        match v {
            Some(b) => BoolOrStatus::Bool(b),
            None => BoolOrStatus::Status(status.to_string()),
        }
    }
}

pub fn complex_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn amplitude_pairs(state: &PureState) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|&z| complex_pair(z)).collect()
}
