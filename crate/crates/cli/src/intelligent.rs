//! Intelligent-state solving from the command line.

use num_complex::Complex64;
use serde::Serialize;

use qvar_core::intelligent::solve_intelligent_states;

use crate::io::{complex_pair, BoolOrStatus, NumOrStatus, PairInput};

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct StateJson {
    amplitudes: Vec<[f64; 2]>,
    eigenvalue: [f64; 2],
    residual: f64,
    gis_residual: NumOrStatus,
    is_gis: BoolOrStatus,
    is_ois: BoolOrStatus,
    critical_product_residual: NumOrStatus,
    critical_sum_residual: f64,
    deviation_ratio_check: NumOrStatus,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct IntelligentJson {
    gamma: [f64; 2],
    dim: usize,
    states: Vec<StateJson>,
}

pub fn run(input: &PairInput, gamma: Complex64) -> Result<String, String> {
    let a = input.a.to_observable("a")?;
    let b = input.b.to_observable("b")?;
    if a.dim() != b.dim() {
        return Err(format!(
            "incompatible dimensions: a is {}, b is {}",
            a.dim(),
            b.dim()
        ));
    }

    let states = solve_intelligent_states(&a, &b, gamma).map_err(|e| e.to_string())?;
    let json = IntelligentJson {
        gamma: complex_pair(gamma),
        dim: a.dim(),
        states: states
            .iter()
            .map(|s| StateJson {
                amplitudes: crate::io::amplitude_pairs(&s.state),
                eigenvalue: complex_pair(s.eigenvalue),
                residual: s.residual,
                gis_residual: match s.classification.gis_residual {
                    Some(v) => NumOrStatus::num(v),
                    None => NumOrStatus::status("undefined"),
                },
                is_gis: BoolOrStatus::from_option(s.classification.is_gis, "undefined"),
                is_ois: BoolOrStatus::from_option(s.classification.is_ois, "undefined"),
                critical_product_residual: match s.classification.critical_product_residual {
                    Some(v) => NumOrStatus::num(v),
                    None => NumOrStatus::status("undefined"),
                },
                critical_sum_residual: s.classification.critical_sum_residual,
                deviation_ratio_check: match s.deviation_ratio_check {
                    Some(v) => NumOrStatus::num(v),
                    None => NumOrStatus::status("skipped"),
                },
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}
