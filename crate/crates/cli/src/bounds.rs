//! Full uncertainty report for one (A, B, psi) triple read from JSON.

use serde::Serialize;

use qvar_core::relations::{uncertainty_report, vaidman_decompose};
use qvar_core::{Error, Observable, PureState};

use crate::io::{BoundsInput, NumOrStatus};

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct PairJson {
    mean_a: f64,
    mean_b: f64,
    var_a: f64,
    var_b: f64,
    exp_c: f64,
    exp_f: f64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
#[serde(untagged)]
enum VaidmanJson {
    Split { mean: f64, deviation: f64 },
    Status(String),
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct BoundsJson {
    pair: PairJson,
    sum_w: f64,
    prod_u: f64,
    rur: f64,
    sur_bound: f64,
    upsilon: f64,
    l1_plus: NumOrStatus,
    l1_minus: NumOrStatus,
    l2: f64,
    l3: f64,
    l2_prime: f64,
    amended_rur_plus: NumOrStatus,
    amended_rur_minus: NumOrStatus,
    theta1: NumOrStatus,
    theta2: f64,
    theta3: NumOrStatus,
    vaidman_a: VaidmanJson,
    vaidman_b: VaidmanJson,
}

fn vaidman_json(o: &Observable, psi: &PureState) -> Result<VaidmanJson, Error> {
    match vaidman_decompose(o, psi) {
        Ok(v) => Ok(VaidmanJson::Split {
            mean: v.mean,
            deviation: v.deviation,
        }),
        Err(Error::DegenerateDecomposition(_)) => Ok(VaidmanJson::Status(
            "degenerate: state is an eigenstate".to_string(),
        )),
        Err(e) => Err(e),
    }
}

pub fn run(input: &BoundsInput) -> Result<String, String> {
    let a = input.a.to_observable("a")?;
    let b = input.b.to_observable("b")?;
    let psi = input.psi.to_state("psi")?;
    if a.dim() != b.dim() || a.dim() != psi.dim() {
        return Err(format!(
            "incompatible dimensions: a is {}, b is {}, psi is {}",
            a.dim(),
            b.dim(),
            psi.dim()
        ));
    }

    let report = uncertainty_report(&a, &b, &psi).map_err(|e| e.to_string())?;
    let json = BoundsJson {
        pair: PairJson {
            mean_a: report.pair.mean_a,
            mean_b: report.pair.mean_b,
            var_a: report.pair.var_a,
            var_b: report.pair.var_b,
            exp_c: report.pair.exp_c,
            exp_f: report.pair.exp_f,
        },
        sum_w: report.sum_w,
        prod_u: report.prod_u,
        rur: report.rur,
        sur_bound: report.sur_bound,
        upsilon: report.upsilon,
        l1_plus: report.l1_plus.into(),
        l1_minus: report.l1_minus.into(),
        l2: report.l2,
        l3: report.l3,
        l2_prime: report.l2_prime,
        amended_rur_plus: report.amended_rur_plus.into(),
        amended_rur_minus: report.amended_rur_minus.into(),
        theta1: report.theta1.into(),
        theta2: report.theta2,
        theta3: report.theta3.into(),
        vaidman_a: vaidman_json(&a, &psi).map_err(|e| e.to_string())?,
        vaidman_b: vaidman_json(&b, &psi).map_err(|e| e.to_string())?,
    };
    let mut s = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}
