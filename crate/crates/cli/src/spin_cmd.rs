//! Collective-spin command: single squeezing report or twisting sweep.

use serde::Serialize;

use qvar_core::spin::{
    coherent_spin_state, oat_sweep, one_axis_twist, squeezing_report, sweep_csv, Frame, SpinSystem,
};
use qvar_core::Error;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson {
    xi_h2: f64,
    xi_r2: f64,
    chi2: f64,
    qfi: f64,
    theta1: f64,
    generalized_bound: f64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct SpinJson {
    n_particles: usize,
    css: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    frame: FrameJson,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ReportJson>,
}

#[derive(Debug, Serialize)]
struct FrameJson {
    n1: [f64; 3],
    n2: [f64; 3],
    n3: [f64; 3],
}

/// Single-report mode. Degenerate physics (vanishing polarization or
/// direction) is a reportable outcome, not a failure: it lands in `status`
/// with a null report and exit code 0.
pub fn run_report(
    n_particles: usize,
    css: [f64; 2],
    mu: Option<f64>,
    frame_axes: [[f64; 3]; 3],
) -> Result<String, String> {
    let sys = SpinSystem::new(n_particles).map_err(|e| e.to_string())?;
    let frame = Frame::new(frame_axes[0], frame_axes[1], frame_axes[2]).map_err(|e| e.to_string())?;
    let psi = match mu {
        Some(m) => one_axis_twist(&sys, css[0], css[1], m),
        None => coherent_spin_state(&sys, css[0], css[1]),
    };

    let (status, report) = match squeezing_report(&sys, &psi, &frame) {
        Ok(r) => (
            "ok".to_string(),
            Some(ReportJson {
                xi_h2: r.xi_h2,
                xi_r2: r.xi_r2,
                chi2: r.chi2,
                qfi: r.qfi,
                theta1: r.theta1,
                generalized_bound: r.generalized_bound,
            }),
        ),
        Err(Error::PolarizationUndefined) => ("polarization undefined".to_string(), None),
        Err(Error::DegenerateDirection) => ("degenerate direction".to_string(), None),
        Err(e) => return Err(e.to_string()),
    };

    let json = SpinJson {
        n_particles,
        css,
        mu,
        frame: FrameJson {
            n1: frame_axes[0],
            n2: frame_axes[1],
            n3: frame_axes[2],
        },
        status,
        report,
    };
    let mut s = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

/// Sweep mode: CSV over the twisting strength, squeezing measured along the
/// minimal-variance transverse direction at each point.
pub fn run_sweep(
    n_particles: usize,
    css: [f64; 2],
    mu_start: f64,
    mu_end: f64,
    count: usize,
) -> Result<String, String> {
    let sys = SpinSystem::new(n_particles).map_err(|e| e.to_string())?;
    let rows = oat_sweep(&sys, css[0], css[1], mu_start, mu_end, count).map_err(|e| e.to_string())?;
    Ok(sweep_csv(&rows))
}
