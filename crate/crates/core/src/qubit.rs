//! Bloch-sphere closed forms for qubits: normalized uncertainty ratios for
//! the planar observable pair, the state-independent sum-of-variances bound,
//! the Schrödinger-remainder mixedness identity, and figure-grade grid scans.
//!
//! Conventions: a pure state is cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ with Bloch
//! vector (sinθ cosφ, sinθ sinφ, cosθ); the planar pair at angle ϕ is
//! A = cosϕ σx + sinϕ σy, B = sinϕ σx + cosϕ σy.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{ComplexMatrix, DensityState, Observable, PureState};
use crate::relations::{pair_moments_mixed, PairMoments};

const DIV_TOL: f64 = 1e-14;

/// A qubit observable alpha1*I + alpha2 * (axis . sigma) with a unit axis.
#[derive(Debug, Clone, Copy)]
pub struct BlochObservable {
    pub alpha1: f64,
    pub alpha2: f64,
    pub axis: [f64; 3],
}

impl BlochObservable {
    pub fn new(alpha1: f64, alpha2: f64, axis: [f64; 3]) -> Result<Self> {
        let norm = norm3(axis);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(Self { alpha1, alpha2, axis })
    }

    /// Drop the scalar part and the scale: the bare axis observable a.sigma.
    pub fn normalized_axis(&self) -> Self {
        Self {
            alpha1: 0.0,
            alpha2: 1.0,
            axis: self.axis,
        }
    }

    pub fn to_observable(&self) -> Observable {
        let m = axis_matrix(self.axis)
            .scaled(Complex64::new(self.alpha2, 0.0))
            .add(&ComplexMatrix::identity(2).scaled(Complex64::new(self.alpha1, 0.0)));
        Observable::new(m).expect("Pauli combinations are Hermitian")
    }
}

/// A qubit state by its Bloch vector; pure when the norm is 1.
#[derive(Debug, Clone, Copy)]
pub struct BlochState {
    pub r: [f64; 3],
}

impl BlochState {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let norm = norm3(r);
        if norm > 1.0 + 1e-12 {
            return Err(Error::NotNormalized(norm - 1.0));
        }
        Ok(Self { r })
    }

    pub fn is_pure(&self) -> bool {
        (norm3(self.r) - 1.0).abs() <= 1e-10
    }

    /// rho = (I + r.sigma)/2
    pub fn to_density(&self) -> DensityState {
        let m = ComplexMatrix::identity(2)
            .add(&axis_matrix(self.r))
            .scaled(Complex64::new(0.5, 0.0));
        DensityState::new(m).expect("Bloch ball maps onto valid density matrices")
    }
}

/// The planar observable pair at angle ϕ.
#[derive(Debug, Clone, Copy)]
pub struct PlanarPair {
    pub phi: f64,
}

impl PlanarPair {
    pub fn a_axis(&self) -> [f64; 3] {
        [self.phi.cos(), self.phi.sin(), 0.0]
    }

    pub fn b_axis(&self) -> [f64; 3] {
        [self.phi.sin(), self.phi.cos(), 0.0]
    }

    pub fn observables(&self) -> (Observable, Observable) {
        let a = Observable::new(axis_matrix(self.a_axis())).expect("Hermitian");
        let b = Observable::new(axis_matrix(self.b_axis())).expect("Hermitian");
        (a, b)
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// v . sigma as a matrix.
pub fn axis_matrix(v: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(v[2], 0.0), Complex64::new(v[0], -v[1])],
        vec![Complex64::new(v[0], v[1]), Complex64::new(-v[2], 0.0)],
    ])
    .expect("2x2")
}

/// The pure state cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
pub fn bloch_pure_state(theta: f64, varphi: f64) -> PureState {
    let half = theta / 2.0;
    PureState::new(vec![
        Complex64::new(half.cos(), 0.0),
        Complex64::from_polar(half.sin(), varphi),
    ])
    .expect("normalized by construction")
}

/// Value of a closed-form ratio: finite, divergent, or 0/0.
///
/// Divergences are features of the landscape (the denominators vanish on
/// physical loci), so they are flagged values rather than errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Finite(f64),
    Infinite,
    Indeterminate,
}

impl ClosedForm {
    pub fn finite(self) -> Option<f64> {
        match self {
            ClosedForm::Finite(v) => Some(v),
            _ => None,
        }
    }

    fn from_ratio(numerator: f64, denominator: f64) -> Self {
        if denominator.abs() < DIV_TOL {
            if numerator.abs() < DIV_TOL {
                ClosedForm::Indeterminate
            } else {
                ClosedForm::Infinite
            }
        } else {
            ClosedForm::Finite(numerator / denominator)
        }
    }

    /// CSV rendering with 12 significant digits; `inf` and `nan` literals
    /// for the flagged values.
    pub fn csv_cell(&self) -> String {
        match self {
            ClosedForm::Finite(v) => format_sig(*v),
            ClosedForm::Infinite => "inf".to_string(),
            ClosedForm::Indeterminate => "nan".to_string(),
        }
    }
}

pub(crate) fn format_sig(v: f64) -> String {
    format!("{v:.11e}")
}

/// Normalized product ratio U1 = ΔA²ΔB² / |⟨C⟩/2|² for the planar pair on
/// the pure state (θ, φ):
/// [1 - sin²θ cos²(φ-ϕ)][1 - sin²θ sin²(φ+ϕ)] / (cos²θ cos²2ϕ).
pub fn u1_ratio(theta: f64, varphi: f64, phi: f64) -> ClosedForm {
    let st2 = theta.sin().powi(2);
    let numerator =
        (1.0 - st2 * (varphi - phi).cos().powi(2)) * (1.0 - st2 * (varphi + phi).sin().powi(2));
    let denominator = theta.cos().powi(2) * (2.0 * phi).cos().powi(2);
    ClosedForm::from_ratio(numerator, denominator)
}

/// Normalized sum ratio U2 = (ΔA² + ΔB²) / L2 for the planar pair:
/// [2 - sin²θ(1 + sin2φ sin2ϕ)] / [(1 + sin2ϕ)(1 - sin²θ(1 + sin2φ)/2)].
///
/// Errors when 1 + sin2ϕ vanishes (ϕ = -π/4 mod π): A + B degenerates to
/// zero scale and the ratio loses meaning for every state.
pub fn u2_ratio(theta: f64, varphi: f64, phi: f64) -> Result<ClosedForm> {
    let prefactor = 1.0 + (2.0 * phi).sin();
    if prefactor <= DIV_TOL {
        return Err(Error::DegeneratePair);
    }
    let st2 = theta.sin().powi(2);
    let numerator = 2.0 - st2 * (1.0 + (2.0 * varphi).sin() * (2.0 * phi).sin());
    let denominator = prefactor * (1.0 - st2 * (1.0 + (2.0 * varphi).sin()) / 2.0);
    Ok(ClosedForm::from_ratio(numerator, denominator))
}

/// Sum of variances of two axis observables on a Bloch state:
/// W = 2 - (a.r)² - (b.r)².
pub fn sum_variances_bloch(a: [f64; 3], b: [f64; 3], state: &BlochState) -> f64 {
    2.0 - dot3(a, state.r).powi(2) - dot3(b, state.r).powi(2)
}

/// State-independent lower bound on W and the associated maximal eigenvector
/// overlap c: W ≥ 1 - |a.b| = 2(1 - c²) with c = sqrt((1 + |a.b|)/2).
#[derive(Debug, Clone, Copy)]
pub struct StateIndependentBound {
    pub bound: f64,
    pub overlap_c: f64,
}

pub fn state_independent_bound(a: [f64; 3], b: [f64; 3]) -> StateIndependentBound {
    let ab = dot3(a, b).abs();
    StateIndependentBound {
        bound: 1.0 - ab,
        overlap_c: ((1.0 + ab) / 2.0).sqrt(),
    }
}

/// Both sides of the mixedness identity for axis observables:
/// ΔA²ΔB² - ⟨C⟩²/4 - ⟨F⟩²/4 = (1 - (a.b)²)(1 - |r|²).
#[derive(Debug, Clone, Copy)]
pub struct UpsilonCheck {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn upsilon_identity(a: [f64; 3], b: [f64; 3], state: &BlochState) -> Result<UpsilonCheck> {
    let oa = Observable::new(axis_matrix(a)).expect("Hermitian");
    let ob = Observable::new(axis_matrix(b)).expect("Hermitian");
    let rho = state.to_density();
    let pm: PairMoments = pair_moments_mixed(&oa, &ob, &rho)?;
    let lhs = pm.var_a * pm.var_b - pm.exp_c * pm.exp_c / 4.0 - pm.exp_f * pm.exp_f / 4.0;
    let r2 = dot3(state.r, state.r);
    let rhs = (1.0 - dot3(a, b).powi(2)) * (1.0 - r2);
    Ok(UpsilonCheck { lhs, rhs })
}

/// One node of a ratio grid.
#[derive(Debug, Clone, Copy)]
pub struct GridPoint {
    pub theta: f64,
    pub varphi: f64,
    pub u1: ClosedForm,
    pub u2: ClosedForm,
}

/// Row-major scan of U1 and U2 over θ ∈ [0, π] and φ ∈ [0, 2π], endpoints
/// included, uniform spacing.
pub fn grid_scan(phi: f64, n_theta: usize, n_varphi: usize) -> Result<Vec<GridPoint>> {
    if n_theta < 2 || n_varphi < 2 {
        return Err(Error::InvalidGrid);
    }
    // validate the pair angle once up front
    u2_ratio(0.0, 0.0, phi)?;
    let mut out = Vec::with_capacity(n_theta * n_varphi);
    for i in 0..n_theta {
        let theta = std::f64::consts::PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_varphi {
            let varphi = 2.0 * std::f64::consts::PI * j as f64 / (n_varphi - 1) as f64;
            out.push(GridPoint {
                theta,
                varphi,
                u1: u1_ratio(theta, varphi, phi),
                u2: u2_ratio(theta, varphi, phi)?,
            });
        }
    }
    Ok(out)
}

/// Render a grid as CSV with header `theta,varphi,u1,u2`, angles in radians
/// with 12 significant digits.
pub fn grid_csv(points: &[GridPoint]) -> String {
    let mut s = String::with_capacity(points.len() * 48 + 24);
    s.push_str("theta,varphi,u1,u2\n");
    for p in points {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            format_sig(p.theta),
            format_sig(p.varphi),
            p.u1.csv_cell(),
            p.u2.csv_cell()
        );
    }
    s
}
