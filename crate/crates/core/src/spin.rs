//! Collective-spin operators in the symmetric (Dicke) sector, coherent and
//! one-axis-twisted states, and the spin-squeezing parameters with their
//! quantum-Fisher-information sensitivity chain.
//!
//! N spin-1/2 particles are represented on the (N+1)-dimensional symmetric
//! subspace with j = N/2; every state used here (coherent, twisted) lives in
//! that sector, which keeps all quantities exact at desk scale.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{ComplexMatrix, Observable, PureState};
use crate::qubit::format_sig;
use crate::relations::{
    amended_robertson_bound, moments, pair_moments, theta1_optimal_state, Sign,
};

const MAX_PARTICLES: usize = 63;
const DEVIATION_TOL: f64 = 1e-10;
const FRAME_TOL: f64 = 1e-10;

/// Collective spin operators for N particles in the Dicke basis |j, m⟩ with
/// j = N/2 and m = j..-j (index 0 holds m = j).
#[derive(Debug, Clone)]
pub struct SpinSystem {
    n_particles: usize,
    j: f64,
    jx: Observable,
    jy: Observable,
    jz: Observable,
}

impl SpinSystem {
    pub fn new(n_particles: usize) -> Result<Self> {
        if n_particles == 0 || n_particles > MAX_PARTICLES {
            return Err(Error::ParticleNumber(n_particles));
        }
        let dim = n_particles + 1;
        let j = n_particles as f64 / 2.0;

        // raising operator: ⟨j, m+1| J+ |j, m⟩ = sqrt(j(j+1) - m(m+1))
        let mut plus = ComplexMatrix::zeros(dim);
        for i in 1..dim {
            let m = j - i as f64;
            let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
            plus.set(i - 1, i, Complex64::new(amp, 0.0));
        }
        let minus = plus.adjoint();

        let jx = Observable::new(plus.add(&minus).scaled(Complex64::new(0.5, 0.0)))?;
        let jy = Observable::new(plus.sub(&minus).scaled(Complex64::new(0.0, -0.5)))?;
        let jz = Observable::new(ComplexMatrix::from_fn(dim, |i, k| {
            if i == k {
                Complex64::new(j - i as f64, 0.0)
            } else {
                Complex64::ZERO
            }
        }))?;

        Ok(Self {
            n_particles,
            j,
            jx,
            jy,
            jz,
        })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.n_particles + 1
    }

    pub fn jx(&self) -> &Observable {
        &self.jx
    }

    pub fn jy(&self) -> &Observable {
        &self.jy
    }

    pub fn jz(&self) -> &Observable {
        &self.jz
    }

    /// J . n for an arbitrary direction (not necessarily unit).
    pub fn direction(&self, n: [f64; 3]) -> Observable {
        let m = self
            .jx
            .matrix()
            .scaled(Complex64::new(n[0], 0.0))
            .add(&self.jy.matrix().scaled(Complex64::new(n[1], 0.0)))
            .add(&self.jz.matrix().scaled(Complex64::new(n[2], 0.0)));
        Observable::new(m).expect("real combinations of spin operators are Hermitian")
    }
}

/// Coherent spin state: the top Dicke state |j, j⟩ rotated by θ about the
/// axis (-sinφ, cosφ, 0), which points the mean spin along
/// (sinθ cosφ, sinθ sinφ, cosθ).
pub fn coherent_spin_state(sys: &SpinSystem, theta: f64, varphi: f64) -> PureState {
    let axis = [-varphi.sin(), varphi.cos(), 0.0];
    let generator = sys.direction(axis);
    let u = generator
        .matrix()
        .scaled(Complex64::new(0.0, -theta))
        .expm();
    let top = PureState::basis_state(sys.dim(), 0);
    PureState::normalized(u.matvec(top.amplitudes())).expect("unitary preserves the norm")
}

/// One-axis twisting: exp(-i mu Jz^2) applied to the coherent state
/// (θ0, φ0). Jz is diagonal here, so the twist is a pure phase per level.
pub fn one_axis_twist(sys: &SpinSystem, theta0: f64, varphi0: f64, mu: f64) -> PureState {
    let css = coherent_spin_state(sys, theta0, varphi0);
    let twisted: Vec<Complex64> = css
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let m = sys.j() - i as f64;
            a * Complex64::from_polar(1.0, -mu * m * m)
        })
        .collect();
    PureState::normalized(twisted).expect("phases preserve the norm")
}

/// A mutually orthonormal measurement frame (n1, n2, n3): variance along n1,
/// polarization along n2, phase generator along n3.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub n1: [f64; 3],
    pub n2: [f64; 3],
    pub n3: [f64; 3],
}

impl Frame {
    pub fn new(n1: [f64; 3], n2: [f64; 3], n3: [f64; 3]) -> Result<Self> {
        let f = Self { n1, n2, n3 };
        let mut residual: f64 = 0.0;
        let vs = [n1, n2, n3];
        for (i, a) in vs.iter().enumerate() {
            residual = residual.max((norm3(*a) - 1.0).abs());
            for b in vs.iter().skip(i + 1) {
                residual = residual.max(dot3(*a, *b).abs());
            }
        }
        if residual > FRAME_TOL {
            return Err(Error::FrameNotOrthonormal(residual));
        }
        Ok(f)
    }
}

/// Squeezing parameters for a state in a frame, plus the sensitivity chain
/// xi_R^2 ≥ chi^2/(1 - theta1/2)^2 ≥ chi^2.
#[derive(Debug, Clone, Copy)]
pub struct SqueezingReport {
    /// 2 (ΔJ_n1)^2 / |⟨J_n2⟩|
    pub xi_h2: f64,
    /// N (ΔJ_n1)^2 / ⟨J_n2⟩^2
    pub xi_r2: f64,
    /// N / F with F the quantum Fisher information for J_n3 rotations.
    pub chi2: f64,
    /// F = 4 (ΔJ_n3)^2
    pub qfi: f64,
    /// Overlap deficit for the (J_n1, J_n3) pair with its optimal complement.
    pub theta1: f64,
    /// chi^2 / (1 - theta1/2)^2
    pub generalized_bound: f64,
}

/// Evaluate the squeezing report with the canonical (optimal-complement)
/// choice for theta1.
pub fn squeezing_report(sys: &SpinSystem, psi: &PureState, frame: &Frame) -> Result<SqueezingReport> {
    squeezing_report_impl(sys, psi, frame, None)
}

/// Same report, but theta1 uses a caller-supplied orthogonal state.
pub fn squeezing_report_with_complement(
    sys: &SpinSystem,
    psi: &PureState,
    frame: &Frame,
    orth: &PureState,
) -> Result<SqueezingReport> {
    squeezing_report_impl(sys, psi, frame, Some(orth))
}

fn squeezing_report_impl(
    sys: &SpinSystem,
    psi: &PureState,
    frame: &Frame,
    orth: Option<&PureState>,
) -> Result<SqueezingReport> {
    let j1 = sys.direction(frame.n1);
    let j2 = sys.direction(frame.n2);
    let j3 = sys.direction(frame.n3);

    let m1 = moments(&j1, psi)?;
    let m2 = moments(&j2, psi)?;
    let m3 = moments(&j3, psi)?;

    if m1.variance.sqrt() <= DEVIATION_TOL || m3.variance.sqrt() <= DEVIATION_TOL {
        return Err(Error::DegenerateDirection);
    }
    if m2.mean.abs() <= DEVIATION_TOL {
        return Err(Error::PolarizationUndefined);
    }

    let n = sys.n_particles() as f64;
    let xi_h2 = 2.0 * m1.variance / m2.mean.abs();
    let xi_r2 = n * m1.variance / (m2.mean * m2.mean);
    let qfi = 4.0 * m3.variance;
    let chi2 = n / qfi;

    // theta1 for the (J_n1, J_n3) pair, with the sign that keeps the
    // amended-bound denominator positive.
    let pm = pair_moments(&j1, &j3, psi)?;
    let sign = if pm.exp_c >= 0.0 { Sign::Minus } else { Sign::Plus };
    let theta1 = match orth {
        Some(o) => amended_robertson_bound(&j1, &j3, psi, o, sign)?.theta1,
        None => match theta1_optimal_state(&j1, &j3, psi, sign) {
            Ok(opt) => amended_robertson_bound(&j1, &j3, psi, &opt, sign)?.theta1,
            // the pair saturates the Robertson bound: the overlap vanishes
            // for every complement
            Err(Error::TrivialSaturation) => 0.0,
            Err(e) => return Err(e),
        },
    };
    let denom = 1.0 - theta1 / 2.0;
    if denom.abs() <= DEVIATION_TOL {
        return Err(Error::IndeterminateBound);
    }
    let generalized_bound = chi2 / (denom * denom);

    Ok(SqueezingReport {
        xi_h2,
        xi_r2,
        chi2,
        qfi,
        theta1,
        generalized_bound,
    })
}

/// Squeezing criterion from the Robertson bound: ΔO² < |⟨C⟩|/2.
pub fn squeezed_robertson(variance: f64, exp_c: f64) -> bool {
    variance < exp_c.abs() / 2.0
}

/// Criterion from the amended bound: ΔO² < |⟨C⟩|/(2 - Θ1).
pub fn squeezed_amended(variance: f64, exp_c: f64, theta1: f64) -> bool {
    variance < exp_c.abs() / (2.0 - theta1)
}

/// Criterion from the sum bound: ΔO² < (|⟨C⟩| + Θ2)/2.
pub fn squeezed_sum(variance: f64, exp_c: f64, theta2: f64) -> bool {
    variance < (exp_c.abs() + theta2) / 2.0
}

/// One row of a twisting-strength sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub mu: f64,
    pub xi_h2: f64,
    pub xi_r2: f64,
    pub chi2: f64,
    pub generalized_bound: f64,
}

/// Sweep the one-axis twisting strength over [mu_start, mu_end] with `count`
/// inclusive points, reporting squeezing along the minimal-variance
/// direction transverse to the mean spin at each strength.
pub fn oat_sweep(
    sys: &SpinSystem,
    theta0: f64,
    varphi0: f64,
    mu_start: f64,
    mu_end: f64,
    count: usize,
) -> Result<Vec<SweepPoint>> {
    if count < 2 {
        return Err(Error::InvalidGrid);
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mu = mu_start + (mu_end - mu_start) * k as f64 / (count - 1) as f64;
        let psi = one_axis_twist(sys, theta0, varphi0, mu);
        let frame = minimal_variance_frame(sys, &psi)?;
        let report = squeezing_report(sys, &psi, &frame)?;
        out.push(SweepPoint {
            mu,
            xi_h2: report.xi_h2,
            xi_r2: report.xi_r2,
            chi2: report.chi2,
            generalized_bound: report.generalized_bound,
        });
    }
    Ok(out)
}

/// Frame with n2 along the mean spin and n1 minimizing the transverse
/// variance; n3 completes the triad.
pub fn minimal_variance_frame(sys: &SpinSystem, psi: &PureState) -> Result<Frame> {
    let mean = [
        moments(sys.jx(), psi)?.mean,
        moments(sys.jy(), psi)?.mean,
        moments(sys.jz(), psi)?.mean,
    ];
    let polarization = norm3(mean);
    if polarization <= DEVIATION_TOL {
        return Err(Error::PolarizationUndefined);
    }
    let n2 = [
        mean[0] / polarization,
        mean[1] / polarization,
        mean[2] / polarization,
    ];

    // deterministic transverse pair
    let seed = if n2[0].abs() <= n2[1].abs() && n2[0].abs() <= n2[2].abs() {
        [1.0, 0.0, 0.0]
    } else if n2[1].abs() <= n2[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let mut e1 = sub3(seed, scale3(n2, dot3(seed, n2)));
    let e1n = norm3(e1);
    e1 = scale3(e1, 1.0 / e1n);
    let e2 = cross3(n2, e1);

    // transverse covariance
    let je1 = sys.direction(e1);
    let je2 = sys.direction(e2);
    let v11 = moments(&je1, psi)?.variance;
    let v22 = moments(&je2, psi)?.variance;
    let pm = pair_moments(&je1, &je2, psi)?;
    let v12 = pm.exp_f / 2.0;

    // variance along cos(alpha) e1 + sin(alpha) e2 is
    // (v11+v22)/2 + (v11-v22)/2 cos 2a + v12 sin 2a; minimize over alpha
    let alpha = 0.5 * (-2.0 * v12).atan2(-(v11 - v22));
    let n1 = add3(scale3(e1, alpha.cos()), scale3(e2, alpha.sin()));
    let n3 = cross3(n1, n2);
    Frame::new(n1, n2, n3)
}

/// CSV rendering of a sweep: header `mu,xiH2,xiR2,chi2,generalized_bound`,
/// 12 significant digits.
pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut s = String::with_capacity(points.len() * 64 + 40);
    s.push_str("mu,xiH2,xiR2,chi2,generalized_bound\n");
    for p in points {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            format_sig(p.mu),
            format_sig(p.xi_h2),
            format_sig(p.xi_r2),
            format_sig(p.chi2),
            format_sig(p.generalized_bound)
        );
    }
    s
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scale3(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
