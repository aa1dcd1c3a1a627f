//! Variance-based uncertainty functionals and bounds for a pair of
//! observables on a state.
//!
//! Covers the Robertson and Schrödinger relations, the Vaidman split of an
//! operator's action into parallel and orthogonal parts, the Maccone-Pati
//! sum bounds L1/L2/L3 and the amended Robertson bound, the exact sum and
//! product identities over an orthonormal complement that those bounds
//! truncate, the hierarchy of partial-sum bounds, and the phase-resolved
//! strengthened sum bound.
//!
//! Every ± that appears in a bound is an explicit [`Sign`] parameter. All
//! quantities that are real in exact arithmetic are checked for imaginary
//! residue; a residue above 1e-10 aborts with an error instead of being
//! truncated, since it signals a non-Hermitian input.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{
    anticommutator, commutator, fix_phase, inner, vec_norm, ComplexMatrix, DensityState,
    Observable, PureState,
};

const IMAG_TOL: f64 = 1e-10;
const DEVIATION_TOL: f64 = 1e-10;
const VAR_TOL: f64 = 1e-12;
const ORTHO_TOL: f64 = 1e-10;

/// Branch choice for the ± in the sum/product bounds and identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// Mean and variance of one observable on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub mean: f64,
    /// Clamped to zero when within 1e-12 below zero.
    pub variance: f64,
}

/// First and second moments of a pair, plus the commutator and centered
/// anticommutator expectations ⟨C⟩ = ⟨-i\[A,B\]⟩ and ⟨F⟩ = ⟨{A-⟨A⟩, B-⟨B⟩}⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMoments {
    pub mean_a: f64,
    pub mean_b: f64,
    pub var_a: f64,
    pub var_b: f64,
    pub exp_c: f64,
    pub exp_f: f64,
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryResidue(z.im.abs()));
    }
    Ok(z.re)
}

fn clamp_variance(v: f64) -> Result<f64> {
    if v < -VAR_TOL {
        return Err(Error::ImaginaryResidue(-v));
    }
    Ok(v.max(0.0))
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(a, b));
    }
    Ok(())
}

/// Mean and variance of `o` on `psi`; the variance comes from
/// ||O psi||^2 - ⟨O⟩^2, exact for Hermitian input.
pub fn moments(o: &Observable, psi: &PureState) -> Result<MomentReport> {
    check_dims(o.dim(), psi.dim())?;
    let applied = o.apply(psi.amplitudes());
    let mean = real_part(inner(psi.amplitudes(), &applied))?;
    let second = vec_norm(&applied).powi(2);
    let variance = clamp_variance(second - mean * mean)?;
    Ok(MomentReport { mean, variance })
}

/// Moments with respect to a density matrix: ⟨O⟩ = Tr(rho O).
pub fn moments_mixed(o: &Observable, rho: &DensityState) -> Result<MomentReport> {
    check_dims(o.dim(), rho.dim())?;
    let mean = real_part(rho.matrix().matmul(o.matrix()).trace())?;
    let o2 = o.matrix().matmul(o.matrix());
    let second = real_part(rho.matrix().matmul(&o2).trace())?;
    let variance = clamp_variance(second - mean * mean)?;
    Ok(MomentReport { mean, variance })
}

/// All six pair quantities, with ⟨C⟩ and ⟨F⟩ taken from explicitly formed
/// commutator and anticommutator matrices.
pub fn pair_moments(a: &Observable, b: &Observable, psi: &PureState) -> Result<PairMoments> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), psi.dim())?;
    let ma = moments(a, psi)?;
    let mb = moments(b, psi)?;

    let comm = commutator(a.matrix(), b.matrix());
    let c_matrix = comm.scaled(Complex64::new(0.0, -1.0));
    let exp_c = real_part(inner(psi.amplitudes(), &c_matrix.matvec(psi.amplitudes())))?;

    let centered_a = centered(a, ma.mean);
    let centered_b = centered(b, mb.mean);
    let f_matrix = anticommutator(&centered_a, &centered_b);
    let exp_f = real_part(inner(psi.amplitudes(), &f_matrix.matvec(psi.amplitudes())))?;

    Ok(PairMoments {
        mean_a: ma.mean,
        mean_b: mb.mean,
        var_a: ma.variance,
        var_b: mb.variance,
        exp_c,
        exp_f,
    })
}

/// Density-matrix version of [`pair_moments`].
pub fn pair_moments_mixed(a: &Observable, b: &Observable, rho: &DensityState) -> Result<PairMoments> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), rho.dim())?;
    let ma = moments_mixed(a, rho)?;
    let mb = moments_mixed(b, rho)?;

    let c_matrix = commutator(a.matrix(), b.matrix()).scaled(Complex64::new(0.0, -1.0));
    let exp_c = real_part(rho.matrix().matmul(&c_matrix).trace())?;

    let f_matrix = anticommutator(&centered(a, ma.mean), &centered(b, mb.mean));
    let exp_f = real_part(rho.matrix().matmul(&f_matrix).trace())?;

    Ok(PairMoments {
        mean_a: ma.mean,
        mean_b: mb.mean,
        var_a: ma.variance,
        var_b: mb.variance,
        exp_c,
        exp_f,
    })
}

fn centered(o: &Observable, mean: f64) -> ComplexMatrix {
    let n = o.dim();
    let mut m = o.matrix().clone();
    for i in 0..n {
        m.set(i, i, m.get(i, i) - Complex64::new(mean, 0.0));
    }
    m
}

/// Split O|psi⟩ into ⟨O⟩|psi⟩ + ΔO |orth⟩ with a normalized |orth⟩ ⊥ |psi⟩.
#[derive(Debug, Clone)]
pub struct VaidmanSplit {
    pub mean: f64,
    pub deviation: f64,
    pub orth: PureState,
}

/// The Vaidman decomposition of an observable's action on a state.
///
/// Errors with [`Error::DegenerateDecomposition`] when `psi` is an eigenstate
/// of `o` (deviation below 1e-10); callers that need L2/L3 treat that case as
/// a vanishing bound instead.
pub fn vaidman_decompose(o: &Observable, psi: &PureState) -> Result<VaidmanSplit> {
    check_dims(o.dim(), psi.dim())?;
    let m = moments(o, psi)?;
    let deviation = m.variance.sqrt();
    if deviation < DEVIATION_TOL {
        return Err(Error::DegenerateDecomposition(deviation));
    }
    let applied = o.apply(psi.amplitudes());
    let orth_amps: Vec<Complex64> = applied
        .iter()
        .zip(psi.amplitudes())
        .map(|(&op, &p)| (op - Complex64::new(m.mean, 0.0) * p) / deviation)
        .collect();
    let orth = PureState::new(orth_amps)?;
    Ok(VaidmanSplit {
        mean: m.mean,
        deviation,
        orth,
    })
}

fn check_orthogonal(psi: &PureState, orth: &PureState) -> Result<()> {
    let overlap = psi.overlap(orth).norm();
    if overlap > ORTHO_TOL {
        return Err(Error::NotOrthogonal(overlap));
    }
    Ok(())
}

/// (A + sign*iB)^dagger |psi⟩, the vector whose overlaps give the matrix
/// elements ⟨psi|(A + sign*iB)|phi⟩ = ⟨chi|phi⟩.
fn chi_vector(a: &Observable, b: &Observable, psi: &PureState, sign: Sign) -> Vec<Complex64> {
    let av = a.apply(psi.amplitudes());
    let bv = b.apply(psi.amplitudes());
    let factor = Complex64::new(0.0, -sign.value());
    av.iter().zip(&bv).map(|(&x, &y)| x + factor * y).collect()
}

/// Maccone-Pati sum bound L1: ±i⟨\[A,B\]⟩ + |⟨psi|A ± iB|orth⟩|^2 ≤ ΔA² + ΔB².
pub fn sum_bound_l1(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    orth: &PureState,
    sign: Sign,
) -> Result<f64> {
    check_dims(a.dim(), psi.dim())?;
    check_dims(psi.dim(), orth.dim())?;
    check_orthogonal(psi, orth)?;
    let pm = pair_moments(a, b, psi)?;
    // ±i⟨\[A,B\]⟩ = ∓⟨C⟩
    let commutator_term = -sign.value() * pm.exp_c;
    let chi = chi_vector(a, b, psi, sign);
    let element = inner(&chi, orth.amplitudes()).norm_sqr();
    Ok(commutator_term + element)
}

/// Both branch values of a signed bound.
#[derive(Debug, Clone, Copy)]
pub struct SignedBounds {
    pub plus: f64,
    pub minus: f64,
}

impl SignedBounds {
    pub fn max(&self) -> f64 {
        self.plus.max(self.minus)
    }
}

/// Convenience wrapper reporting the L1 bound for both signs.
pub fn sum_bound_l1_both(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    orth: &PureState,
) -> Result<SignedBounds> {
    Ok(SignedBounds {
        plus: sum_bound_l1(a, b, psi, orth, Sign::Plus)?,
        minus: sum_bound_l1(a, b, psi, orth, Sign::Minus)?,
    })
}

/// L2 = Δ(A+B)²/2, the variance bound built from the sum observable.
pub fn sum_bound_l2(a: &Observable, b: &Observable, psi: &PureState) -> Result<f64> {
    let sum = a.add(b)?;
    Ok(moments(&sum, psi)?.variance / 2.0)
}

/// L3 = Δ(A-B)²/2, the companion bound from the difference observable.
pub fn sum_bound_l3(a: &Observable, b: &Observable, psi: &PureState) -> Result<f64> {
    let diff = a.sub(b)?;
    Ok(moments(&diff, psi)?.variance / 2.0)
}

/// Amended Robertson bound together with the overlap Θ1 it is built from.
#[derive(Debug, Clone, Copy)]
pub struct AmendedBound {
    pub bound: f64,
    pub theta1: f64,
}

/// The amended Robertson relation:
/// ΔAΔB ≥ ±(i/2)⟨\[A,B\]⟩ / (1 - Θ1/2) with
/// Θ1 = |⟨psi|(A/ΔA ± iB/ΔB)|orth⟩|².
///
/// Errors when either deviation vanishes, or when the denominator vanishes
/// (which happens with the optimal complement exactly when ⟨C⟩ = 0).
pub fn amended_robertson_bound(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    orth: &PureState,
    sign: Sign,
) -> Result<AmendedBound> {
    check_dims(a.dim(), psi.dim())?;
    check_dims(psi.dim(), orth.dim())?;
    check_orthogonal(psi, orth)?;
    let pm = pair_moments(a, b, psi)?;
    if pm.var_a <= VAR_TOL || pm.var_b <= VAR_TOL {
        return Err(Error::ZeroDeviation);
    }
    let da = pm.var_a.sqrt();
    let db = pm.var_b.sqrt();
    let xi = scaled_chi_vector(a, b, psi, da, db, sign);
    let theta1 = inner(&xi, orth.amplitudes()).norm_sqr();
    let denominator = 1.0 - theta1 / 2.0;
    if denominator.abs() <= DEVIATION_TOL {
        return Err(Error::IndeterminateBound);
    }
    let numerator = -sign.value() * pm.exp_c / 2.0;
    Ok(AmendedBound {
        bound: numerator / denominator,
        theta1,
    })
}

/// (A/ΔA + sign*iB/ΔB)^dagger |psi⟩.
fn scaled_chi_vector(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    da: f64,
    db: f64,
    sign: Sign,
) -> Vec<Complex64> {
    let av = a.apply(psi.amplitudes());
    let bv = b.apply(psi.amplitudes());
    let factor = Complex64::new(0.0, -sign.value() / db);
    av.iter()
        .zip(&bv)
        .map(|(&x, &y)| x / da + factor * y)
        .collect()
}

/// Both sides of an identity and their absolute difference.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

fn check_basis(psi: &PureState, basis: &[PureState]) -> Result<()> {
    let mut all: Vec<&PureState> = Vec::with_capacity(basis.len() + 1);
    all.push(psi);
    all.extend(basis.iter());
    let mut residual: f64 = 0.0;
    for (i, u) in all.iter().enumerate() {
        check_dims(psi.dim(), u.dim())?;
        for v in all.iter().skip(i + 1) {
            residual = residual.max(u.overlap(v).norm());
        }
    }
    if residual > ORTHO_TOL {
        return Err(Error::NotOrthonormal(residual));
    }
    Ok(())
}

/// Exact sum identity over an orthonormal complement:
/// ΔA² + ΔB² = ±i⟨\[A,B\]⟩ + Σ_k |⟨psi|A ± iB|basis_k⟩|².
///
/// Holds for every orthonormal complement of `psi`; truncating the sum to one
/// term recovers the L1 bound.
pub fn sum_identity(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    basis: &[PureState],
    sign: Sign,
) -> Result<IdentityCheck> {
    check_dims(a.dim(), psi.dim())?;
    check_basis(psi, basis)?;
    let pm = pair_moments(a, b, psi)?;
    let lhs = pm.var_a + pm.var_b;
    let chi = chi_vector(a, b, psi, sign);
    let total: f64 = basis
        .iter()
        .map(|v| inner(&chi, v.amplitudes()).norm_sqr())
        .sum();
    let rhs = -sign.value() * pm.exp_c + total;
    Ok(IdentityCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

/// Exact product identity over an orthonormal complement:
/// ΔAΔB = ±(i/2)⟨\[A,B\]⟩ / (1 - (1/2) Σ_k |⟨psi|A/ΔA ± iB/ΔB|basis_k⟩|²).
///
/// Undefined on eigenstates and indeterminate when ⟨C⟩ = 0, where numerator
/// and denominator vanish together.
pub fn product_identity(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    basis: &[PureState],
    sign: Sign,
) -> Result<IdentityCheck> {
    check_dims(a.dim(), psi.dim())?;
    check_basis(psi, basis)?;
    let pm = pair_moments(a, b, psi)?;
    if pm.var_a <= VAR_TOL || pm.var_b <= VAR_TOL {
        return Err(Error::ZeroDeviation);
    }
    let da = pm.var_a.sqrt();
    let db = pm.var_b.sqrt();
    let xi = scaled_chi_vector(a, b, psi, da, db, sign);
    let total: f64 = basis
        .iter()
        .map(|v| inner(&xi, v.amplitudes()).norm_sqr())
        .sum();
    let denominator = 1.0 - total / 2.0;
    if denominator.abs() <= DEVIATION_TOL {
        return Err(Error::IndeterminateBound);
    }
    let rhs = (-sign.value() * pm.exp_c / 2.0) / denominator;
    let lhs = da * db;
    Ok(IdentityCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

/// Partial sums of the sum identity: element m keeps the first m overlap
/// terms. The sequence is nondecreasing and ends at ΔA² + ΔB².
pub fn hierarchy_bounds(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    basis: &[PureState],
    sign: Sign,
) -> Result<Vec<f64>> {
    check_dims(a.dim(), psi.dim())?;
    check_basis(psi, basis)?;
    let pm = pair_moments(a, b, psi)?;
    let chi = chi_vector(a, b, psi, sign);
    let mut acc = -sign.value() * pm.exp_c;
    let mut out = Vec::with_capacity(basis.len());
    for v in basis {
        acc += inner(&chi, v.amplitudes()).norm_sqr();
        out.push(acc);
    }
    Ok(out)
}

/// The orthogonal state that makes the L1 bound an equality: the normalized
/// projection of (A ∓ iB)|psi⟩ off |psi⟩.
///
/// Errors with [`Error::TrivialSaturation`] when the projection vanishes
/// (joint-eigenstate situations), where every complement already saturates.
pub fn optimal_orthogonal_state(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    sign: Sign,
) -> Result<PureState> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), psi.dim())?;
    let chi = chi_vector(a, b, psi, sign);
    project_off(psi, chi)
}

/// The analogous Θ1-optimal state for the amended Robertson bound: the
/// normalized projection of (A/ΔA ∓ iB/ΔB)|psi⟩ off |psi⟩.
pub fn theta1_optimal_state(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    sign: Sign,
) -> Result<PureState> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), psi.dim())?;
    let pm = pair_moments(a, b, psi)?;
    if pm.var_a <= VAR_TOL || pm.var_b <= VAR_TOL {
        return Err(Error::ZeroDeviation);
    }
    let xi = scaled_chi_vector(a, b, psi, pm.var_a.sqrt(), pm.var_b.sqrt(), sign);
    project_off(psi, xi)
}

fn project_off(psi: &PureState, vector: Vec<Complex64>) -> Result<PureState> {
    let overlap = inner(psi.amplitudes(), &vector);
    let mut projected: Vec<Complex64> = vector
        .iter()
        .zip(psi.amplitudes())
        .map(|(&v, &p)| v - overlap * p)
        .collect();
    let norm = vec_norm(&projected);
    if norm <= DEVIATION_TOL {
        return Err(Error::TrivialSaturation);
    }
    for z in projected.iter_mut() {
        *z /= norm;
    }
    fix_phase(&mut projected);
    PureState::new(projected)
}

/// The strengthened sum bound with the commutator/anticommutator phase.
#[derive(Debug, Clone, Copy)]
pub struct Theta3Bound {
    pub bound: f64,
    pub omega: f64,
    pub theta3: f64,
}

/// Phase-resolved strengthened sum bound:
/// ΔA² + ΔB² ≥ sqrt(⟨C⟩² + ⟨F⟩²) + Θ3 with
/// Θ3 = |⟨orth|(A + i e^{iω} B)|psi⟩|² and ω = atan2(⟨F⟩, ⟨C⟩).
///
/// The phase aligns the combination with the generalized intelligent-state
/// condition, so the full-complement sum closes the gap exactly; any single
/// orthogonal state therefore gives a valid bound and a qubit saturates it.
pub fn theta3_bound(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
    orth: &PureState,
) -> Result<Theta3Bound> {
    check_dims(a.dim(), psi.dim())?;
    check_dims(psi.dim(), orth.dim())?;
    check_orthogonal(psi, orth)?;
    let pm = pair_moments(a, b, psi)?;
    let radius = pm.exp_c.hypot(pm.exp_f);
    if pm.exp_c.abs() < 1e-12 && pm.exp_f.abs() < 1e-12 {
        return Err(Error::PhaseUndefined);
    }
    let omega = pm.exp_f.atan2(pm.exp_c);
    // |⟨orth|(A + i e^{iω} B)|psi⟩|²
    let av = a.apply(psi.amplitudes());
    let bv = b.apply(psi.amplitudes());
    let factor = Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, omega);
    let combined: Vec<Complex64> = av.iter().zip(&bv).map(|(&x, &y)| x + factor * y).collect();
    let theta3 = inner(orth.amplitudes(), &combined).norm_sqr();
    Ok(Theta3Bound {
        bound: radius + theta3,
        omega,
        theta3,
    })
}

/// A report entry that may be unavailable for a structural reason.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReportValue {
    Value(f64),
    /// An observable has vanishing deviation on the state.
    ZeroDeviation,
    /// Numerator and denominator vanish together (⟨C⟩ = 0).
    Indeterminate,
    /// Both ⟨C⟩ and ⟨F⟩ vanish; no phase can be assigned.
    PhaseUndefined,
}

impl ReportValue {
    pub fn value(self) -> Option<f64> {
        match self {
            ReportValue::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn status(&self) -> Option<&'static str> {
        match self {
            ReportValue::Value(_) => None,
            ReportValue::ZeroDeviation => Some("undefined: zero deviation"),
            ReportValue::Indeterminate => Some("indeterminate: commutator expectation vanishes"),
            ReportValue::PhaseUndefined => Some("undefined: phase"),
        }
    }

    fn from_result(r: Result<f64>) -> Result<Self> {
        match r {
            Ok(v) => Ok(ReportValue::Value(v)),
            Err(Error::ZeroDeviation) | Err(Error::DegenerateDecomposition(_)) => {
                Ok(ReportValue::ZeroDeviation)
            }
            Err(Error::IndeterminateBound) => Ok(ReportValue::Indeterminate),
            Err(Error::PhaseUndefined) => Ok(ReportValue::PhaseUndefined),
            Err(e) => Err(e),
        }
    }
}

/// Every variance, bound, and deviation measure for one (A, B, state) triple.
///
/// The L1 and amended-Robertson entries are evaluated with their per-sign
/// optimal complements, so away from degeneracies they reproduce the sum and
/// product of variances exactly; the residual information lives in the theta
/// fields, which measure how far the state is from saturating the Robertson
/// bound (theta1), the plain sum bound (theta2), and the phase-resolved
/// bound (theta3).
#[derive(Debug, Clone)]
pub struct UncertaintyReport {
    pub pair: PairMoments,
    /// W = ΔA² + ΔB²
    pub sum_w: f64,
    /// U = ΔA²ΔB²
    pub prod_u: f64,
    /// (⟨C⟩/2)², the Robertson bound on U.
    pub rur: f64,
    /// ⟨C⟩²/4 + ⟨F⟩²/4, the Schrödinger bound on U.
    pub sur_bound: f64,
    /// U - sur_bound, the nonnegative Schrödinger remainder.
    pub upsilon: f64,
    pub l1_plus: ReportValue,
    pub l1_minus: ReportValue,
    pub l2: f64,
    pub l3: f64,
    /// max{L2, L3}, finite whenever the state is not a joint eigenstate.
    pub l2_prime: f64,
    pub amended_rur_plus: ReportValue,
    pub amended_rur_minus: ReportValue,
    /// 2 - |⟨C⟩|/(ΔAΔB): distance from Robertson saturation.
    pub theta1: ReportValue,
    /// W - |⟨C⟩|: distance from sum-bound saturation.
    pub theta2: f64,
    /// W - sqrt(⟨C⟩² + ⟨F⟩²): distance from phase-resolved saturation.
    pub theta3: ReportValue,
}

/// Assemble the full [`UncertaintyReport`].
pub fn uncertainty_report(
    a: &Observable,
    b: &Observable,
    psi: &PureState,
) -> Result<UncertaintyReport> {
    let pm = pair_moments(a, b, psi)?;
    let sum_w = pm.var_a + pm.var_b;
    let prod_u = pm.var_a * pm.var_b;
    let rur = (pm.exp_c / 2.0).powi(2);
    let sur_bound = rur + (pm.exp_f / 2.0).powi(2);
    let upsilon = prod_u - sur_bound;

    // When the projected vector behind the optimal complement vanishes, the
    // overlap term is zero for every complement and the bound value is still
    // well defined; fall back to the zero-overlap expression in that case.
    let l1_for = |sign: Sign| -> Result<f64> {
        match optimal_orthogonal_state(a, b, psi, sign) {
            Ok(orth) => sum_bound_l1(a, b, psi, &orth, sign),
            Err(Error::TrivialSaturation) => Ok(-sign.value() * pm.exp_c),
            Err(e) => Err(e),
        }
    };
    let amended_for = |sign: Sign| -> Result<f64> {
        match theta1_optimal_state(a, b, psi, sign) {
            Ok(orth) => Ok(amended_robertson_bound(a, b, psi, &orth, sign)?.bound),
            Err(Error::TrivialSaturation) => Ok(-sign.value() * pm.exp_c / 2.0),
            Err(e) => Err(e),
        }
    };

    let l2 = sum_bound_l2(a, b, psi)?;
    let l3 = sum_bound_l3(a, b, psi)?;

    let deviations_ok = pm.var_a > VAR_TOL && pm.var_b > VAR_TOL;
    let theta1 = if deviations_ok {
        ReportValue::Value(2.0 - pm.exp_c.abs() / (pm.var_a.sqrt() * pm.var_b.sqrt()))
    } else {
        ReportValue::ZeroDeviation
    };
    let radius = pm.exp_c.hypot(pm.exp_f);
    let theta3 = if radius > 1e-12 {
        ReportValue::Value(sum_w - radius)
    } else {
        ReportValue::PhaseUndefined
    };

    Ok(UncertaintyReport {
        pair: pm,
        sum_w,
        prod_u,
        rur,
        sur_bound,
        upsilon,
        l1_plus: ReportValue::from_result(l1_for(Sign::Plus))?,
        l1_minus: ReportValue::from_result(l1_for(Sign::Minus))?,
        l2,
        l3,
        l2_prime: l2.max(l3),
        amended_rur_plus: ReportValue::from_result(amended_for(Sign::Plus))?,
        amended_rur_minus: ReportValue::from_result(amended_for(Sign::Minus))?,
        theta1,
        theta2: sum_w - pm.exp_c.abs(),
        theta3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{complement_basis, sample_observable, sample_state, derive_seed};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> Observable {
        Observable::new(
            ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]])
                .unwrap(),
        )
        .unwrap()
    }

    fn pauli_y() -> Observable {
        Observable::new(
            ComplexMatrix::from_rows(&[vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]])
                .unwrap(),
        )
        .unwrap()
    }

    fn pauli_z() -> Observable {
        Observable::new(
            ComplexMatrix::from_rows(&[vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(-1., 0.)]])
                .unwrap(),
        )
        .unwrap()
    }

    fn ket0() -> PureState {
        PureState::basis_state(2, 0)
    }

    fn ket1() -> PureState {
        PureState::basis_state(2, 1)
    }

    fn ket_plus() -> PureState {
        let s = 1.0 / 2.0f64.sqrt();
        PureState::new(vec![c(s, 0.), c(s, 0.)]).unwrap()
    }

    /// Equatorial state (|0> + e^{i pi/4}|1>)/sqrt(2): <C> = 2<sz> = 0 for the
    /// (sx, sy) pair while neither deviation vanishes.
    fn ket_equatorial() -> PureState {
        let s = 1.0 / 2.0f64.sqrt();
        let phase = Complex64::from_polar(s, std::f64::consts::FRAC_PI_4);
        PureState::new(vec![c(s, 0.), phase]).unwrap()
    }

    #[test]
    fn moments_on_eigenstate() {
        let m = moments(&pauli_z(), &ket0()).unwrap();
        assert!((m.mean - 1.0).abs() < 1e-14);
        assert!(m.variance < 1e-14);
    }

    #[test]
    fn moments_of_x_on_ket0() {
        let m = moments(&pauli_x(), &ket0()).unwrap();
        assert!(m.mean.abs() < 1e-14);
        assert!((m.variance - 1.0).abs() < 1e-14);
    }

    #[test]
    fn moments_match_direct_summation() {
        // independent elementwise-summation oracle
        let d = 6;
        let o = sample_observable(11, d);
        let psi = sample_state(12, d);
        let m = moments(&o, &psi).unwrap();

        let a = psi.amplitudes();
        let mut mean = c(0., 0.);
        for i in 0..d {
            for j in 0..d {
                mean += a[i].conj() * o.matrix().get(i, j) * a[j];
            }
        }
        let mut second = c(0., 0.);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    second += a[i].conj() * o.matrix().get(i, k) * o.matrix().get(k, j) * a[j];
                }
            }
        }
        assert!((m.mean - mean.re).abs() < 1e-12);
        assert!((m.variance - (second.re - mean.re * mean.re)).abs() < 1e-12);
    }

    #[test]
    fn moments_dimension_mismatch() {
        let r = moments(&pauli_x(), &PureState::basis_state(3, 0));
        assert!(matches!(r, Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn pair_moments_on_complementary_pair() {
        // C = -i[sx, sy] = 2 sz
        let pm = pair_moments(&pauli_x(), &pauli_y(), &ket0()).unwrap();
        assert!((pm.var_a - 1.0).abs() < 1e-14);
        assert!((pm.var_b - 1.0).abs() < 1e-14);
        assert!((pm.exp_c - 2.0).abs() < 1e-14);
        assert!(pm.exp_f.abs() < 1e-14);
    }

    #[test]
    fn self_commutator_vanishes() {
        let psi = sample_state(5, 2);
        let pm = pair_moments(&pauli_x(), &pauli_x(), &psi).unwrap();
        assert!(pm.exp_c.abs() < 1e-14);
    }

    #[test]
    fn swap_flips_commutator_keeps_anticommutator() {
        let d = 4;
        let a = sample_observable(21, d);
        let b = sample_observable(22, d);
        let psi = sample_state(23, d);
        let ab = pair_moments(&a, &b, &psi).unwrap();
        let ba = pair_moments(&b, &a, &psi).unwrap();
        assert!((ab.exp_c + ba.exp_c).abs() < 1e-12);
        assert!((ab.exp_f - ba.exp_f).abs() < 1e-12);
    }

    #[test]
    fn vaidman_on_x_and_ket0() {
        let v = vaidman_decompose(&pauli_x(), &ket0()).unwrap();
        assert!(v.mean.abs() < 1e-14);
        assert!((v.deviation - 1.0).abs() < 1e-14);
        assert!((v.orth.amplitudes()[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vaidman_rejects_eigenstate() {
        let r = vaidman_decompose(&pauli_z(), &ket0());
        assert!(matches!(r, Err(Error::DegenerateDecomposition(_))));
    }

    #[test]
    fn vaidman_reconstructs() {
        let d = 5;
        let o = sample_observable(31, d);
        let psi = sample_state(32, d);
        let v = vaidman_decompose(&o, &psi).unwrap();
        let applied = o.apply(psi.amplitudes());
        for ((&app, &p), &orth) in applied
            .iter()
            .zip(psi.amplitudes())
            .zip(v.orth.amplitudes())
        {
            let rebuilt = c(v.mean, 0.0) * p + c(v.deviation, 0.0) * orth;
            assert!((app - rebuilt).norm() < 1e-10);
        }
        assert!(psi.overlap(&v.orth).norm() < 1e-10);
    }

    #[test]
    fn l1_on_complementary_pair() {
        let plus = sum_bound_l1(&pauli_x(), &pauli_y(), &ket0(), &ket1(), Sign::Plus).unwrap();
        let minus = sum_bound_l1(&pauli_x(), &pauli_y(), &ket0(), &ket1(), Sign::Minus).unwrap();
        assert!((plus - 2.0).abs() < 1e-14);
        assert!((minus - 2.0).abs() < 1e-14);
    }

    #[test]
    fn l1_both_signs_and_maximum() {
        let psi = sample_state(44, 3);
        let a = sample_observable(45, 3);
        let b = sample_observable(46, 3);
        let orth = &complement_basis(&psi)[0];
        let both = sum_bound_l1_both(&a, &b, &psi, orth).unwrap();
        assert_eq!(both.plus, sum_bound_l1(&a, &b, &psi, orth, Sign::Plus).unwrap());
        assert_eq!(both.minus, sum_bound_l1(&a, &b, &psi, orth, Sign::Minus).unwrap());
        assert_eq!(both.max(), both.plus.max(both.minus));
    }

    #[test]
    fn l1_requires_orthogonality() {
        let r = sum_bound_l1(&pauli_x(), &pauli_y(), &ket0(), &ket0(), Sign::Plus);
        assert!(matches!(r, Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn l1_never_exceeds_sum_of_variances() {
        for trial in 0..200u64 {
            let d = 2 + (trial % 4) as usize;
            let a = sample_observable(derive_seed(&[1, trial]), d);
            let b = sample_observable(derive_seed(&[2, trial]), d);
            let psi = sample_state(derive_seed(&[3, trial]), d);
            let basis = complement_basis(&psi);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let w = pm.var_a + pm.var_b;
            for sign in Sign::BOTH {
                let l1 = sum_bound_l1(&a, &b, &psi, &basis[0], sign).unwrap();
                assert!(l1 <= w + 1e-10, "L1 {l1} exceeds W {w}");
            }
        }
    }

    #[test]
    fn l2_l3_on_complementary_pair() {
        let l2 = sum_bound_l2(&pauli_x(), &pauli_y(), &ket0()).unwrap();
        let l3 = sum_bound_l3(&pauli_x(), &pauli_y(), &ket0()).unwrap();
        assert!((l2 - 1.0).abs() < 1e-14);
        assert!((l3 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn l2_vanishes_on_sum_eigenstate() {
        // |0> is an eigenstate of sx + sx? no; use A = B = sz so A+B = 2 sz
        let l2 = sum_bound_l2(&pauli_z(), &pauli_z(), &ket0()).unwrap();
        assert!(l2 < 1e-14);
    }

    #[test]
    fn parallelogram_identity() {
        for trial in 0..100u64 {
            let d = 2 + (trial % 5) as usize;
            let a = sample_observable(derive_seed(&[4, trial]), d);
            let b = sample_observable(derive_seed(&[5, trial]), d);
            let psi = sample_state(derive_seed(&[6, trial]), d);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let w = pm.var_a + pm.var_b;
            let l2 = sum_bound_l2(&a, &b, &psi).unwrap();
            let l3 = sum_bound_l3(&a, &b, &psi).unwrap();
            assert!((l2 + l3 - w).abs() <= 1e-10);
        }
    }

    #[test]
    fn amended_bound_on_complementary_pair() {
        for sign in Sign::BOTH {
            let r = amended_robertson_bound(&pauli_x(), &pauli_y(), &ket0(), &ket1(), sign).unwrap();
            assert!((r.bound - 1.0).abs() < 1e-12, "sign {sign:?}");
        }
    }

    #[test]
    fn amended_bound_never_exceeds_product_with_canonical_sign() {
        for trial in 0..200u64 {
            let d = 2 + (trial % 4) as usize;
            let a = sample_observable(derive_seed(&[7, trial]), d);
            let b = sample_observable(derive_seed(&[8, trial]), d);
            let psi = sample_state(derive_seed(&[9, trial]), d);
            let basis = complement_basis(&psi);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let sign = if pm.exp_c > 0.0 { Sign::Minus } else { Sign::Plus };
            match amended_robertson_bound(&a, &b, &psi, &basis[0], sign) {
                Ok(r) => {
                    let prod = (pm.var_a * pm.var_b).sqrt();
                    assert!(r.bound <= prod + 1e-10);
                }
                Err(Error::IndeterminateBound) | Err(Error::ZeroDeviation) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn amended_bound_indeterminate_when_commutator_vanishes() {
        // <C> = 0 here, so the optimal complement makes 1 - theta1/2 vanish
        let psi = ket_equatorial();
        let orth = theta1_optimal_state(&pauli_x(), &pauli_y(), &psi, Sign::Plus).unwrap();
        let r = amended_robertson_bound(&pauli_x(), &pauli_y(), &psi, &orth, Sign::Plus);
        assert!(matches!(r, Err(Error::IndeterminateBound)));
    }

    #[test]
    fn amended_bound_rejects_eigenstate() {
        // |+> is an eigenstate of sx, so the deviation gate fires first
        let orth = complement_basis(&ket_plus()).remove(0);
        let r = amended_robertson_bound(&pauli_x(), &pauli_y(), &ket_plus(), &orth, Sign::Plus);
        assert!(matches!(r, Err(Error::ZeroDeviation)));
    }

    #[test]
    fn sum_identity_on_qubit() {
        let check = sum_identity(&pauli_x(), &pauli_y(), &ket0(), &[ket1()], Sign::Plus).unwrap();
        assert!((check.lhs - 2.0).abs() < 1e-14);
        assert!((check.rhs - 2.0).abs() < 1e-14);
    }

    #[test]
    fn sum_identity_random_and_basis_independent() {
        for trial in 0..50u64 {
            let d = 8;
            let a = sample_observable(derive_seed(&[10, trial]), d);
            let b = sample_observable(derive_seed(&[11, trial]), d);
            let psi = sample_state(derive_seed(&[12, trial]), d);
            let basis = complement_basis(&psi);
            for sign in Sign::BOTH {
                let check = sum_identity(&a, &b, &psi, &basis, sign).unwrap();
                assert!(check.residual <= 1e-9, "residual {}", check.residual);
            }
            // a rotated complement gives the same total
            let rotated = rotate_basis(&basis);
            let r1 = sum_identity(&a, &b, &psi, &basis, Sign::Plus).unwrap();
            let r2 = sum_identity(&a, &b, &psi, &rotated, Sign::Plus).unwrap();
            assert!((r1.rhs - r2.rhs).abs() <= 1e-9);
        }
    }

    fn rotate_basis(basis: &[PureState]) -> Vec<PureState> {
        // mix the first two complement vectors by a Hadamard-style rotation
        let mut out: Vec<PureState> = basis.to_vec();
        if basis.len() >= 2 {
            let s = 1.0 / 2.0f64.sqrt();
            let u = basis[0].amplitudes();
            let v = basis[1].amplitudes();
            let w1: Vec<Complex64> = u.iter().zip(v).map(|(&x, &y)| (x + y) * s).collect();
            let w2: Vec<Complex64> = u.iter().zip(v).map(|(&x, &y)| (x - y) * s).collect();
            out[0] = PureState::new(w1).unwrap();
            out[1] = PureState::new(w2).unwrap();
        }
        out
    }

    #[test]
    fn sum_identity_rejects_bad_basis() {
        let r = sum_identity(&pauli_x(), &pauli_y(), &ket0(), &[ket0()], Sign::Plus);
        assert!(matches!(r, Err(Error::NotOrthonormal(_))));
    }

    #[test]
    fn product_identity_on_qubit() {
        let check =
            product_identity(&pauli_x(), &pauli_y(), &ket0(), &[ket1()], Sign::Plus).unwrap();
        assert!((check.lhs - 1.0).abs() < 1e-14);
        assert!((check.rhs - 1.0).abs() < 1e-14);
    }

    #[test]
    fn product_identity_random() {
        for trial in 0..50u64 {
            let d = 8;
            let a = sample_observable(derive_seed(&[13, trial]), d);
            let b = sample_observable(derive_seed(&[14, trial]), d);
            let psi = sample_state(derive_seed(&[15, trial]), d);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            if pm.exp_c.abs() <= 1e-6 {
                continue;
            }
            let basis = complement_basis(&psi);
            for sign in Sign::BOTH {
                let check = product_identity(&a, &b, &psi, &basis, sign).unwrap();
                assert!(check.residual <= 1e-9, "residual {}", check.residual);
            }
        }
    }

    #[test]
    fn product_identity_indeterminate_when_commutator_vanishes() {
        let psi = ket_equatorial();
        let basis = complement_basis(&psi);
        let r = product_identity(&pauli_x(), &pauli_y(), &psi, &basis, Sign::Plus);
        assert!(matches!(r, Err(Error::IndeterminateBound)));
    }

    #[test]
    fn hierarchy_single_element_in_dim_two() {
        let h = hierarchy_bounds(&pauli_x(), &pauli_y(), &ket0(), &[ket1()], Sign::Plus).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hierarchy_monotone_and_converges() {
        for trial in 0..50u64 {
            let d = 6;
            let a = sample_observable(derive_seed(&[16, trial]), d);
            let b = sample_observable(derive_seed(&[17, trial]), d);
            let psi = sample_state(derive_seed(&[18, trial]), d);
            let basis = complement_basis(&psi);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let w = pm.var_a + pm.var_b;
            for sign in Sign::BOTH {
                let h = hierarchy_bounds(&a, &b, &psi, &basis, sign).unwrap();
                for pair in h.windows(2) {
                    assert!(pair[1] >= pair[0] - 1e-12);
                }
                for &v in &h {
                    assert!(v <= w + 1e-10);
                }
                assert!((h.last().unwrap() - w).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn optimal_state_on_complementary_pair() {
        let orth = optimal_orthogonal_state(&pauli_x(), &pauli_y(), &ket0(), Sign::Plus).unwrap();
        assert!(orth.amplitudes()[0].norm() < 1e-12);
        assert!((orth.amplitudes()[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn optimal_state_saturates_l1() {
        for trial in 0..50u64 {
            let d = 5;
            let a = sample_observable(derive_seed(&[19, trial]), d);
            let b = sample_observable(derive_seed(&[20, trial]), d);
            let psi = sample_state(derive_seed(&[21, trial]), d);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let w = pm.var_a + pm.var_b;
            for sign in Sign::BOTH {
                let orth = optimal_orthogonal_state(&a, &b, &psi, sign).unwrap();
                assert!(psi.overlap(&orth).norm() <= 1e-10);
                let l1 = sum_bound_l1(&a, &b, &psi, &orth, sign).unwrap();
                assert!((l1 - w).abs() <= 1e-9, "gap {}", (l1 - w).abs());
            }
        }
    }

    #[test]
    fn theta1_optimal_state_saturates_amended_bound() {
        for trial in 0..50u64 {
            let d = 5;
            let a = sample_observable(derive_seed(&[22, trial]), d);
            let b = sample_observable(derive_seed(&[23, trial]), d);
            let psi = sample_state(derive_seed(&[24, trial]), d);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            if pm.exp_c.abs() <= 1e-6 {
                continue;
            }
            let prod = (pm.var_a * pm.var_b).sqrt();
            for sign in Sign::BOTH {
                let orth = theta1_optimal_state(&a, &b, &psi, sign).unwrap();
                let r = amended_robertson_bound(&a, &b, &psi, &orth, sign).unwrap();
                assert!((r.bound - prod).abs() <= 1e-9, "gap {}", (r.bound - prod).abs());
            }
        }
    }

    #[test]
    fn theta3_on_complementary_pair() {
        let r = theta3_bound(&pauli_x(), &pauli_y(), &ket0(), &ket1()).unwrap();
        assert!(r.omega.abs() < 1e-14);
        assert!((r.bound - 2.0).abs() < 1e-12);
    }

    #[test]
    fn theta3_saturates_on_qubits() {
        for trial in 0..100u64 {
            let a = sample_observable(derive_seed(&[25, trial]), 2);
            let b = sample_observable(derive_seed(&[26, trial]), 2);
            let psi = sample_state(derive_seed(&[27, trial]), 2);
            let basis = complement_basis(&psi);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let w = pm.var_a + pm.var_b;
            match theta3_bound(&a, &b, &psi, &basis[0]) {
                Ok(r) => assert!((r.bound - w).abs() <= 1e-9, "gap {}", (r.bound - w).abs()),
                Err(Error::PhaseUndefined) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn theta3_bounded_by_sum_in_any_dimension() {
        for trial in 0..100u64 {
            let d = 2 + (trial % 5) as usize;
            let a = sample_observable(derive_seed(&[28, trial]), d);
            let b = sample_observable(derive_seed(&[29, trial]), d);
            let psi = sample_state(derive_seed(&[30, trial]), d);
            let basis = complement_basis(&psi);
            let pm = pair_moments(&a, &b, &psi).unwrap();
            let w = pm.var_a + pm.var_b;
            if let Ok(r) = theta3_bound(&a, &b, &psi, &basis[0]) {
                assert!(r.bound <= w + 1e-9);
            }
        }
    }

    #[test]
    fn theta3_rejects_vanishing_phase() {
        // A = B = sz on an eigenstate: <C> = 0 and the centered <F> = 0 too
        let r = theta3_bound(&pauli_z(), &pauli_z(), &ket0(), &ket1());
        assert!(matches!(r, Err(Error::PhaseUndefined)));
    }

    #[test]
    fn report_on_complementary_pair() {
        let rep = uncertainty_report(&pauli_x(), &pauli_y(), &ket0()).unwrap();
        assert!((rep.sum_w - 2.0).abs() < 1e-14);
        assert!((rep.prod_u - 1.0).abs() < 1e-14);
        assert!((rep.rur - 1.0).abs() < 1e-14);
        assert_eq!(rep.l1_plus, ReportValue::Value(2.0));
        assert!((rep.l2 - 1.0).abs() < 1e-14);
        assert!((rep.l3 - 1.0).abs() < 1e-14);
        assert!((rep.theta2 - 0.0).abs() < 1e-14);
        match rep.amended_rur_minus {
            ReportValue::Value(v) => assert!((v - 1.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn report_on_commuting_pair_is_indeterminate() {
        let psi = sample_state(77, 2);
        let rep = uncertainty_report(&pauli_x(), &pauli_x(), &psi).unwrap();
        assert!(rep.pair.exp_c.abs() < 1e-12);
        assert!(matches!(
            rep.amended_rur_plus,
            ReportValue::Indeterminate | ReportValue::ZeroDeviation
        ));
    }

    #[test]
    fn report_chain_invariants() {
        for trial in 0..100u64 {
            let d = 2 + (trial % 5) as usize;
            let a = sample_observable(derive_seed(&[31, trial]), d);
            let b = sample_observable(derive_seed(&[32, trial]), d);
            let psi = sample_state(derive_seed(&[33, trial]), d);
            let rep = uncertainty_report(&a, &b, &psi).unwrap();
            assert!(rep.upsilon >= -1e-10);
            assert!(rep.prod_u >= rep.sur_bound - 1e-10);
            assert!(rep.sur_bound >= rep.rur - 1e-10);
            assert!(rep.sum_w >= 2.0 * rep.prod_u.sqrt() - 1e-10);
            assert!(2.0 * rep.prod_u.sqrt() >= rep.pair.exp_c.abs() - 1e-10);
            assert!((rep.l2 + rep.l3 - rep.sum_w).abs() <= 1e-10);
        }
    }
}
