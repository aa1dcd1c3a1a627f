//! Intelligent-state machinery: the gamma parameter of the saturation
//! eigenproblem, residual-based classification of states, and the solver
//! that finds intelligent states as eigenvectors of A + i*gamma*B.
//!
//! A state saturating the Robertson relation (an ordinary intelligent state,
//! OIS) or the Schrödinger relation (a generalized one, GIS) annihilates
//! the centered combination (A - ⟨A⟩) + i*gamma*(B - ⟨B⟩); gamma is fixed by
//! the moments, so classification takes no free parameter.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{general_eigen, vec_norm, ComplexMatrix, Observable, PureState};
use crate::relations::{pair_moments, PairMoments};

const VAR_TOL: f64 = 1e-12;
const GIS_TOL: f64 = 1e-8;
const DEVIATION_TOL: f64 = 1e-10;

/// The saturation parameter gamma = (⟨C⟩ + i⟨F⟩)/(2ΔB²) and the eigenvalue
/// lambda = ⟨A⟩ + i*gamma*⟨B⟩ it pairs with.
#[derive(Debug, Clone, Copy)]
pub struct GisParameter {
    pub gamma: Complex64,
    pub lambda: Complex64,
    /// | |gamma|² - ΔA²/ΔB² |; zero on true intelligent states.
    pub magnitude_check: f64,
}

/// Compute gamma from the pair moments. Errors when the state is an
/// eigenstate of B, where the formula divides by zero.
pub fn gis_parameter(a: &Observable, b: &Observable, psi: &PureState) -> Result<GisParameter> {
    let pm = pair_moments(a, b, psi)?;
    gis_parameter_from_moments(&pm)
}

fn gis_parameter_from_moments(pm: &PairMoments) -> Result<GisParameter> {
    if pm.var_b <= VAR_TOL {
        return Err(Error::EigenstateOfB);
    }
    let gamma = Complex64::new(pm.exp_c, pm.exp_f) / (2.0 * pm.var_b);
    let lambda = Complex64::new(pm.mean_a, 0.0) + gamma * Complex64::new(0.0, pm.mean_b);
    let magnitude_check = if pm.var_a > VAR_TOL {
        (gamma.norm_sqr() - pm.var_a / pm.var_b).abs()
    } else {
        gamma.norm_sqr()
    };
    Ok(GisParameter {
        gamma,
        lambda,
        magnitude_check,
    })
}

/// Residual diagnostics for one state against one observable pair.
///
/// Fields that divide by a vanishing deviation are `None` ("undefined")
/// instead of failing the whole classification; the sum-critical residual
/// needs no deviations and is always present.
#[derive(Debug, Clone, Copy)]
pub struct StateClassification {
    /// ||(A - ⟨A⟩ + i gamma (B - ⟨B⟩)) psi||, gamma recomputed from moments.
    pub gis_residual: Option<f64>,
    pub is_gis: Option<bool>,
    /// GIS with real gamma (|Im gamma| ≤ 1e-8).
    pub is_ois: Option<bool>,
    /// ||(Ă²/ΔA² + B̆²/ΔB² - 2) psi||, the product-critical condition.
    pub critical_product_residual: Option<f64>,
    /// ||(Ă² + B̆²) psi - (ΔA² + ΔB²) psi||, the sum-critical condition.
    pub critical_sum_residual: f64,
}

/// Classify a state: intelligent-state residual plus the two critical-state
/// residuals for the product and sum functionals.
pub fn classify_state(a: &Observable, b: &Observable, psi: &PureState) -> Result<StateClassification> {
    let pm = pair_moments(a, b, psi)?;
    let centered_a = centered(a, pm.mean_a);
    let centered_b = centered(b, pm.mean_b);
    let ca_psi = centered_a.matvec(psi.amplitudes());
    let cb_psi = centered_b.matvec(psi.amplitudes());

    let gis_residual = match gis_parameter_from_moments(&pm) {
        Ok(p) => {
            let combo: Vec<Complex64> = ca_psi
                .iter()
                .zip(&cb_psi)
                .map(|(&x, &y)| x + Complex64::new(0.0, 1.0) * p.gamma * y)
                .collect();
            Some((vec_norm(&combo), p.gamma))
        }
        Err(Error::EigenstateOfB) => None,
        Err(e) => return Err(e),
    };

    let ca2_psi = centered_a.matvec(&ca_psi);
    let cb2_psi = centered_b.matvec(&cb_psi);

    // (Ă² + B̆²) psi - (ΔA² + ΔB²) psi
    let w = pm.var_a + pm.var_b;
    let sum_vec: Vec<Complex64> = ca2_psi
        .iter()
        .zip(&cb2_psi)
        .zip(psi.amplitudes())
        .map(|((&x, &y), &p)| x + y - Complex64::new(w, 0.0) * p)
        .collect();
    let critical_sum_residual = vec_norm(&sum_vec);

    let critical_product_residual = if pm.var_a > VAR_TOL && pm.var_b > VAR_TOL {
        let prod_vec: Vec<Complex64> = ca2_psi
            .iter()
            .zip(&cb2_psi)
            .zip(psi.amplitudes())
            .map(|((&x, &y), &p)| x / pm.var_a + y / pm.var_b - 2.0 * p)
            .collect();
        Some(vec_norm(&prod_vec))
    } else {
        None
    };

    let (gis_residual, is_gis, is_ois) = match gis_residual {
        Some((r, gamma)) => {
            let gis = r <= GIS_TOL;
            (Some(r), Some(gis), Some(gis && gamma.im.abs() <= GIS_TOL))
        }
        None => (None, None, None),
    };

    Ok(StateClassification {
        gis_residual,
        is_gis,
        is_ois,
        critical_product_residual,
        critical_sum_residual,
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

/// One state returned by the intelligent-state solver.
#[derive(Debug, Clone)]
pub struct IntelligentState {
    pub state: PureState,
    pub eigenvalue: Complex64,
    /// Eigenpair residual ||(A + i gamma B) psi - lambda psi||.
    pub residual: f64,
    pub classification: StateClassification,
    /// | ΔA/ΔB - |gamma| |; `None` when a deviation is below 1e-10, as for
    /// joint eigenstates.
    pub deviation_ratio_check: Option<f64>,
}

/// Find intelligent-state candidates as eigenvectors of A + i*gamma*B.
///
/// Real gamma targets Robertson saturation; a complex gamma runs the same
/// eigenproblem for Schrödinger saturation. Defective combinations (the
/// nilpotent A + iB of a complementary qubit pair, say) return fewer states
/// than the dimension.
pub fn solve_intelligent_states(
    a: &Observable,
    b: &Observable,
    gamma: Complex64,
) -> Result<Vec<IntelligentState>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let combo = a
        .matrix()
        .add(&b.matrix().scaled(Complex64::new(0.0, 1.0) * gamma));
    let eig = general_eigen(&combo)?;

    let mut out = Vec::with_capacity(eig.vectors.len());
    for (k, vec) in eig.vectors.iter().enumerate() {
        let state = PureState::new(vec.clone())?;
        let pm = pair_moments(a, b, &state)?;
        let deviation_ratio_check =
            if pm.var_a.sqrt() < DEVIATION_TOL || pm.var_b.sqrt() < DEVIATION_TOL {
                None
            } else {
                Some(((pm.var_a / pm.var_b).sqrt() - gamma.norm()).abs())
            };
        let classification = classify_state(a, b, &state)?;
        out.push(IntelligentState {
            state,
            eigenvalue: eig.values[k],
            residual: eig.residuals[k],
            classification,
            deviation_ratio_check,
        });
    }
    Ok(out)
}
