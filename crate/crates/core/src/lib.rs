//! Finite-dimensional numerics for variance-based quantum uncertainty
//! relations: exact sum/product identities over orthonormal complements,
//! the Robertson, Schrödinger, and Maccone-Pati bounds, intelligent-state
//! classification and solving, Bloch-sphere closed forms for qubits, and
//! collective-spin squeezing parameters with the quantum Fisher information
//! sensitivity chain.
//!
//! ```
//! use qvar_core::hilbert::{complement_basis, sample_observable, sample_state};
//! use qvar_core::relations::{sum_identity, uncertainty_report, Sign};
//!
//! let a = sample_observable(1, 8);
//! let b = sample_observable(2, 8);
//! let psi = sample_state(3, 8);
//!
//! // the sum of variances equals the commutator term plus the overlaps
//! // with any orthonormal complement of the state
//! let basis = complement_basis(&psi);
//! let check = sum_identity(&a, &b, &psi, &basis, Sign::Plus)?;
//! assert!(check.residual < 1e-9);
//!
//! let report = uncertainty_report(&a, &b, &psi)?;
//! assert!(report.upsilon >= -1e-10);
//! assert!(report.sum_w >= 2.0 * report.prod_u.sqrt() - 1e-10);
//! # Ok::<(), qvar_core::Error>(())
//! ```

pub mod error;
pub mod hilbert;
pub mod intelligent;
pub mod qubit;
pub mod relations;
pub mod spin;

pub use error::{Error, Result};
pub use hilbert::{
    complement_basis, general_eigen, hermitian_eigen, sample_observable, sample_state,
    ComplexMatrix, DensityState, EigenDecomposition, Observable, PureState,
};
pub use relations::{uncertainty_report, Sign, UncertaintyReport};
