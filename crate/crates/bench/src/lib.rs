//! Shared fixtures for the benchmark targets.

use qvar_core::hilbert::{derive_seed, sample_observable, sample_state};
use qvar_core::{Observable, PureState};

/// A deterministic (A, B, psi) triple at the given dimension.
pub fn fixture(dim: usize) -> (Observable, Observable, PureState) {
    (
        sample_observable(derive_seed(&[90, dim as u64, 1]), dim),
        sample_observable(derive_seed(&[90, dim as u64, 2]), dim),
        sample_state(derive_seed(&[90, dim as u64, 3]), dim),
    )
}
