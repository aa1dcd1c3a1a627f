use thiserror::Error;

use crate::hilbert::MAX_DIM;

/// Errors surfaced by the operator, relation, and spin layers.
///
/// Degeneracies (vanishing deviations, vanishing denominators) are typed
/// errors rather than silent zeros: the bounds they guard are only defined
/// away from those points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("size limit: dimension {0} exceeds {MAX_DIM}")]
    SizeLimit(usize),
    #[error("matrix is not Hermitian: residual {0:.3e}")]
    NotHermitian(f64),
    #[error("state is not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("density matrix has eigenvalue {0:.3e} below zero")]
    NotPositive(f64),
    #[error("density matrix trace differs from one by {0:.3e}")]
    TraceNotOne(f64),
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("degenerate decomposition: deviation {0:.3e} vanishes")]
    DegenerateDecomposition(f64),
    #[error("state is not orthogonal to the reference state: overlap {0:.3e}")]
    NotOrthogonal(f64),
    #[error("non-orthonormal basis: Gram residual {0:.3e}")]
    NotOrthonormal(f64),
    #[error("undefined: zero deviation")]
    ZeroDeviation,
    #[error("indeterminate bound: numerator and denominator both vanish")]
    IndeterminateBound,
    #[error("phase undefined: commutator and anticommutator expectations both vanish")]
    PhaseUndefined,
    #[error("state saturates trivially: projected vector has vanishing norm")]
    TrivialSaturation,
    #[error("state is an eigenstate of B: gamma parameter undefined")]
    EigenstateOfB,
    #[error("imaginary residue {0:.3e} on an analytically real quantity")]
    ImaginaryResidue(f64),
    #[error("degenerate pair: A + B has vanishing scale, A - B carries everything")]
    DegeneratePair,
    #[error("particle number {0} out of range [1, 63]")]
    ParticleNumber(usize),
    #[error("frame is not orthonormal: residual {0:.3e}")]
    FrameNotOrthonormal(f64),
    #[error("polarization undefined: mean spin along n2 vanishes")]
    PolarizationUndefined,
    #[error("degenerate direction: spin variance along n1 or n3 vanishes")]
    DegenerateDirection,
    #[error("invalid grid: need at least 2 points per axis")]
    InvalidGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
