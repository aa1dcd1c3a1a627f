//! Complex linear-algebra substrate: validated operator and state types,
//! eigensolvers, orthonormal complements, and reproducible sampling.
//!
//! All types are immutable after construction; every operation here is a pure
//! function, so concurrent use over independent inputs needs no coordination.

pub mod eigen;
pub mod matrix;
pub mod sample;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::EigenDecomposition;
pub use matrix::{anticommutator, commutator, fix_phase, inner, vec_norm, ComplexMatrix};
pub use sample::{derive_seed, sample_observable, sample_state, CounterRng};

/// Hard cap on matrix dimension; everything here is desk-scale dense algebra.
pub const MAX_DIM: usize = 64;

const HERMITICITY_TOL: f64 = 1e-12;
const NORMALIZATION_TOL: f64 = 1e-12;

/// A Hermitian operator. Construction checks the Hermiticity residual
/// against 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let residual = matrix.hermiticity_residual();
        if residual > HERMITICITY_TOL {
            return Err(Error::NotHermitian(residual));
        }
        Ok(Self { matrix })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.matrix.matvec(v)
    }

    /// A + B as an observable (sum of Hermitian is Hermitian).
    pub fn add(&self, other: &Observable) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Observable::new(self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Observable) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Observable::new(self.matrix.sub(&other.matrix))
    }
}

/// A normalized pure state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let residual = (norm_sqr - 1.0).abs();
        if residual > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(residual));
        }
        Ok(Self { amplitudes })
    }

    /// Normalize an arbitrary nonzero vector into a state.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if norm <= 1e-300 {
            return Err(Error::NotNormalized(1.0));
        }
        for z in amplitudes.iter_mut() {
            *z /= norm;
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state |index> in the given dimension.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Self { amplitudes }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn overlap(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }
}

/// A density matrix: Hermitian, unit trace, positive semidefinite within
/// 1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix,
}

impl DensityState {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let hres = matrix.hermiticity_residual();
        if hres > HERMITICITY_TOL {
            return Err(Error::NotHermitian(hres));
        }
        let tres = (matrix.trace() - Complex64::ONE).norm();
        if tres > NORMALIZATION_TOL {
            return Err(Error::TraceNotOne(tres));
        }
        let as_obs = Observable { matrix: matrix.clone() };
        let eig = hermitian_eigen(&as_obs)?;
        if let Some(min) = eig.values.iter().map(|v| v.re).reduce(f64::min) {
            if min < -1e-10 {
                return Err(Error::NotPositive(min));
            }
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let n = psi.dim();
        let a = psi.amplitudes();
        let matrix = ComplexMatrix::from_fn(n, |i, j| a[i] * a[j].conj());
        Self { matrix }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Full spectrum and orthonormal eigenbasis of a Hermitian operator.
///
/// Eigenvalues come back sorted ascending; eigenvectors carry the global
/// phase convention from [`fix_phase`].
pub fn hermitian_eigen(m: &Observable) -> Result<EigenDecomposition> {
    if m.dim() > MAX_DIM {
        return Err(Error::SizeLimit(m.dim()));
    }
    eigen::jacobi_hermitian(m.matrix())
}

/// Eigenpairs of a general complex matrix via the Schur form.
pub fn general_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    if m.dim() > MAX_DIM {
        return Err(Error::SizeLimit(m.dim()));
    }
    eigen::schur_general(m)
}

/// Deterministic orthonormal complement of a state: the d-1 vectors that,
/// together with `psi`, form an orthonormal basis.
///
/// A single Householder reflection maps `psi` onto the first standard basis
/// vector; reflecting columns 2..d back gives the complement. Empty in
/// dimension 1.
pub fn complement_basis(psi: &PureState) -> Vec<PureState> {
    let n = psi.dim();
    if n == 1 {
        return Vec::new();
    }
    let a = psi.amplitudes();

    // w = psi + e^{i arg(psi_0)} e_0, reflector H = I - 2 w w^dagger / |w|^2;
    // then H e_0 is parallel to psi and columns 1..d of H span its complement.
    let phase = if a[0].norm() > 0.0 {
        a[0] / a[0].norm()
    } else {
        Complex64::ONE
    };
    let mut w: Vec<Complex64> = a.to_vec();
    w[0] += phase;
    let wnorm = vec_norm(&w);
    let w: Vec<Complex64> = w.into_iter().map(|z| z / wnorm).collect();

    (1..n)
        .map(|k| {
            // column k of H: e_k - 2 w conj(w_k)
            let mut col = vec![Complex64::ZERO; n];
            col[k] = Complex64::ONE;
            let factor = 2.0 * w[k].conj();
            for (c, &wi) in col.iter_mut().zip(&w) {
                *c -= factor * wi;
            }
            fix_phase(&mut col);
            PureState::new(col).expect("Householder columns are unit vectors")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn observable_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(0., 0.), c(0., 0.)]])
            .unwrap();
        assert!(matches!(Observable::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        let r = PureState::new(vec![c(1.0, 0.0), c(0.5, 0.0)]);
        assert!(matches!(r, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn density_state_rejects_bad_trace() {
        let m = ComplexMatrix::diagonal(&[c(0.9, 0.0), c(0.4, 0.0)]);
        assert!(matches!(DensityState::new(m), Err(Error::TraceNotOne(_))));
    }

    #[test]
    fn density_state_rejects_negative_eigenvalue() {
        let m = ComplexMatrix::diagonal(&[c(1.5, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(DensityState::new(m), Err(Error::NotPositive(_))));
    }

    #[test]
    fn eigen_rejects_oversized() {
        let m = Observable::new(ComplexMatrix::identity(65)).unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::SizeLimit(65))));
    }

    #[test]
    fn complement_of_basis_state() {
        let psi = PureState::basis_state(2, 0);
        let basis = complement_basis(&psi);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].amplitudes()[0].norm() < 1e-14);
        assert!((basis[0].amplitudes()[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complement_of_plus_state() {
        let s = 1.0 / 2.0f64.sqrt();
        let psi = PureState::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        let basis = complement_basis(&psi);
        assert_eq!(basis.len(), 1);
        // orthogonal to psi, i.e. (1,-1)/sqrt(2) up to phase
        assert!(psi.overlap(&basis[0]).norm() < 1e-14);
        assert!((basis[0].amplitudes()[0].norm() - s).abs() < 1e-12);
    }

    #[test]
    fn complement_in_dim_one_is_empty() {
        let psi = PureState::basis_state(1, 0);
        assert!(complement_basis(&psi).is_empty());
    }

    #[test]
    fn complement_gram_matrix_is_identity() {
        let psi = sample_state(7, 8);
        let basis = complement_basis(&psi);
        assert_eq!(basis.len(), 7);
        let mut all: Vec<&PureState> = vec![&psi];
        all.extend(basis.iter());
        for (i, u) in all.iter().enumerate() {
            for (j, v) in all.iter().enumerate() {
                let g = u.overlap(v);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g.norm() - want).abs() <= 1e-10, "Gram[{i}][{j}] = {g}");
            }
        }
    }

    #[test]
    fn complement_is_deterministic() {
        let psi = sample_state(3, 5);
        let a = complement_basis(&psi);
        let b = complement_basis(&psi);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.amplitudes(), y.amplitudes());
        }
    }
}
