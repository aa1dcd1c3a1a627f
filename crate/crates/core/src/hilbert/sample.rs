//! Reproducible sampling of states and observables.
//!
//! Draws come from a counter-based generator (splitmix-style finalizer over a
//! keyed counter), so a sample is a pure function of (seed, dim) and identical
//! regardless of thread count or call order.

use num_complex::Complex64;

use crate::hilbert::matrix::ComplexMatrix;
use crate::hilbert::{Observable, PureState};

const GOLDEN: u64 = 0x9E3779B97F4A7C15;
const STATE_STREAM: u64 = 0x5354415445; // "STATE"
const OBSERVABLE_STREAM: u64 = 0x4F425345525645; // "OBSERVE"

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Counter-based random stream: output k is mix64(key + (k+1) * GOLDEN).
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            key: mix64(seed ^ mix64(stream.wrapping_mul(GOLDEN))),
            counter: 0,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform draw in (0, 1].
    #[inline]
    pub fn next_open_unit(&mut self) -> f64 {
        (((self.next_u64() >> 11) + 1) as f64) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; draws two uniforms per call.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_open_unit();
        let u2 = self.next_open_unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

/// Mix several values into a single derived seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut acc = 0x243F6A8885A308D3u64;
    for &p in parts {
        acc = mix64(acc ^ mix64(p.wrapping_add(GOLDEN)));
    }
    acc
}

/// Haar-distributed pure state: 2*dim independent standard normal draws form
/// the complex amplitudes, then the vector is normalized.
pub fn sample_state(seed: u64, dim: usize) -> PureState {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = CounterRng::new(seed, STATE_STREAM ^ (dim as u64));
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| {
            let re = rng.next_normal();
            let im = rng.next_normal();
            Complex64::new(re, im)
        })
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in amps.iter_mut() {
        *z /= norm;
    }
    PureState::new(amps).expect("normalized by construction")
}

/// Gaussian-ensemble Hermitian matrix (G + G^dagger)/2 with standard complex
/// normal entries in G.
pub fn sample_observable(seed: u64, dim: usize) -> Observable {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = CounterRng::new(seed, OBSERVABLE_STREAM ^ (dim as u64));
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        let re = rng.next_normal();
        let im = rng.next_normal();
        Complex64::new(re, im)
    });
    let h = g.add(&g.adjoint()).scaled(Complex64::new(0.5, 0.0));
    Observable::new(h).expect("symmetrization yields an exactly Hermitian matrix")
}
