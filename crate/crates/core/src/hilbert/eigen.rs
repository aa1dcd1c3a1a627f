//! Dense eigensolvers: cyclic Jacobi for Hermitian matrices, Hessenberg
//! reduction plus shifted QR (complex Schur form) for general matrices.
//!
//! Both are self-contained and tuned for the small dimensions this crate
//! supports; the iteration cap is 100 sweeps (or QR steps) per dimension.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::matrix::{fix_phase, inner, vec_norm, ComplexMatrix};

/// Eigenvalues and eigenvectors of a square matrix, with per-pair residuals
/// ||Mv - lambda v||.
///
/// `vectors[i]` belongs to `values[i]`. For a defective input the solver may
/// resolve fewer independent eigenvectors than eigenvalues; the unmatched
/// eigenvalues are moved to the tail of `values` and `defective` is set.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: Vec<Vec<Complex64>>,
    pub residuals: Vec<f64>,
    pub defective: bool,
}

const SWEEPS_PER_DIM: usize = 100;

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Returns eigenvalues sorted ascending with an orthonormal eigenbasis; ties
/// are broken by lexicographic order of the phase-fixed eigenvectors.
pub(crate) fn jacobi_hermitian(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let scale = m.frobenius_norm();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);

    if n > 1 && scale > 0.0 {
        let mut converged = false;
        for _ in 0..SWEEPS_PER_DIM * n {
            if off_diagonal_norm(&a) <= 1e-15 * scale {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > 1e-15 * scale {
            return Err(Error::NoConvergence);
        }
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut col: Vec<Complex64> = (0..n).map(|i| v.get(i, k)).collect();
            fix_phase(&mut col);
            (a.get(k, k).re, col)
        })
        .collect();
    let tie = 1e-12 * scale.max(1.0);
    pairs.sort_by(|x, y| {
        if (x.0 - y.0).abs() <= tie {
            lex_cmp(&x.1, &y.1)
        } else {
            x.0.partial_cmp(&y.0).unwrap()
        }
    });

    let values: Vec<Complex64> = pairs.iter().map(|p| Complex64::new(p.0, 0.0)).collect();
    let vectors: Vec<Vec<Complex64>> = pairs.into_iter().map(|p| p.1).collect();
    let residuals = residuals_for(m, &values, &vectors);
    Ok(EigenDecomposition {
        values,
        vectors,
        residuals,
        defective: false,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing a[p][q] (and a[q][p]).
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // unitary U = I except U[pp]=c, U[pq]=s*phase, U[qp]=-s*conj(phase), U[qq]=c
    let n = a.dim();
    // columns: A <- A U
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * s * phase.conj());
        a.set(i, q, aip * s * phase + aiq * c);
    }
    // rows: A <- U^dagger A
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * s * phase);
        a.set(q, j, apj * s * phase.conj() + aqj * c);
    }
    // the rotation zeroes the pivot exactly in exact arithmetic
    a.set(p, q, Complex64::ZERO);
    a.set(q, p, Complex64::ZERO);
    a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
    a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));

    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * s * phase.conj());
        v.set(i, q, vip * s * phase + viq * c);
    }
}

fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap() {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
        match x.im.partial_cmp(&y.im).unwrap() {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

fn residuals_for(m: &ComplexMatrix, values: &[Complex64], vectors: &[Vec<Complex64>]) -> Vec<f64> {
    vectors
        .iter()
        .zip(values)
        .map(|(vec, &lam)| {
            let mv = m.matvec(vec);
            let diff: Vec<Complex64> = mv.iter().zip(vec).map(|(&a, &b)| a - lam * b).collect();
            vec_norm(&diff)
        })
        .collect()
}

/// Schur-based eigensolver for a general complex matrix.
///
/// Eigenvalues are sorted ascending by (re, im). Eigenvectors come from back
/// substitution on the triangular factor; near-parallel vectors produced by
/// repeated eigenvalues of a defective matrix are dropped and flagged.
pub(crate) fn schur_general(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n == 1 {
        return Ok(EigenDecomposition {
            values: vec![m.get(0, 0)],
            vectors: vec![vec![Complex64::ONE]],
            residuals: vec![0.0],
            defective: false,
        });
    }

    let (mut t, mut q) = hessenberg(m);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let cap = SWEEPS_PER_DIM * n;
    let mut steps = 0usize;

    let mut hi = n - 1;
    'outer: while hi > 0 {
        let mut block_iters = 0usize;
        loop {
            // split point: first negligible subdiagonal from the bottom
            let mut lo = hi;
            while lo > 0 {
                let sub = t.get(lo, lo - 1).norm();
                let local = t.get(lo - 1, lo - 1).norm() + t.get(lo, lo).norm();
                if sub <= eps * local.max(1e-3 * scale) {
                    t.set(lo, lo - 1, Complex64::ZERO);
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                hi -= 1;
                continue 'outer;
            }

            if steps >= cap {
                return Err(Error::NoConvergence);
            }
            steps += 1;
            block_iters += 1;

            let sigma = if block_iters.is_multiple_of(20) {
                // exceptional shift to break symmetric stalls
                let mut s = t.get(hi, hi - 1).norm();
                if hi >= 2 {
                    s += t.get(hi - 1, hi - 2).norm();
                }
                Complex64::new(s, 0.0) + t.get(hi, hi)
            } else {
                wilkinson_shift(&t, hi)
            };
            qr_step(&mut t, &mut q, lo, hi, sigma);
        }
    }

    // eigenpairs from the triangular factor
    let values_raw: Vec<Complex64> = (0..n).map(|k| t.get(k, k)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        values_raw[i]
            .re
            .partial_cmp(&values_raw[j].re)
            .unwrap()
            .then(values_raw[i].im.partial_cmp(&values_raw[j].im).unwrap())
    });

    let tnorm = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut kept_values = Vec::with_capacity(n);
    let mut dropped_values = Vec::new();
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut span: Vec<Vec<Complex64>> = Vec::new();
    for &k in &order {
        let mut vec = triangular_eigenvector(&t, k, tnorm);
        vec = q.matvec(&vec);
        let norm = vec_norm(&vec);
        for z in vec.iter_mut() {
            *z /= norm;
        }
        fix_phase(&mut vec);

        // rank test against the span of the vectors kept so far
        let mut resid = vec.clone();
        for b in &span {
            let ov = inner(b, &resid);
            for (r, &bb) in resid.iter_mut().zip(b) {
                *r -= ov * bb;
            }
        }
        let rnorm = vec_norm(&resid);
        if rnorm > 1e-6 {
            for z in resid.iter_mut() {
                *z /= rnorm;
            }
            span.push(resid);
            kept_values.push(values_raw[k]);
            vectors.push(vec);
        } else {
            dropped_values.push(values_raw[k]);
        }
    }

    let defective = !dropped_values.is_empty();
    let mut values = kept_values;
    values.extend(dropped_values);
    let residuals = residuals_for(m, &values[..vectors.len()], &vectors);
    Ok(EigenDecomposition {
        values,
        vectors,
        residuals,
        defective,
    })
}

/// Reduce to upper Hessenberg form: M = Q H Q^dagger.
fn hessenberg(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.dim();
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h.get(i, k)).collect();
        let xnorm = vec_norm(&x);
        if xnorm <= 1e-300 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::ONE };
        // v = x + e^{i arg(x0)} ||x|| e1 avoids cancellation
        x[0] += phase * xnorm;
        let vnorm = vec_norm(&x);
        if vnorm <= 1e-300 {
            continue;
        }
        let w: Vec<Complex64> = x.into_iter().map(|z| z / vnorm).collect();

        // rows k+1..n: H <- (I - 2 w w^dagger) H
        for j in 0..n {
            let dot: Complex64 = w
                .iter()
                .enumerate()
                .map(|(i, wi)| wi.conj() * h.get(k + 1 + i, j))
                .sum();
            for (i, &wi) in w.iter().enumerate() {
                let val = h.get(k + 1 + i, j) - 2.0 * wi * dot;
                h.set(k + 1 + i, j, val);
            }
        }
        // columns k+1..n: H <- H (I - 2 w w^dagger)
        for i in 0..n {
            let dot: Complex64 = w
                .iter()
                .enumerate()
                .map(|(l, wl)| h.get(i, k + 1 + l) * wl)
                .sum();
            for (l, &wl) in w.iter().enumerate() {
                let val = h.get(i, k + 1 + l) - 2.0 * dot * wl.conj();
                h.set(i, k + 1 + l, val);
            }
        }
        // accumulate Q <- Q (I - 2 w w^dagger)
        for i in 0..n {
            let dot: Complex64 = w
                .iter()
                .enumerate()
                .map(|(l, wl)| q.get(i, k + 1 + l) * wl)
                .sum();
            for (l, &wl) in w.iter().enumerate() {
                let val = q.get(i, k + 1 + l) - 2.0 * dot * wl.conj();
                q.set(i, k + 1 + l, val);
            }
        }
        for i in k + 2..n {
            h.set(i, k, Complex64::ZERO);
        }
    }
    (h, q)
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(t: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = t.get(hi - 1, hi - 1);
    let b = t.get(hi - 1, hi);
    let c = t.get(hi, hi - 1);
    let d = t.get(hi, hi);
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Complex Givens rotation: G = [[c, s], [-conj(s), c]] with c real maps
/// (f, g) to (r, 0).
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::ZERO);
    }
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let d = (fn_ * fn_ + gn * gn).sqrt();
    let c = fn_ / d;
    let s = (f / fn_) * g.conj() / d;
    (c, s)
}

/// One explicit shifted QR step on the active block [lo, hi].
fn qr_step(t: &mut ComplexMatrix, q: &mut ComplexMatrix, lo: usize, hi: usize, sigma: Complex64) {
    let n = t.dim();
    for k in lo..=hi {
        let v = t.get(k, k) - sigma;
        t.set(k, k, v);
    }
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(t.get(k, k), t.get(k + 1, k));
        rots.push((c, s));
        for j in k..n {
            let a = t.get(k, j);
            let b = t.get(k + 1, j);
            t.set(k, j, a * c + b * s);
            t.set(k + 1, j, -a * s.conj() + b * c);
        }
        t.set(k + 1, k, Complex64::ZERO);
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 1).min(hi);
        for i in 0..=top {
            let a = t.get(i, k);
            let b = t.get(i, k + 1);
            t.set(i, k, a * c + b * s.conj());
            t.set(i, k + 1, -a * s + b * c);
        }
        for i in 0..n {
            let a = q.get(i, k);
            let b = q.get(i, k + 1);
            q.set(i, k, a * c + b * s.conj());
            q.set(i, k + 1, -a * s + b * c);
        }
    }
    for k in lo..=hi {
        let v = t.get(k, k) + sigma;
        t.set(k, k, v);
    }
}

/// Solve (T - lambda_k) y = 0 by back substitution, regularizing tiny pivots.
#[allow(clippy::needless_range_loop)]
fn triangular_eigenvector(t: &ComplexMatrix, k: usize, tnorm: f64) -> Vec<Complex64> {
    let n = t.dim();
    let lam = t.get(k, k);
    let small = f64::EPSILON * tnorm;
    let mut y = vec![Complex64::ZERO; n];
    y[k] = Complex64::ONE;
    for i in (0..k).rev() {
        let mut num = Complex64::ZERO;
        for j in i + 1..=k {
            num += t.get(i, j) * y[j];
        }
        let mut den = t.get(i, i) - lam;
        if den.norm() < small {
            den = Complex64::new(small, 0.0);
        }
        y[i] = -num / den;
        let ymax = y[i].norm();
        if ymax > 1e120 {
            for z in y.iter_mut() {
                *z /= ymax;
            }
        }
    }
    y
}
