//! Property tests over seeded random inputs: the structural invariants that
//! must hold for every (A, B, psi) triple, not just the tabulated examples.

use proptest::prelude::*;

use qvar_core::hilbert::{
    complement_basis, derive_seed, general_eigen, hermitian_eigen, sample_observable,
    sample_state,
};
use qvar_core::relations::{pair_moments, sum_bound_l2, sum_bound_l3, sum_identity, Sign};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigendecomposition_reconstructs_hermitian_input(seed in any::<u64>(), dim in 2usize..9) {
        let m = sample_observable(seed, dim);
        let d = hermitian_eigen(&m).unwrap();
        let scale = m.matrix().frobenius_norm();
        for r in &d.residuals {
            prop_assert!(*r <= 1e-8 * scale);
        }
        // V diag(values) V^dagger recovers the matrix
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let mut rebuilt = num_complex::Complex64::ZERO;
                for k in 0..dim {
                    rebuilt += d.values[k] * d.vectors[k][i] * d.vectors[k][j].conj();
                }
                worst = worst.max((rebuilt - m.matrix().get(i, j)).norm());
            }
        }
        prop_assert!(worst <= 1e-8 * scale, "reconstruction error {worst}");
        // ascending order
        for pair in d.values.windows(2) {
            prop_assert!(pair[0].re <= pair[1].re + 1e-12);
        }
    }

    #[test]
    fn general_eigen_matches_hermitian_spectra(seed in any::<u64>(), dim in 2usize..7) {
        let m = sample_observable(seed, dim);
        let herm = hermitian_eigen(&m).unwrap();
        let gen = general_eigen(m.matrix()).unwrap();
        // compare spectra as sorted multisets: a defective flag from an
        // accidental eigenvalue collision must not change the values
        let mut gen_sorted = gen.values.clone();
        gen_sorted.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for k in 0..dim {
            prop_assert!((herm.values[k].re - gen_sorted[k].re).abs() <= 1e-8);
            prop_assert!(gen_sorted[k].im.abs() <= 1e-8);
        }
    }

    #[test]
    fn complement_forms_a_unitary(seed in any::<u64>(), dim in 1usize..9) {
        let psi = sample_state(seed, dim);
        let basis = complement_basis(&psi);
        prop_assert_eq!(basis.len(), dim - 1);
        let mut columns: Vec<&qvar_core::PureState> = vec![&psi];
        columns.extend(basis.iter());
        for (i, u) in columns.iter().enumerate() {
            for (j, v) in columns.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((u.overlap(v).norm() - want).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn uncertainty_chain_and_parallelogram(seed in any::<u64>(), dim in 2usize..9) {
        let a = sample_observable(derive_seed(&[seed, 1]), dim);
        let b = sample_observable(derive_seed(&[seed, 2]), dim);
        let psi = sample_state(derive_seed(&[seed, 3]), dim);
        let pm = pair_moments(&a, &b, &psi).unwrap();
        let w = pm.var_a + pm.var_b;
        let u = pm.var_a * pm.var_b;

        prop_assert!(w >= 2.0 * u.sqrt() - 1e-10);
        prop_assert!(2.0 * u.sqrt() >= pm.exp_c.abs() - 1e-10);
        prop_assert!(u - (pm.exp_c / 2.0).powi(2) - (pm.exp_f / 2.0).powi(2) >= -1e-10);

        let l2 = sum_bound_l2(&a, &b, &psi).unwrap();
        let l3 = sum_bound_l3(&a, &b, &psi).unwrap();
        prop_assert!((l2 + l3 - w).abs() <= 1e-10);
    }

    #[test]
    fn sum_identity_closes_for_any_complement(seed in any::<u64>(), dim in 2usize..9) {
        let a = sample_observable(derive_seed(&[seed, 4]), dim);
        let b = sample_observable(derive_seed(&[seed, 5]), dim);
        let psi = sample_state(derive_seed(&[seed, 6]), dim);
        let basis = complement_basis(&psi);
        for sign in Sign::BOTH {
            let check = sum_identity(&a, &b, &psi, &basis, sign).unwrap();
            prop_assert!(check.residual <= 1e-9, "residual {}", check.residual);
        }
    }

    #[test]
    fn sampling_reproducible(seed in any::<u64>(), dim in 1usize..10) {
        let s1 = sample_state(seed, dim);
        let s2 = sample_state(seed, dim);
        prop_assert_eq!(s1.amplitudes(), s2.amplitudes());
        let o1 = sample_observable(seed, dim);
        let o2 = sample_observable(seed, dim);
        prop_assert_eq!(o1.matrix(), o2.matrix());
    }
}
