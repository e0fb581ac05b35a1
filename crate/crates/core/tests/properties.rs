use num_complex::Complex64;
use proptest::prelude::*;
use qskew::hua::hua_decompose;
use qskew::skew::verify_classification;
use qskew::spectra::{gram_product, right_eigenvalues_hermitian};
use qskew::{ComplexMatrix, QuatMatrix, Quaternion, SkewCase, SkewTriple, DEFAULT_TOL};

fn quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-3.0f64..3.0).prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

fn complex_skew() -> impl Strategy<Value = ComplexMatrix> {
    (2usize..9).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
            let g = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(v[i * n + j].0, v[i * n + j].1));
            g.sub(&g.transpose()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn w_is_psd_with_trace_norm(seed in any::<u64>(), n in 2usize..7) {
        let z = QuatMatrix::random_skew_symmetric(n, seed, 1.0).unwrap();
        let spectrum = right_eigenvalues_hermitian(&gram_product(&z, DEFAULT_TOL).unwrap(), DEFAULT_TOL).unwrap();
        let norm2 = z.frobenius_norm().powi(2);
        prop_assert!(spectrum.min() >= -1e-10 * norm2);
        prop_assert!((spectrum.values.iter().sum::<f64>() - norm2).abs() <= 1e-9 * norm2);
        prop_assert!(spectrum.max_residual <= 1e-9 * norm2.max(1.0));
    }

    #[test]
    fn canonical_form_reconstructs(z in complex_skew()) {
        let f = hua_decompose(&z, DEFAULT_TOL).unwrap();
        prop_assert_eq!(f.dim(), z.rows());
        prop_assert!(f.residual <= 1e-8 * z.frobenius_norm().max(1.0));
        prop_assert!(f.unitarity_residual <= 1e-10);
        prop_assert!(f.sigmas.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn combination_triples_are_degenerate(a in quaternion(), b in quaternion(), alpha in -2.0f64..2.0, beta in -2.0f64..2.0) {
        prop_assume!(a.norm() > 0.1 && b.norm() > 0.1);
        let t = SkewTriple::new(a, b, a * alpha + b * beta);
        let r = verify_classification(&t, DEFAULT_TOL).unwrap();
        prop_assert_eq!(r.case_label, SkewCase::Degenerate);
        prop_assert_eq!(r.agrees, Some(true));
    }
}
