use proptest::prelude::*;
use vibpol::numerics::{expm, general_eig, hermitian_eig};
use vibpol::oracle::charpoly;
use vibpol::{ComplexMatrix, C64};

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), n * n).prop_map(move |v| {
        let raw = ComplexMatrix::from_fn(n, n, |i, j| C64::new(v[i * n + j].0, v[i * n + j].1));
        (&raw + &raw.adjoint()).scale(C64::new(0.5, 0.0))
    })
}

fn generator(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n)
        .prop_map(move |v| ComplexMatrix::from_fn(n, n, |i, j| C64::new(v[i * n + j].0, v[i * n + j].1)))
}

proptest! {
    #[test]
    fn jacobi_matches_characteristic_polynomial(m in (2usize..6).prop_flat_map(hermitian)) {
        let dec = hermitian_eig(&m).unwrap();
        let values = dec.real_values();
        let roots = charpoly::hermitian_eigenvalues(&m, 20_000);
        // the root finder cannot resolve near-degenerate pairs
        prop_assume!(roots.len() == values.len());
        for (a, b) in values.iter().zip(&roots) {
            prop_assert!((a - b).abs() < 1e-8 * m.max_abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn eigenvalues_preserve_trace_and_reconstruct(m in (1usize..7).prop_flat_map(hermitian)) {
        let dec = hermitian_eig(&m).unwrap();
        let sum: f64 = dec.real_values().iter().sum();
        prop_assert!((sum - m.trace().re).abs() < 1e-10 * m.max_abs().max(1.0));
        let back = dec.reconstruct_with(|l| l);
        prop_assert!(back.max_abs_diff(&m) < 1e-10 * m.max_abs().max(1.0));
        let u = &dec.right_vectors;
        prop_assert!((&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(m.rows())) < 1e-11);
    }

    #[test]
    fn expm_is_a_semigroup(a in (1usize..6).prop_flat_map(generator), s in 0.0..3.0f64, t in 0.0..3.0f64) {
        let whole = expm(&a, s + t).unwrap();
        let split = &expm(&a, s).unwrap() * &expm(&a, t).unwrap();
        prop_assert!(whole.max_abs_diff(&split) < 1e-10 * whole.max_abs().max(1.0));
    }

    #[test]
    fn expm_matches_eigendecomposition(a in (1usize..6).prop_flat_map(generator), t in 0.0..4.0f64) {
        let dec = match general_eig(&a) {
            Ok(d) => d,
            // ill-conditioned draws are rejected by design
            Err(_) => return Ok(()),
        };
        let spectral = dec.reconstruct_with(|l| (l * t).exp());
        let pade = expm(&a, t).unwrap();
        prop_assert!(pade.max_abs_diff(&spectral) < 1e-8 * pade.max_abs().max(1.0));
    }
}

#[test]
fn expm_of_hermitian_generator_is_unitary() {
    let h = ComplexMatrix::from_rows(&[
        vec![C64::new(1.0, 0.0), C64::new(0.3, -0.2)],
        vec![C64::new(0.3, 0.2), C64::new(-0.5, 0.0)],
    ]);
    let u = expm(&h.scale(C64::new(0.0, -1.0)), 7.5).unwrap();
    assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-13);
}
