mod common;

use proptest::prelude::*;
use vibpol::model::{build_hamiltonian, diagonalize, enumerate_basis};
use vibpol::oracle::second_quantization;
use vibpol::{ExchangeConvention, SystemParams};

proptest! {
    #[test]
    fn bosonic_hamiltonian_matches_ladder_operators(mut p in common::system_params()) {
        p.exchange = ExchangeConvention::Bosonic;
        let terms = second_quantization::hamiltonian_terms(&p);
        for manifold in 0..=2 {
            let basis = enumerate_basis(p.n_modes(), manifold).unwrap();
            let h = build_hamiltonian(&p, manifold).unwrap();
            let oracle = second_quantization::matrix(&terms, &basis);
            for (i, row) in oracle.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    prop_assert!((h[(i, j)].re - x).abs() < 1e-10 && h[(i, j)].im == 0.0, "{manifold} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_and_spectrum_complete(p in common::system_params()) {
        let eig = diagonalize(&p).unwrap();
        for m in &eig.manifolds {
            prop_assert!(m.hamiltonian.is_hermitian(1e-14));
            let trace: f64 = m.energies.iter().sum();
            prop_assert!((trace - m.hamiltonian.trace().re).abs() < 1e-9);
            prop_assert!(m.energies.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn ground_to_one_dipoles_obey_sum_rule(p in common::system_params()) {
        let eig = diagonalize(&p).unwrap();
        let total: f64 = (0..3).map(|k| eig.dipole_01[(k, 0)].norm_sqr()).sum();
        let d: f64 = p.site_dipoles.iter().sum();
        prop_assert!((total - d * d).abs() < 1e-10 * d * d);
    }

    #[test]
    fn one_to_two_dipole_weight_is_basis_independent(p in common::system_params()) {
        // ‖φ₂†Vφ₁‖² = ‖V₂₁‖² = d²·Σ_k (n_cavity(k) + 1) = 4d² over the one-quantum configurations
        let eig = diagonalize(&p).unwrap();
        let d: f64 = p.site_dipoles.iter().sum();
        let total: f64 = (0..6).flat_map(|f| (0..3).map(move |k| (f, k))).map(|(f, k)| eig.dipole_12[(f, k)].norm_sqr()).sum();
        prop_assert!((total - 4.0 * d * d).abs() < 1e-10 * d * d);
    }
}

#[test]
fn default_parameters_reproduce_reference_one_polariton_energies() {
    let eig = diagonalize(&SystemParams::default()).unwrap();
    for (e, x) in eig.manifolds[1].energies.iter().zip([1996.59, 2058.21, 2094.20]) {
        assert!((e - x).abs() < 0.02);
    }
}
