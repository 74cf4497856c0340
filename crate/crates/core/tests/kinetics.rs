mod common;

use proptest::prelude::*;
use vibpol::kinetics::{boltzmann, population_propagator, relaxation_data, GreenTensor};
use vibpol::model::diagonalize;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transport_conserves_probability_and_keeps_populations_physical(
        p in common::system_params(),
        bath in common::bath_spec(),
        t in 0.0..10_000.0f64,
    ) {
        let eig = diagonalize(&p).unwrap();
        let relax = relaxation_data(&eig, &bath).unwrap();
        for m in 1..3 {
            let prop = population_propagator(&relax, m, t).unwrap();
            let n = prop.rows();
            for b in 0..n {
                let col: f64 = (0..n).map(|a| prop[(a, b)].re).sum();
                prop_assert!((col - 1.0).abs() < 1e-9);
                for a in 0..n {
                    prop_assert!(prop[(a, b)].re > -1e-10 && prop[(a, b)].im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn thermal_state_is_a_fixed_point(p in common::system_params(), bath in common::bath_spec()) {
        let eig = diagonalize(&p).unwrap();
        let relax = relaxation_data(&eig, &bath).unwrap();
        for m in 1..3 {
            let r = &relax.manifolds[m];
            let scale = r.transport.iter().flatten().map(|x| x.abs()).fold(1e-300, f64::max);
            let pop = boltzmann(&r.energies, bath.temperature);
            for a in 0..pop.len() {
                let flux: f64 = (0..pop.len()).map(|b| r.transport[a][b] * pop[b]).sum();
                prop_assert!(flux.abs() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn rates_are_nonnegative(p in common::system_params(), bath in common::bath_spec()) {
        let eig = diagonalize(&p).unwrap();
        let relax = relaxation_data(&eig, &bath).unwrap();
        for m in 1..3 {
            let r = &relax.manifolds[m];
            prop_assert!(r.linewidths.iter().all(|&g| g >= 0.0));
            prop_assert!(r.dephasing.iter().flatten().all(|&g| g >= 0.0));
        }
    }

    #[test]
    fn green_tensor_coherences_decay(p in common::system_params(), bath in common::bath_spec(), t in 0.0..2000.0f64) {
        let eig = diagonalize(&p).unwrap();
        let relax = relaxation_data(&eig, &bath).unwrap();
        let g = GreenTensor::new(&relax, 2, t).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                if a != b {
                    prop_assert!(g.get(a, b, a, b).norm() <= 1.0 + 1e-12);
                    prop_assert_eq!(g.get(a, b, b, a).norm(), 0.0);
                }
            }
        }
    }
}
