use rustfft::FftPlanner;
use vibpol::kinetics::relaxation_data;
use vibpol::model::diagonalize;
use vibpol::oracle::fourier;
use vibpol::response::{
    dqc_pathways, dqc_spectrum, evaluate, local_maxima, pe_pathways, pe_spectrum, preset, Axis, ResponseFunction,
};
use vibpol::units::RAD_PER_FS_PER_WAVENUMBER;
use vibpol::{
    BathSpec, EigenSystem, ExchangeConvention, GridSpec, Pulse, PulseSet, RelaxationData, StateRef, SystemParams,
    Technique, C64,
};

fn default_system() -> (EigenSystem, RelaxationData) {
    let eig = diagonalize(&SystemParams::default()).unwrap();
    let relax = relaxation_data(&eig, &BathSpec::default()).unwrap();
    (eig, relax)
}

fn small_grid(technique: Technique) -> GridSpec {
    let mut g = GridSpec::default_for(technique);
    g.axis1.points = 41;
    g.axis2.points = 41;
    g
}

#[test]
fn harmonic_dqc_signal_cancels() {
    let mut p = SystemParams::default();
    p.overtone_nonlinearity = vec![0.0, 0.0];
    p.combination_nonlinearity = vec![vec![0.0; 2]; 2];
    p.exchange = ExchangeConvention::Bosonic;
    let eig = diagonalize(&p).unwrap();
    let quiet = BathSpec { mode_weights: vec![0.0, 0.0], ..BathSpec::default() };
    let relax = relaxation_data(&eig, &quiet).unwrap();
    let pulses = PulseSet::impulsive(Technique::Dqc, 0.0);
    let harmonic = dqc_spectrum(&eig, &relax, &pulses, &small_grid(Technique::Dqc)).unwrap();

    let anharmonic_eig = diagonalize(&SystemParams::default()).unwrap();
    let anharmonic_relax = relaxation_data(&anharmonic_eig, &quiet).unwrap();
    let reference = dqc_spectrum(&anharmonic_eig, &anharmonic_relax, &pulses, &small_grid(Technique::Dqc)).unwrap();
    assert!(harmonic.normalization < 1e-9 * reference.normalization, "{}", harmonic.normalization);
}

#[test]
fn short_pulses_approach_the_impulsive_limit() {
    let (eig, relax) = default_system();
    let short = PulseSet {
        technique: Technique::Pe,
        pulses: [Pulse::gaussian(2050.0, 0.2); 4],
        delay_fs: 10.0,
    };
    let flat = PulseSet::impulsive(Technique::Pe, 10.0);
    let grid = small_grid(Technique::Pe);
    let a = pe_spectrum(&eig, &relax, &short, &grid).unwrap();
    let b = pe_spectrum(&eig, &relax, &flat, &grid).unwrap();
    let diff = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(diff < 1e-3, "{diff}");
}

#[test]
fn spectra_scale_as_fourth_power_of_dipoles_and_ignore_their_sign() {
    let (eig, relax) = default_system();
    let (technique, case) = preset("dqc-a").unwrap();
    let pulses = case.resolve(technique, &eig).unwrap();
    let grid = small_grid(technique);
    let base = dqc_spectrum(&eig, &relax, &pulses, &grid).unwrap();
    for s in [-1.0, 0.5, 3.0] {
        let scaled = dqc_spectrum(&eig.with_scaled_dipoles(s), &relax, &pulses, &grid).unwrap();
        let expect = base.normalization * s.powi(4);
        assert!((scaled.normalization - expect).abs() < 1e-12 * expect);
        let diff = scaled.values.iter().zip(&base.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-12);
    }
}

#[test]
fn single_transition_photon_echo_is_a_lorentzian_product() {
    let (eig, relax) = default_system();
    let eig = eig.restricted(&[1], &[]).unwrap();
    let relax = relax.restricted(&[1], &[]).unwrap();
    let pulses = PulseSet::impulsive(Technique::Pe, 75.0);
    let terms = pe_pathways(&eig, &relax, &pulses).unwrap();
    let mu2 = eig.dipole_01[(0, 0)].norm_sqr();
    let z = relax.resonance(StateRef::new(1, 0), StateRef::GROUND);
    let c2 = RAD_PER_FS_PER_WAVENUMBER * RAD_PER_FS_PER_WAVENUMBER;
    for (w1, w3) in [(2058.0, 2058.0), (2000.0, 2100.0), (2200.0, 1900.0)] {
        // bleach and stimulated emission contribute equally
        let expect = 2.0 * mu2 * mu2 * C64::new(0.0, 1.0 / c2) / ((-w1 + z.conj()) * (w3 - z));
        let got = evaluate(&terms, Technique::Pe, w1, w3);
        assert!((got - expect).norm() < 1e-12 * expect.norm(), "{got} vs {expect}");
    }
    assert!(dqc_pathways(&eig, &relax, &PulseSet::impulsive(Technique::Dqc, 0.0)).unwrap().is_empty());
}

#[test]
fn dqc_oscillates_at_the_two_quantum_frequency_along_t2() {
    let (eig, relax) = default_system();
    let eig = eig.restricted(&[0], &[3]).unwrap();
    let relax = relax.restricted(&[0], &[3]).unwrap();
    let response = ResponseFunction::new(&eig, &relax, &PulseSet::impulsive(Technique::Dqc, 0.0)).unwrap();
    let (n, dt) = (8192usize, 0.25);
    // conjugate so that e^{-iωt} shows up at positive frequency
    let mut samples: Vec<C64> = (0..n).map(|k| response.at(k as f64 * dt, 5.0).conj()).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut samples);
    let peak = (0..n / 2).max_by(|&a, &b| samples[a].norm().total_cmp(&samples[b].norm())).unwrap();
    let bin = 1.0 / (n as f64 * dt * RAD_PER_FS_PER_WAVENUMBER / (2.0 * std::f64::consts::PI));
    let expect = relax.energy(StateRef::new(2, 0));
    assert!((peak as f64 * bin - expect).abs() <= bin, "{} vs {expect}", peak as f64 * bin);
}

#[test]
fn gaussian_pulse_spectra_match_transformed_response() {
    let (eig, relax) = default_system();
    let (technique, case) = preset("dqc-b").unwrap();
    let pulses = case.resolve(technique, &eig).unwrap();
    let eig = eig.restricted(&[1], &[2]).unwrap();
    let relax = relax.restricted(&[1], &[2]).unwrap();
    let terms = dqc_pathways(&eig, &relax, &pulses).unwrap();
    let wa: Vec<f64> = (0..7).map(|k| 4000.0 + 40.0 * k as f64).collect();
    let wb: Vec<f64> = (0..7).map(|k| 1950.0 + 40.0 * k as f64).collect();
    let response = ResponseFunction::new(&eig, &relax, &pulses).unwrap();
    let gamma = relax.linewidth(StateRef::new(1, 0)).min(relax.linewidth(StateRef::new(2, 0)));
    let t_max = 14.0 / (0.5 * gamma * RAD_PER_FS_PER_WAVENUMBER);
    let points = 2 * (t_max / 2.0).ceil() as usize + 1;
    let time = fourier::half_fourier_2d(|a, b| response.at(a, b), &wa, &wb, t_max, points);
    let top = time.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for (i, &a) in wa.iter().enumerate() {
        for (j, &b) in wb.iter().enumerate() {
            let f = evaluate(&terms, technique, a, b);
            assert!((f - time[i][j]).norm() < 1e-4 * top, "({a}, {b})");
        }
    }
}

#[test]
fn coarse_grids_are_flagged_and_peaks_are_interior() {
    let (eig, relax) = default_system();
    let pulses = PulseSet::impulsive(Technique::Pe, 10.0);
    let grid = GridSpec { axis1: Axis::new(1000.0, 3000.0, 5), axis2: Axis::new(1000.0, 3000.0, 5) };
    let s = pe_spectrum(&eig, &relax, &pulses, &grid).unwrap();
    assert!(!s.warnings.is_empty());
    let fine = pe_spectrum(&eig, &relax, &pulses, &small_grid(Technique::Pe)).unwrap();
    assert!(fine.warnings.is_empty());
    let (n1, n2) = fine.dims();
    for p in local_maxima(&fine, 1e-3) {
        assert!(p.i > 0 && p.i < n1 - 1 && p.j > 0 && p.j < n2 - 1);
    }
    assert!(pe_spectrum(&eig, &relax, &PulseSet::impulsive(Technique::Dqc, 0.0), &grid).is_err());
}
