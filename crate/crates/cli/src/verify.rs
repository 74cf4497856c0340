//! Invariant and oracle checks on the configured model. Each check reports
//! its measured residual next to the tolerance it is held to.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vibpol::bath::{correlation_expansion, spectral_density};
use vibpol::kinetics::{
    boltzmann, green_function, population_propagator, population_propagator_spectral, relaxation_data, GreenKind,
};
use vibpol::model::{build_hamiltonian, diagonalize, enumerate_basis};
use vibpol::oracle::{charpoly, fourier, second_quantization};
use vibpol::response::{dqc_pathways, evaluate, pe_pathways, ResponseFunction};
use vibpol::units::RAD_PER_FS_PER_WAVENUMBER;
use vibpol::{
    BathSpec, ComplexMatrix, EigenSystem, ExchangeConvention, PulseSet, RelaxationData, StateRef, SystemParams,
    Technique, C64,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Writer;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &str, residual: f64, tolerance: f64) {
        // NaN residuals fail
        let pass = residual <= tolerance;
        self.checks.push(Check { name: name.to_string(), residual, tolerance, pass });
    }
}

fn max(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn spectrum_checks(s: &mut Suite, p: &SystemParams, eig: &EigenSystem) -> Result<(), CliError> {
    let mut herm = 0.0f64;
    let mut unitary = 0.0f64;
    let mut trace = 0.0f64;
    let mut weights = 0.0f64;
    let mut charpoly_gap = 0.0f64;
    for m in &eig.manifolds {
        let h = &m.hamiltonian;
        let scale = h.max_abs().max(1.0);
        herm = herm.max(h.max_abs_diff(&h.adjoint()) / scale);
        let n = m.len();
        let phi = &m.transform;
        unitary = unitary.max((&phi.adjoint() * phi).max_abs_diff(&ComplexMatrix::identity(n)));
        trace = trace.max((m.energies.iter().sum::<f64>() - h.trace().re).abs() / scale);
        let wt = m.weights();
        weights = weights.max(max((0..n).map(|k| ((0..n).map(|c| wt[c][k]).sum::<f64>() - 1.0).abs())));
        let roots = charpoly::hermitian_eigenvalues(h, 40_000);
        charpoly_gap = charpoly_gap.max(if roots.len() == n {
            max(roots.iter().zip(&m.energies).map(|(a, b)| (a - b).abs() / scale))
        } else {
            f64::INFINITY
        });
    }
    s.record("hamiltonian is Hermitian", herm, 1e-14);
    s.record("eigenvectors are orthonormal", unitary, 1e-10);
    s.record("eigenvalues preserve the trace", trace, 1e-12);
    s.record("eigenvector weights sum to one", weights, 1e-10);
    s.record("Jacobi eigenvalues match characteristic-polynomial roots", charpoly_gap, 1e-8);

    let bosonic = SystemParams { exchange: ExchangeConvention::Bosonic, ..p.clone() };
    let terms = second_quantization::hamiltonian_terms(&bosonic);
    let mut ladder = 0.0f64;
    for manifold in 0..=2 {
        let basis = enumerate_basis(p.n_modes(), manifold)?;
        let h = build_hamiltonian(&bosonic, manifold)?;
        let oracle = second_quantization::matrix(&terms, &basis);
        for (i, row) in oracle.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                ladder = ladder.max((h[(i, j)] - C64::new(x, 0.0)).norm());
            }
        }
    }
    s.record("bosonic Hamiltonian matches ladder-operator algebra", ladder, 1e-10);

    let d = p.cavity_dipole();
    let d2 = (d * d).max(f64::MIN_POSITIVE);
    let n1 = eig.manifolds[1].len();
    let n2 = eig.manifolds[2].len();
    let sum01: f64 = (0..n1).map(|k| eig.dipole_01[(k, 0)].norm_sqr()).sum();
    s.record("ground→one dipole sum rule", (sum01 - d * d).abs() / d2, 1e-10);
    let sum12: f64 = (0..n2).flat_map(|f| (0..n1).map(move |k| (f, k))).map(|(f, k)| eig.dipole_12[(f, k)].norm_sqr()).sum();
    let expect12 = d * d * (p.n_modes() + 2) as f64;
    s.record("one→two dipole weight", (sum12 - expect12).abs() / d2, 1e-10);
    Ok(())
}

fn kinetics_residuals(relax: &RelaxationData, beta: f64) -> Result<[f64; 5], CliError> {
    let (mut col, mut db, mut fixed, mut prob, mut routes) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for m in 1..3 {
        let r = &relax.manifolds[m];
        let n = r.energies.len();
        let norm = max(r.transport.iter().flatten().map(|x| x.abs())).max(f64::MIN_POSITIVE);
        for b in 0..n {
            col = col.max((0..n).map(|a| r.transport[a][b]).sum::<f64>().abs() / norm);
            for a in 0..n {
                let (lo, hi) = if r.energies[a] <= r.energies[b] { (a, b) } else { (b, a) };
                let (up, down) = (r.transport[hi][lo], r.transport[lo][hi]);
                if a == b || up.abs() < 1e-9 * norm || down.abs() < 1e-9 * norm {
                    continue;
                }
                let expect = (-beta * (r.energies[hi] - r.energies[lo])).exp();
                db = db.max((up / down / expect - 1.0).abs());
            }
        }
        let thermal = boltzmann(&r.energies, relax.temperature);
        fixed = fixed.max(max((0..n).map(|a| (0..n).map(|b| r.transport[a][b] * thermal[b]).sum::<f64>().abs() / norm)));
        for t in [100.0, 1000.0, 10_000.0] {
            let p = population_propagator(relax, m, t)?;
            prob = prob.max(max((0..n).map(|b| ((0..n).map(|a| p[(a, b)].re).sum::<f64>() - 1.0).abs())));
            if let Ok(q) = population_propagator_spectral(relax, m, t) {
                routes = routes.max(p.max_abs_diff(&q));
            }
        }
    }
    Ok([col, db, fixed, prob, routes])
}

fn kinetics_checks(s: &mut Suite, relax: &RelaxationData, bath: &BathSpec) -> Result<(), CliError> {
    let [col, db, fixed, prob, routes] = kinetics_residuals(relax, bath.beta())?;
    s.record("transport columns sum to zero (relative to ‖K‖)", col, 1e-10);
    s.record("transfer rates obey detailed balance", db, 1e-6);
    s.record("Boltzmann populations are stationary (relative to ‖K‖)", fixed, 1e-10);
    s.record("total population conserved to 10 ps", prob, 1e-8);
    s.record("Padé and spectral propagators agree", routes, 1e-9);

    let e = correlation_expansion(bath)?;
    let beta = bath.beta();
    let mut fdt = 0.0f64;
    let mut balance = 0.0f64;
    for w in [5.0, 17.0, 61.6, 97.6, 250.0, 721.0, 1500.0] {
        let exact = spectral_density(w, bath) / (1.0 - (-beta * w).exp());
        fdt = fdt.max((e.rate(w) - exact).abs() / exact);
        balance = balance.max((e.rate(-w) / e.rate(w) / (-beta * w).exp() - 1.0).abs());
    }
    s.record("Re M⁺(ω) equals J(ω)(n(ω)+1)", fdt, 1e-6);
    s.record("Re M⁺(−ω) = e^{−βω} Re M⁺(ω)", balance, 1e-6);
    Ok(())
}

fn zero_bath_check(s: &mut Suite, eig: &EigenSystem, bath: &BathSpec) -> Result<(), CliError> {
    let quiet = BathSpec { mode_weights: vec![0.0; bath.mode_weights.len()], ..bath.clone() };
    let relax = relaxation_data(eig, &quiet)?;
    let rates = max(relax.manifolds.iter().flat_map(|m| {
        m.transport.iter().flatten().chain(&m.linewidths).chain(m.dephasing.iter().flatten()).map(|x| x.abs()).collect::<Vec<_>>()
    }));
    s.record("uncoupled bath gives zero rates", rates, 0.0);
    let mut phase = 0.0f64;
    for (a, b) in [(StateRef::new(1, 0), StateRef::GROUND), (StateRef::new(2, 1), StateRef::new(1, 0))] {
        let t = 123.0;
        let g = green_function(&relax, GreenKind::InterCoherence, [a, b, a, b], t)?;
        let w = relax.energy(a) - relax.energy(b);
        let expect = C64::from_polar(1.0, -w * t * RAD_PER_FS_PER_WAVENUMBER);
        phase = phase.max((g - expect).norm());
    }
    s.record("uncoupled bath gives undamped coherences", phase, 1e-12);
    Ok(())
}

fn oracle_deviation(technique: Technique, eig: &EigenSystem, relax: &RelaxationData, delay: f64) -> Result<f64, CliError> {
    let pulses = PulseSet::impulsive(technique, delay);
    let terms = match technique {
        Technique::Dqc => dqc_pathways(eig, relax, &pulses)?,
        Technique::Pe => pe_pathways(eig, relax, &pulses)?,
    };
    let center1 = relax.energy(StateRef::new(1, 0));
    let center2 = relax.energy(StateRef::new(2, 0));
    let span = |c: f64| (0..9).map(|k| c - 160.0 + 40.0 * k as f64).collect::<Vec<_>>();
    let wb = span(center1);
    let (display, physical) = match technique {
        Technique::Dqc => (span(center2), span(center2)),
        Technique::Pe => (span(center1), span(center1).iter().map(|x| -x).collect()),
    };
    let gamma = relax.manifolds[1..]
        .iter()
        .flat_map(|m| m.linewidths.iter().copied())
        .fold(f64::INFINITY, f64::min)
        .max(vibpol::response::LINEWIDTH_FLOOR);
    let t_max = 14.0 / (0.5 * gamma * RAD_PER_FS_PER_WAVENUMBER);
    let points = (2 * (t_max / 2.0).ceil() as usize + 1).min(4001);
    let response = ResponseFunction::new(eig, relax, &pulses)?;
    let time = fourier::half_fourier_2d(|a, b| response.at(a, b), &physical, &wb, t_max, points);
    let freq: Vec<Vec<C64>> = display.iter().map(|&a| wb.iter().map(|&b| evaluate(&terms, technique, a, b)).collect()).collect();
    let top = |g: &Vec<Vec<C64>>| max(g.iter().flatten().map(|z| z.norm())).max(f64::MIN_POSITIVE);
    let (tf, tt) = (top(&freq), top(&time));
    Ok(max(freq.iter().flatten().zip(time.iter().flatten()).map(|(f, t)| (f / tf - t / tt).norm())))
}

fn oracle_checks(s: &mut Suite, eig: &EigenSystem, relax: &RelaxationData) -> Result<(), CliError> {
    let n1 = eig.manifolds[1].len();
    let n2 = eig.manifolds[2].len();
    let one = if n1 > 1 { vec![0, n1 - 1] } else { vec![0] };
    let two = vec![n2 / 2];
    let eig = eig.restricted(&one, &two)?;
    let relax = relax.restricted(&one, &two)?;
    s.record("PE spectrum matches transformed time-domain response", oracle_deviation(Technique::Pe, &eig, &relax, 50.0)?, 1e-3);
    s.record("DQC spectrum matches transformed time-domain response", oracle_deviation(Technique::Dqc, &eig, &relax, 20.0)?, 1e-3);
    Ok(())
}

fn random_checks(s: &mut Suite, config: &RunConfig) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = [0.0f64; 5];
    for _ in 0..config.verify.random_sets {
        let mut p = config.system.clone();
        let n = p.n_modes();
        for e in p.vibron_energies.iter_mut() {
            *e += rng.gen_range(-50.0..50.0);
        }
        for i in 0..n {
            for j in 0..i {
                let x = p.hopping[i][j] + rng.gen_range(-10.0..10.0);
                p.hopping[i][j] = x;
                p.hopping[j][i] = x;
            }
        }
        for g in p.cavity_couplings.iter_mut() {
            *g = (*g * rng.gen_range(0.2..2.0)).max(0.0);
        }
        p.cavity_frequency += rng.gen_range(-50.0..50.0);
        let mut bath = config.bath.clone();
        bath.temperature *= rng.gen_range(0.3..2.0);
        bath.overdamped_width *= rng.gen_range(0.5..2.0);
        let eig = diagonalize(&p)?;
        let relax = relaxation_data(&eig, &bath)?;
        let r = kinetics_residuals(&relax, bath.beta())?;
        for (w, x) in worst.iter_mut().zip(r) {
            *w = w.max(x);
        }
    }
    let label = format!("over {} random parameter sets (seed {})", config.verify.random_sets, config.seed);
    s.record(&format!("column sums {label}"), worst[0], 1e-10);
    s.record(&format!("detailed balance {label}"), worst[1], 1e-6);
    s.record(&format!("population conservation {label}"), worst[3], 1e-8);
    Ok(())
}

pub fn run(config: &RunConfig, dir: &Path) -> Result<Vec<Check>, CliError> {
    let eig = diagonalize(&config.system)?;
    let relax = relaxation_data(&eig, &config.bath)?;
    let mut suite = Suite { checks: Vec::new() };
    spectrum_checks(&mut suite, &config.system, &eig)?;
    kinetics_checks(&mut suite, &relax, &config.bath)?;
    zero_bath_check(&mut suite, &eig, &config.bath)?;
    oracle_checks(&mut suite, &eig, &relax)?;
    random_checks(&mut suite, config)?;

    #[derive(Serialize)]
    struct Report<'a> {
        generator: &'static str,
        config: &'a RunConfig,
        checks: &'a [Check],
    }
    let mut w = Writer::new(dir)?;
    w.json(
        "verify.json",
        &Report { generator: concat!("vibpol ", env!("CARGO_PKG_VERSION")), config, checks: &suite.checks },
    )?;
    Ok(suite.checks)
}
