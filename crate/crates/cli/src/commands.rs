use std::path::Path;

use serde::Serialize;
use vibpol::bath::{correlation_expansion, spectral_density, Branch};
use vibpol::kinetics::{boltzmann, propagate_populations, relaxation_data};
use vibpol::model::{diagonalize, scan_detuning};
use vibpol::response::{dqc_spectrum, local_maxima, pe_spectrum, Peak};
use vibpol::{CaseSpec, EigenSystem, PulseSet, RelaxationData, StateRef, Technique};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{heatmap_script, hecto, num, Csv, Writer};

const GENERATOR: &str = concat!("vibpol ", env!("CARGO_PKG_VERSION"));

#[derive(Serialize)]
struct Meta<'a, T: Serialize> {
    generator: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

fn meta<'a, T: Serialize>(command: &'a str, config: &'a RunConfig, body: T) -> Meta<'a, T> {
    Meta { generator: GENERATOR, command, config, body }
}

fn label(manifold: usize, index: usize) -> String {
    StateRef::new(manifold, index).to_string()
}

pub fn eigen(config: &RunConfig, dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    let eig = diagonalize(&config.system)?;
    let mut w = Writer::new(dir)?;

    let mut energies = Csv::new(&["manifold", "state", "energy_cm1", "energy_1e2cm1", "dominant_configuration"]);
    let mut weights = Csv::new(&["manifold", "state", "configuration", "weight"]);
    for m in &eig.manifolds {
        let wt = m.weights();
        for k in 0..m.len() {
            let dominant = (0..m.basis.len()).max_by(|&a, &b| wt[a][k].total_cmp(&wt[b][k])).unwrap_or(0);
            energies.row(&[
                m.index.to_string(),
                label(m.index, k),
                num(m.energies[k]),
                hecto(m.energies[k]),
                m.basis[dominant].label(),
            ]);
            for (c, config_state) in m.basis.iter().enumerate() {
                weights.row(&[m.index.to_string(), label(m.index, k), config_state.label(), num(wt[c][k])]);
            }
        }
    }
    w.text("energies.csv", &energies.finish())?;
    w.text("weights.csv", &weights.finish())?;

    let mut dipoles = Csv::new(&["lower", "upper", "re", "im", "abs"]);
    for k in 0..eig.manifolds[1].len() {
        let d = eig.dipole_01[(k, 0)];
        dipoles.row(&[label(0, 0), label(1, k), num(d.re), num(d.im), num(d.norm())]);
    }
    for k in 0..eig.manifolds[1].len() {
        for f in 0..eig.manifolds[2].len() {
            let d = eig.dipole_12[(f, k)];
            dipoles.row(&[label(1, k), label(2, f), num(d.re), num(d.im), num(d.norm())]);
        }
    }
    w.text("dipoles.csv", &dipoles.finish())?;

    let gaps = eig.gap_table();
    let mut table = Csv::new(&["one_state", "two_state", "gap_cm1", "gap_1e2cm1"]);
    for (j, row) in gaps.iter().enumerate() {
        for (k, g) in row.iter().enumerate() {
            table.row(&[label(1, j), label(2, k), num(*g), hecto(*g)]);
        }
    }
    w.text("gaps.csv", &table.finish())?;

    #[derive(Serialize)]
    struct Body<'a> {
        manifolds: &'a [vibpol::model::Manifold],
        gap_table: Vec<Vec<f64>>,
    }
    w.json("eigen.json", &meta("eigen", config, Body { manifolds: &eig.manifolds, gap_table: gaps }))?;
    Ok(w.files().to_vec())
}

fn system(config: &RunConfig) -> Result<(EigenSystem, RelaxationData), CliError> {
    let eig = diagonalize(&config.system)?;
    let relax = relaxation_data(&eig, &config.bath)?;
    Ok((eig, relax))
}

pub fn populations(
    config: &RunConfig,
    dir: &Path,
    manifold: Option<usize>,
    initial: Option<usize>,
) -> Result<Vec<std::path::PathBuf>, CliError> {
    let (_, relax) = system(config)?;
    let manifolds: Vec<usize> = match manifold {
        Some(m @ (1 | 2)) => vec![m],
        Some(m) => return Err(CliError::Validation(format!("--manifold must be 1 or 2, got {m}"))),
        None => vec![1, 2],
    };
    if initial.is_some() && manifold.is_none() {
        return Err(CliError::Validation("--initial needs --manifold".into()));
    }
    let p = &config.populations;
    let steps = (p.t_max_fs / p.step_fs).round() as usize;
    let times: Vec<f64> = (0..=steps).map(|k| k as f64 * p.step_fs).collect();
    let mut w = Writer::new(dir)?;

    #[derive(Serialize)]
    struct Run {
        manifold: usize,
        initial: String,
        file: String,
        final_populations: Vec<f64>,
    }
    let mut runs = Vec::new();
    let mut thermal = Vec::new();
    let mut script = String::from("set terminal pngcairo size 1200,800 enhanced\nset datafile separator ','\nset key autotitle columnhead\nset xlabel 't (fs)'\nset ylabel 'population'\nset yrange [0:1]\n");
    for &m in &manifolds {
        let n = relax.manifolds[m].energies.len();
        let starts: Vec<usize> = match initial {
            Some(k) if (1..=n).contains(&k) => vec![k - 1],
            Some(k) => return Err(CliError::Validation(format!("--initial must be in 1..={n} for manifold {m}, got {k}"))),
            None => (0..n).collect(),
        };
        thermal.push((m, boltzmann(&relax.manifolds[m].energies, relax.temperature)));
        script.push_str(&format!("set output 'manifold{m}.png'\nset multiplot layout {},{}\n", starts.len().div_ceil(3), starts.len().min(3)));
        for start in starts {
            let traj = propagate_populations(&relax, m, start, &times)?;
            let mut header = vec!["time_fs".to_string()];
            header.extend((0..n).map(|a| label(m, a)));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut csv = Csv::new(&header);
            for (t, row) in traj.times.iter().zip(&traj.populations) {
                let mut cells = vec![num(*t)];
                cells.extend(row.iter().map(|x| num(*x)));
                csv.row(&cells);
            }
            let file = format!("manifold{m}_initial{}.csv", start + 1);
            w.text(&file, &csv.finish())?;
            script.push_str(&format!(
                "set title 'initial {}'\nplot for [k=2:{}] '{file}' using 1:k with lines lw 2\n",
                label(m, start),
                n + 1
            ));
            runs.push(Run {
                manifold: m,
                initial: label(m, start),
                file,
                final_populations: traj.populations.last().cloned().unwrap_or_default(),
            });
        }
        script.push_str("unset multiplot\n");
    }
    w.text("populations.gp", &script)?;

    #[derive(Serialize)]
    struct Body<'a> {
        times_fs: usize,
        boltzmann: Vec<(usize, Vec<f64>)>,
        transport: Vec<&'a Vec<Vec<f64>>>,
        runs: Vec<Run>,
    }
    let body = Body {
        times_fs: times.len(),
        boltzmann: thermal,
        transport: manifolds.iter().map(|&m| &relax.manifolds[m].transport).collect(),
        runs,
    };
    w.json("populations.json", &meta("populations", config, body))?;
    Ok(w.files().to_vec())
}

#[derive(Serialize)]
struct PeakRecord {
    axis1_cm1: f64,
    axis2_cm1: f64,
    axis1_1e2cm1: f64,
    axis2_1e2cm1: f64,
    magnitude: f64,
}

impl From<&Peak> for PeakRecord {
    fn from(p: &Peak) -> Self {
        Self {
            axis1_cm1: p.axis1,
            axis2_cm1: p.axis2,
            axis1_1e2cm1: p.axis1 / 100.0,
            axis2_1e2cm1: p.axis2 / 100.0,
            magnitude: p.magnitude,
        }
    }
}

pub fn spectra(config: &RunConfig, dir: &Path, technique: Technique, cases: &[CaseSpec]) -> Result<Vec<std::path::PathBuf>, CliError> {
    let (eig, relax) = system(config)?;
    let (grid, _) = config.cases(technique);
    let mut w = Writer::new(dir)?;
    let (l1, l2) = technique.axis_labels();
    for case in cases {
        let pulses: PulseSet = case.resolve(technique, &eig)?;
        let spectrum = match technique {
            Technique::Dqc => dqc_spectrum(&eig, &relax, &pulses, grid)?,
            Technique::Pe => pe_spectrum(&eig, &relax, &pulses, grid)?,
        };
        let scale = if config.output.normalize { 1.0 } else { spectrum.normalization };
        let c1 = format!("{l1}_cm1");
        let c2 = format!("{l2}_cm1");
        let d1 = format!("{l1}_1e2cm1");
        let d2 = format!("{l2}_1e2cm1");
        let mut csv = Csv::new(&[&c1, &c2, &d1, &d2, "re", "im", "abs"]);
        let (n1, n2) = spectrum.dims();
        for i in 0..n1 {
            for j in 0..n2 {
                let z = spectrum.get(i, j) * scale;
                let (x, y) = (spectrum.axis1[i], spectrum.axis2[j]);
                csv.row(&[num(x), num(y), hecto(x), hecto(y), num(z.re), num(z.im), num(z.norm())]);
            }
        }
        let stem = format!("case_{}", case.name);
        w.text(&format!("{stem}.csv"), &csv.finish())?;
        let title = format!("{} case {}: |S|", technique.name(), case.name);
        w.text(
            &format!("{stem}.gp"),
            &heatmap_script(&format!("{stem}.csv"), &format!("{stem}.png"), &title, l2, l1, (4, 3, 7)),
        )?;

        #[derive(Serialize)]
        struct Body<'a> {
            technique: &'static str,
            case: &'a CaseSpec,
            pulses: &'a PulseSet,
            normalized: bool,
            normalization: f64,
            linewidth_floor: f64,
            peaks: Vec<PeakRecord>,
            warnings: &'a [String],
        }
        let peaks = local_maxima(&spectrum, 1e-3).iter().take(32).map(PeakRecord::from).collect();
        let body = Body {
            technique: technique.name(),
            case,
            pulses: &pulses,
            normalized: config.output.normalize,
            normalization: spectrum.normalization,
            linewidth_floor: spectrum.linewidth_floor,
            peaks,
            warnings: &spectrum.warnings,
        };
        w.json(&format!("{stem}.json"), &meta(technique.name(), config, body))?;
        for warning in &spectrum.warnings {
            eprintln!("warning: {} case {}: {warning}", technique.name(), case.name);
        }
    }
    Ok(w.files().to_vec())
}

pub fn scan(config: &RunConfig, dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    let s = &config.scan;
    let result = scan_detuning(&config.system, s.cavity_min, s.cavity_max, s.points, &s.couplings)?;
    let n1 = result.one.first().and_then(|r| r.first()).map_or(0, Vec::len);
    let n2 = result.two.first().and_then(|r| r.first()).map_or(0, Vec::len);
    let mut header = vec!["coupling_cm1".to_string(), "cavity_cm1".to_string()];
    header.extend((0..n1).map(|k| label(1, k)));
    header.extend((0..n2).map(|k| label(2, k)));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&header);
    for (g, (one, two)) in result.couplings.iter().zip(result.one.iter().zip(&result.two)) {
        for (wc, (e1, e2)) in result.cavity_frequencies.iter().zip(one.iter().zip(two)) {
            let mut cells = vec![num(*g), num(*wc)];
            cells.extend(e1.iter().chain(e2).map(|x| num(*x)));
            csv.row(&cells);
        }
    }
    let mut w = Writer::new(dir)?;
    w.text("scan.csv", &csv.finish())?;
    let mut gp = String::from("set terminal pngcairo size 1500,900 enhanced\nset output 'scan.png'\nset datafile separator ','\nset xlabel '{/Symbol W}_c (cm^{-1})'\nset ylabel 'E (cm^{-1})'\n");
    gp.push_str(&format!("set multiplot layout 2,{}\n", result.couplings.len().max(1)));
    for (block, first, last) in [("one-polariton", 3, 2 + n1), ("two-polariton", 3 + n1, 2 + n1 + n2)] {
        for g in &result.couplings {
            gp.push_str(&format!(
                "set title '{block}, g = {g} cm^{{-1}}'\nplot for [k={first}:{last}] 'scan.csv' every ::1 using ($1=={g} ? $2 : 1/0):k with lines notitle\n"
            ));
        }
    }
    gp.push_str("unset multiplot\n");
    w.text("scan.gp", &gp)?;
    w.json("scan.json", &meta("scan", config, &result))?;
    Ok(w.files().to_vec())
}

pub fn bath(config: &RunConfig, dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    let spec = &config.bath;
    let expansion = correlation_expansion(spec)?;
    let b = &config.bath_dump;
    let mut density = Csv::new(&["omega_cm1", "j_total", "j_overdamped", "j_structured", "re_m_plus", "im_m_plus"]);
    for k in 0..b.omega_points {
        let w = b.omega_max * k as f64 / (b.omega_points - 1) as f64;
        let m = expansion.relaxation(w, Branch::Plus);
        density.row(&[
            num(w),
            num(spectral_density(w, spec)),
            num(spec.overdamped_density(w)),
            num(spec.structured_density(w)),
            num(m.re),
            num(m.im),
        ]);
    }
    // Re C(t) diverges at t = 0 for an overdamped component, so start one step in
    let mut corr = Csv::new(&["t_fs", "re", "im"]);
    let dt = b.t_max_fs / (b.t_points - 1) as f64;
    for k in 1..b.t_points {
        let t = k as f64 * dt;
        let c = expansion.correlation(t);
        corr.row(&[num(t), num(c.re), num(c.im)]);
    }
    let mut w = Writer::new(dir)?;
    w.text("spectral_density.csv", &density.finish())?;
    w.text("correlation.csv", &corr.finish())?;
    w.text(
        "bath.gp",
        "set terminal pngcairo size 1200,500 enhanced\nset output 'bath.png'\nset datafile separator ','\nset key autotitle columnhead\nset multiplot layout 1,2\nset xlabel '{/Symbol w} (cm^{-1})'\nplot for [k=2:4] 'spectral_density.csv' using 1:k with lines lw 2\nset xlabel 't (fs)'\nplot for [k=2:3] 'correlation.csv' using 1:k with lines lw 2\nunset multiplot\n",
    )?;

    #[derive(Serialize)]
    struct Body {
        exponential_terms: usize,
        matsubara_terms: usize,
        re_m_plus_at_zero: f64,
        correlation_at_zero: Option<(f64, f64)>,
    }
    let body = Body {
        exponential_terms: expansion.terms.len(),
        matsubara_terms: expansion.matsubara_terms,
        re_m_plus_at_zero: expansion.rate(0.0),
        correlation_at_zero: expansion.correlation_at_zero().ok().map(|c| (c.re, c.im)),
    };
    w.json("bath.json", &meta("bath", config, body))?;
    Ok(w.files().to_vec())
}
