use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::{GridSpec, PulseSet, SpectrumGrid, Technique, LINEWIDTH_FLOOR};
use crate::error::{Error, Result};
use crate::kinetics::{GreenTensor, RelaxationData};
use crate::model::{EigenSystem, StateRef};
use crate::units::RAD_PER_FS_PER_WAVENUMBER;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathwayFamily {
    /// DQC pathway whose third interaction acts on the bra; emission from the
    /// two-polariton coherence.
    DqcTwoQuantumEmission,
    /// DQC pathway whose third interaction acts on the ket; emission from the
    /// one-polariton coherence.
    DqcOneQuantumEmission,
    GroundStateBleach,
    StimulatedEmission,
    ExcitedStateAbsorption,
}

/// `amplitude / ((Ωa − pole_a)(Ωb − pole_b))`, where Ωa is Ω2 (DQC) or the
/// physical (negative) Ω1 (PE) and Ωb is Ω3.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PathwayTerm {
    pub family: PathwayFamily,
    pub amplitude: C64,
    pub pole_a: C64,
    pub pole_b: C64,
}

fn floored(z: C64) -> C64 {
    C64::new(z.re, -(-z.im).max(LINEWIDTH_FLOOR))
}

/// i³ from the response function times i/(c(Ω − z)) from each half-Fourier
/// transform over fs.
fn prefactor() -> C64 {
    C64::new(0.0, 1.0 / (RAD_PER_FS_PER_WAVENUMBER * RAD_PER_FS_PER_WAVENUMBER))
}

fn check_shapes(eig: &EigenSystem, relax: &RelaxationData) -> Result<(usize, usize)> {
    let n1 = eig.manifolds[1].len();
    let n2 = eig.manifolds[2].len();
    if eig.dipole_01.dims() != (n1, 1) || eig.dipole_12.dims() != (n2, n1) {
        return Err(Error::Contract("dipole matrices do not match manifold sizes".into()));
    }
    if relax.manifolds.len() != 3 || relax.manifolds[1].energies.len() != n1 || relax.manifolds[2].energies.len() != n2 {
        return Err(Error::Contract("relaxation data do not match the eigensystem".into()));
    }
    Ok((n1, n2))
}

/// DQC pathway terms, summed over p1′ = a, p1″ = f, p2′ = b.
pub fn dqc_pathways(eig: &EigenSystem, relax: &RelaxationData, pulses: &PulseSet) -> Result<Vec<PathwayTerm>> {
    if pulses.technique != Technique::Dqc {
        return Err(Error::Contract("dqc_pathways needs a DQC pulse set".into()));
    }
    pulses.validate()?;
    let (n1, n2) = check_shapes(eig, relax)?;
    let g = StateRef::GROUND;
    let one = |k| StateRef::new(1, k);
    let two = |k| StateRef::new(2, k);
    let mu10 = |k: usize| eig.dipole_01[(k, 0)];
    let mu21 = |f: usize, k: usize| eig.dipole_12[(f, k)];
    let t1 = pulses.delay_fs * RAD_PER_FS_PER_WAVENUMBER;
    let mut terms = Vec::with_capacity(2 * n1 * n1 * n2);
    for a in 0..n1 {
        let za0 = relax.resonance(one(a), g);
        let w_a0 = relax.energy(one(a));
        let t1_factor = (-C64::new(0.0, 1.0) * za0 * t1).exp();
        for f in 0..n2 {
            let zf0 = floored(relax.resonance(two(f), g));
            let w_fa = relax.energy(two(f)) - w_a0;
            let pump = pulses.envelope(0, w_a0) * pulses.envelope(1, w_fa);
            for b in 0..n1 {
                let w_b0 = relax.energy(one(b));
                let w_fb = relax.energy(two(f)) - w_b0;
                let dip = mu21(f, b).conj() * mu10(b).conj() * mu21(f, a) * mu10(a);
                let common = prefactor() * dip * pump * t1_factor;
                terms.push(PathwayTerm {
                    family: PathwayFamily::DqcTwoQuantumEmission,
                    amplitude: -common * pulses.envelope(2, w_b0) * pulses.envelope(3, w_fb),
                    pole_a: zf0,
                    pole_b: floored(relax.resonance(two(f), one(b))),
                });
                terms.push(PathwayTerm {
                    family: PathwayFamily::DqcOneQuantumEmission,
                    amplitude: common * pulses.envelope(2, w_fb) * pulses.envelope(3, w_b0),
                    pole_a: zf0,
                    pole_b: floored(relax.resonance(one(b), g)),
                });
            }
        }
    }
    Ok(terms)
}

/// PE (rephasing) pathway terms at the pulse set's t2.
///
/// Pulse 1 prepares ρ_{0a}, pulse 2 ρ_{ba}; transport during t2 maps it to
/// ρ_{dc} through G_{dc,ba}; pulse 3 then reads it out by stimulated emission
/// (ρ_{d0}) or excited-state absorption (ρ_{fc}).
pub fn pe_pathways(eig: &EigenSystem, relax: &RelaxationData, pulses: &PulseSet) -> Result<Vec<PathwayTerm>> {
    if pulses.technique != Technique::Pe {
        return Err(Error::Contract("pe_pathways needs a PE pulse set".into()));
    }
    pulses.validate()?;
    let (n1, n2) = check_shapes(eig, relax)?;
    let green = GreenTensor::new(relax, 1, pulses.delay_fs)?;
    let g = StateRef::GROUND;
    let one = |k| StateRef::new(1, k);
    let two = |k| StateRef::new(2, k);
    let mu10 = |k: usize| eig.dipole_01[(k, 0)];
    let mu21 = |f: usize, k: usize| eig.dipole_12[(f, k)];
    let w1 = |k: usize| relax.energy(one(k));
    let mut terms = Vec::new();
    for a in 0..n1 {
        let z0a = floored(relax.resonance(g, one(a)));
        for d in 0..n1 {
            let dip = mu10(d).conj() * mu10(d) * mu10(a) * mu10(a).conj();
            let env = pulses.envelope(0, w1(a)) * pulses.envelope(1, w1(a)) * pulses.envelope(2, w1(d)) * pulses.envelope(3, w1(d));
            terms.push(PathwayTerm {
                family: PathwayFamily::GroundStateBleach,
                amplitude: prefactor() * dip * env,
                pole_a: z0a,
                pole_b: floored(relax.resonance(one(d), g)),
            });
        }
        for b in 0..n1 {
            let pump = mu10(b) * mu10(a).conj() * pulses.envelope(0, w1(a)) * pulses.envelope(1, w1(b));
            for c in 0..n1 {
                for d in 0..n1 {
                    let gdcba = green.get(d, c, b, a);
                    if gdcba == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let se = mu10(d).conj() * mu10(c) * pulses.envelope(2, w1(c)) * pulses.envelope(3, w1(d));
                    terms.push(PathwayTerm {
                        family: PathwayFamily::StimulatedEmission,
                        amplitude: prefactor() * pump * gdcba * se,
                        pole_a: z0a,
                        pole_b: floored(relax.resonance(one(d), g)),
                    });
                    for f in 0..n2 {
                        let wf = relax.energy(two(f));
                        let esa = mu21(f, c).conj() * mu21(f, d) * pulses.envelope(2, wf - w1(d)) * pulses.envelope(3, wf - w1(c));
                        terms.push(PathwayTerm {
                            family: PathwayFamily::ExcitedStateAbsorption,
                            amplitude: -prefactor() * pump * gdcba * esa,
                            pole_a: z0a,
                            pole_b: floored(relax.resonance(two(f), one(c))),
                        });
                    }
                }
            }
        }
    }
    Ok(terms)
}

/// Signal at one grid point; for PE `omega_a` is the displayed (positive) Ω1.
pub fn evaluate(terms: &[PathwayTerm], technique: Technique, omega_a: f64, omega_b: f64) -> C64 {
    let wa = match technique {
        Technique::Dqc => omega_a,
        Technique::Pe => -omega_a,
    };
    terms
        .iter()
        .map(|t| t.amplitude / ((wa - t.pole_a) * (omega_b - t.pole_b)))
        .sum()
}

fn render(technique: Technique, terms: &[PathwayTerm], pulses: &PulseSet, grid: &GridSpec) -> Result<SpectrumGrid> {
    grid.validate()?;
    let ax1 = grid.axis1.values();
    let ax2 = grid.axis2.values();
    let rows: Vec<Vec<C64>> = ax1
        .par_iter()
        .map(|&x| ax2.iter().map(|&y| evaluate(terms, technique, x, y)).collect())
        .collect();
    let mut values: Vec<C64> = rows.into_iter().flatten().collect();
    let norm = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if norm > 0.0 {
        values.iter_mut().for_each(|z| *z /= norm);
    }
    let mut warnings = Vec::new();
    let min_gamma = terms
        .iter()
        .flat_map(|t| [-t.pole_a.im, -t.pole_b.im])
        .fold(f64::INFINITY, f64::min);
    for (label, axis) in [("axis1", &grid.axis1), ("axis2", &grid.axis2)] {
        if axis.spacing() > min_gamma {
            warnings.push(format!(
                "{label} spacing {:.3} cm⁻¹ exceeds the narrowest linewidth {:.3} cm⁻¹",
                axis.spacing(),
                min_gamma
            ));
        }
    }
    let (l1, l2) = technique.axis_labels();
    Ok(SpectrumGrid {
        technique,
        axis1_label: l1.into(),
        axis2_label: l2.into(),
        axis1: ax1,
        axis2: ax2,
        values,
        normalization: norm,
        delay_fs: pulses.delay_fs,
        linewidth_floor: LINEWIDTH_FLOOR,
        warnings,
    })
}

/// DQC spectrum S(Ω2, Ω3) at the pulse set's t1.
pub fn dqc_spectrum(eig: &EigenSystem, relax: &RelaxationData, pulses: &PulseSet, grid: &GridSpec) -> Result<SpectrumGrid> {
    let terms = dqc_pathways(eig, relax, pulses)?;
    render(Technique::Dqc, &terms, pulses, grid)
}

/// PE spectrum S(Ω1, Ω3) at the pulse set's t2, Ω1 displayed positive.
pub fn pe_spectrum(eig: &EigenSystem, relax: &RelaxationData, pulses: &PulseSet, grid: &GridSpec) -> Result<SpectrumGrid> {
    let terms = pe_pathways(eig, relax, pulses)?;
    render(Technique::Pe, &terms, pulses, grid)
}
