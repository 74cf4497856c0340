//! Secular Redfield transport and dephasing, Green's functions and
//! population propagation.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::bath::{correlation_expansion, BathSpec, Branch, ExponentialExpansion};
use crate::error::{Error, Result};
use crate::model::{EigenSystem, StateRef};
use crate::numerics::{expm, general_eig, ComplexMatrix};
use crate::units::fs_to_wavenumber_time;

/// Relative threshold below which a wrong-signed rate is treated as noise.
const RATE_NOISE: f64 = 1e-10;

/// Bath coupling operators V^(m) = φ†·diag(n_m)·φ for every vibron mode.
pub fn coupling_operators(eig: &EigenSystem, manifold: usize) -> Result<Vec<ComplexMatrix>> {
    let m = manifold_ref(eig, manifold)?;
    let n_modes = eig.params.n_modes();
    Ok((0..n_modes)
        .map(|mode| {
            let diag: Vec<C64> = m.basis.iter().map(|c| C64::new(c.vibrons[mode] as f64, 0.0)).collect();
            occupation_in_eigenbasis(&m.transform, &diag)
        })
        .collect())
}

/// Cavity occupation operator in the polariton eigenbasis.
pub fn cavity_occupation_operator(eig: &EigenSystem, manifold: usize) -> Result<ComplexMatrix> {
    let m = manifold_ref(eig, manifold)?;
    let diag: Vec<C64> = m.basis.iter().map(|c| C64::new(c.cavity as f64, 0.0)).collect();
    Ok(occupation_in_eigenbasis(&m.transform, &diag))
}

fn occupation_in_eigenbasis(phi: &ComplexMatrix, diag: &[C64]) -> ComplexMatrix {
    let d = ComplexMatrix::from_diagonal(diag);
    &(&phi.adjoint() * &d) * phi
}

fn manifold_ref(eig: &EigenSystem, manifold: usize) -> Result<&crate::model::Manifold> {
    eig.manifolds
        .get(manifold)
        .ok_or_else(|| Error::Contract(format!("manifold {manifold} is not present")))
}

/// Tetradic Redfield kernel with only real parts of M^(±):
///
/// K_{ab,cd} = Σ_m λ_m [ δ_bd Σ_e V_ae V_ec M⁺(ω_ce) + δ_ac Σ_e V_de V_eb M⁻(ω_ed)
///                     − V_ac V_db (M⁺(ω_ca) + M⁻(ω_bd)) ],
///
/// acting as dρ_ab/dt = −iω_ab ρ_ab − Σ_cd K_{ab,cd} ρ_cd. Row index a·n+b,
/// column index c·n+d.
#[derive(Clone, Debug)]
pub struct RedfieldKernel {
    pub size: usize,
    pub matrix: ComplexMatrix,
}

impl RedfieldKernel {
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.matrix[(a * self.size + b, c * self.size + d)].re
    }
}

pub fn redfield_kernel(
    eig: &EigenSystem,
    bath: &ExponentialExpansion,
    weights: &[f64],
    manifold: usize,
) -> Result<RedfieldKernel> {
    let ops = coupling_operators(eig, manifold)?;
    if weights.len() != ops.len() {
        return Err(Error::invalid(
            "mode_weights",
            format!("expected {} weights, got {}", ops.len(), weights.len()),
        ));
    }
    let e = &manifold_ref(eig, manifold)?.energies;
    let n = e.len();
    let mplus = |w: f64| bath.relaxation(w, Branch::Plus).re;
    let mminus = |w: f64| bath.relaxation(w, Branch::Minus).re;
    let mut mp = vec![vec![0.0; n]; n];
    let mut mm = vec![vec![0.0; n]; n];
    for x in 0..n {
        for y in 0..n {
            mp[x][y] = mplus(e[x] - e[y]);
            mm[x][y] = mminus(e[x] - e[y]);
        }
    }
    let mut k = ComplexMatrix::zeros(n * n, n * n);
    for (v, &lam) in ops.iter().zip(weights) {
        if lam == 0.0 {
            continue;
        }
        let v = |i: usize, j: usize| v[(i, j)].re;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut acc = 0.0;
                        if b == d {
                            acc += (0..n).map(|x| v(a, x) * v(x, c) * mp[c][x]).sum::<f64>();
                        }
                        if a == c {
                            acc += (0..n).map(|x| v(d, x) * v(x, b) * mm[x][d]).sum::<f64>();
                        }
                        acc -= v(a, c) * v(d, b) * (mp[c][a] + mm[b][d]);
                        k[(a * n + b, c * n + d)] += C64::new(lam * acc, 0.0);
                    }
                }
            }
        }
    }
    Ok(RedfieldKernel { size: n, matrix: k })
}

/// Transport kernel, linewidths and dephasing rates of one manifold.
#[derive(Clone, Debug, Serialize)]
pub struct ManifoldRelaxation {
    pub energies: Vec<f64>,
    /// K with dρ_aa/dt = −Σ_b K_ab ρ_bb.
    pub transport: Vec<Vec<f64>>,
    /// γ_a = Σ_m λ_m Σ_e |V_ae|² Re M⁺(ω_ae).
    pub linewidths: Vec<f64>,
    /// Intra-manifold γ_ab = ½(K_aa + K_bb) + Σ_m λ_m (V_aa − V_bb)² Re M⁺(0).
    pub dephasing: Vec<Vec<f64>>,
}

impl ManifoldRelaxation {
    pub fn transport_matrix(&self) -> ComplexMatrix {
        let n = self.energies.len();
        ComplexMatrix::from_fn(n, n, |i, j| C64::new(self.transport[i][j], 0.0))
    }
}

/// Relaxation parameters of the ground, one- and two-polariton manifolds.
#[derive(Clone, Debug, Serialize)]
pub struct RelaxationData {
    pub temperature: f64,
    pub manifolds: Vec<ManifoldRelaxation>,
}

impl RelaxationData {
    pub fn energy(&self, s: StateRef) -> f64 {
        self.manifolds[s.manifold].energies[s.index]
    }

    pub fn linewidth(&self, s: StateRef) -> f64 {
        self.manifolds[s.manifold].linewidths[s.index]
    }

    /// γ_ab: intra-manifold dephasing within a manifold, the mean of the two
    /// state linewidths across manifolds, and zero for a == b.
    pub fn dephasing(&self, a: StateRef, b: StateRef) -> f64 {
        if a == b {
            0.0
        } else if a.manifold == b.manifold {
            self.manifolds[a.manifold].dephasing[a.index][b.index]
        } else {
            0.5 * (self.linewidth(a) + self.linewidth(b))
        }
    }

    /// z_ab = ω_ab − iγ_ab.
    pub fn resonance(&self, a: StateRef, b: StateRef) -> C64 {
        C64::new(self.energy(a) - self.energy(b), -self.dephasing(a, b))
    }

    /// Keeps the listed one- and two-polariton states. Transfer out of the
    /// subset is dropped and the transport diagonal rebuilt, so population is
    /// conserved within it.
    pub fn restricted(&self, one: &[usize], two: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for (m, keep) in [(1, one), (2, two)] {
            let src = &self.manifolds[m];
            crate::model::check_subset(keep, src.energies.len())?;
            let pick = |v: &Vec<Vec<f64>>| keep.iter().map(|&a| keep.iter().map(|&b| v[a][b]).collect()).collect();
            let mut transport: Vec<Vec<f64>> = pick(&src.transport);
            for b in 0..keep.len() {
                transport[b][b] = -(0..keep.len()).filter(|&a| a != b).map(|a| transport[a][b]).sum::<f64>();
            }
            out.manifolds[m] = ManifoldRelaxation {
                energies: keep.iter().map(|&a| src.energies[a]).collect(),
                transport,
                linewidths: keep.iter().map(|&a| src.linewidths[a]).collect(),
                dephasing: pick(&src.dephasing),
            };
        }
        Ok(out)
    }

    /// Smallest nonzero dephasing among transitions between adjacent manifolds.
    pub fn min_optical_linewidth(&self) -> f64 {
        let mut best = f64::INFINITY;
        for m in 1..self.manifolds.len() {
            for a in 0..self.manifolds[m].energies.len() {
                for b in 0..self.manifolds[m - 1].energies.len() {
                    best = best.min(self.dephasing(StateRef::new(m, a), StateRef::new(m - 1, b)));
                }
            }
        }
        best
    }
}

/// Assembles transport kernels and dephasing rates for manifolds 0–2.
pub fn transport_and_dephasing(
    eig: &EigenSystem,
    bath: &ExponentialExpansion,
    weights: &[f64],
    temperature: f64,
) -> Result<RelaxationData> {
    let mut manifolds = vec![ManifoldRelaxation {
        energies: eig.manifolds[0].energies.clone(),
        transport: vec![vec![0.0]],
        linewidths: vec![0.0],
        dephasing: vec![vec![0.0]],
    }];
    for manifold in 1..eig.manifolds.len() {
        let kernel = redfield_kernel(eig, bath, weights, manifold)?;
        let ops = coupling_operators(eig, manifold)?;
        let e = eig.manifolds[manifold].energies.clone();
        let n = e.len();
        let scale = (0..n)
            .map(|a| kernel.get(a, a, a, a).abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);

        let mut transport = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let mut k = kernel.get(a, a, b, b);
                if k > 0.0 {
                    if k > RATE_NOISE * scale {
                        return Err(Error::ModelConsistency(format!(
                            "negative transfer rate {b}→{a} in manifold {manifold}: K = {k:.3e} cm⁻¹"
                        )));
                    }
                    k = 0.0;
                }
                transport[a][b] = k;
            }
        }
        for b in 0..n {
            transport[b][b] = -(0..n).filter(|&a| a != b).map(|a| transport[a][b]).sum::<f64>();
        }

        let m0 = bath.rate(0.0);
        let mut linewidths = vec![0.0; n];
        for (v, &lam) in ops.iter().zip(weights) {
            for a in 0..n {
                linewidths[a] += lam * (0..n).map(|x| v[(a, x)].norm_sqr() * bath.rate(e[a] - e[x])).sum::<f64>();
            }
        }
        let mut dephasing = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let pure: f64 = ops
                    .iter()
                    .zip(weights)
                    .map(|(v, &lam)| lam * (v[(a, a)].re - v[(b, b)].re).powi(2) * m0)
                    .sum();
                dephasing[a][b] = 0.5 * (transport[a][a] + transport[b][b]) + pure;
            }
        }
        for (what, values) in [("linewidth", linewidths.iter().copied().collect::<Vec<_>>()),
            ("dephasing", dephasing.iter().flatten().copied().collect())]
        {
            if let Some(&bad) = values.iter().find(|&&x| x < -RATE_NOISE * scale) {
                return Err(Error::ModelConsistency(format!("negative {what} {bad:.3e} cm⁻¹ in manifold {manifold}")));
            }
        }
        linewidths.iter_mut().for_each(|x| *x = x.max(0.0));
        dephasing.iter_mut().flatten().for_each(|x| *x = x.max(0.0));
        manifolds.push(ManifoldRelaxation {
            energies: e,
            transport,
            linewidths,
            dephasing,
        });
    }
    Ok(RelaxationData {
        temperature,
        manifolds,
    })
}

/// Expands the bath and assembles relaxation data in one step.
pub fn relaxation_data(eig: &EigenSystem, spec: &BathSpec) -> Result<RelaxationData> {
    let expansion = correlation_expansion(spec)?;
    transport_and_dephasing(eig, &expansion, &spec.mode_weights, spec.temperature)
}

/// Populations of one manifold at each requested time.
#[derive(Clone, Debug, Serialize)]
pub struct PopulationTrajectory {
    pub manifold: usize,
    pub initial: usize,
    pub times: Vec<f64>,
    /// `populations[t][a]`.
    pub populations: Vec<Vec<f64>>,
}

/// Population transfer matrix exp(−K t) for t in fs.
pub fn population_propagator(data: &RelaxationData, manifold: usize, t_fs: f64) -> Result<ComplexMatrix> {
    let rel = data
        .manifolds
        .get(manifold)
        .ok_or_else(|| Error::Contract(format!("manifold {manifold} is not present")))?;
    let k = rel.transport_matrix().scale(C64::new(-1.0, 0.0));
    expm(&k, fs_to_wavenumber_time(t_fs))
}

/// ρ(t) = exp(−K t) ρ(0) with all population initially in `initial`.
pub fn propagate_populations(
    data: &RelaxationData,
    manifold: usize,
    initial: usize,
    times: &[f64],
) -> Result<PopulationTrajectory> {
    let n = data
        .manifolds
        .get(manifold)
        .ok_or_else(|| Error::Contract(format!("manifold {manifold} is not present")))?
        .energies
        .len();
    if initial >= n {
        return Err(Error::Contract(format!("initial state {initial} outside manifold {manifold} of size {n}")));
    }
    if times.windows(2).any(|w| w[1] < w[0]) || times.iter().any(|&t| !(t >= 0.0)) {
        return Err(Error::Contract("times must be non-negative and ascending".into()));
    }
    let populations = times
        .iter()
        .map(|&t| {
            let p = population_propagator(data, manifold, t)?;
            Ok((0..n).map(|a| p[(a, initial)].re).collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(PopulationTrajectory {
        manifold,
        initial,
        times: times.to_vec(),
        populations,
    })
}

/// exp(−K t) through the eigendecomposition of K (spectral form).
pub fn population_propagator_spectral(data: &RelaxationData, manifold: usize, t_fs: f64) -> Result<ComplexMatrix> {
    let k = data.manifolds[manifold].transport_matrix();
    let dec = general_eig(&k)?;
    let tau = fs_to_wavenumber_time(t_fs);
    Ok(dec.reconstruct_with(|l| (-l * tau).exp()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenKind {
    Population,
    IntraCoherence,
    InterCoherence,
}

/// G_{ab,cd}(t): amplitude of ρ_ab at time t (fs) from unit ρ_cd at 0.
pub fn green_function(data: &RelaxationData, kind: GreenKind, idx: [StateRef; 4], t_fs: f64) -> Result<C64> {
    let [a, b, c, d] = idx;
    let same = a.manifold == b.manifold && b.manifold == c.manifold && c.manifold == d.manifold;
    let ok = match kind {
        GreenKind::Population => same && a == b && c == d,
        GreenKind::IntraCoherence => same && a == c && b == d && a != b,
        GreenKind::InterCoherence => a == c && b == d && a.manifold != b.manifold,
    };
    if !ok {
        return Err(Error::Contract(format!(
            "index pattern ({a},{b},{c},{d}) does not match {kind:?} Green's function"
        )));
    }
    if t_fs < 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    match kind {
        GreenKind::Population => Ok(population_propagator(data, a.manifold, t_fs)?[(a.index, c.index)]),
        _ => {
            let z = data.resonance(a, b);
            Ok((-C64::new(0.0, 1.0) * z * fs_to_wavenumber_time(t_fs)).exp())
        }
    }
}

/// Secular G^(N)(t) for every index combination of one manifold at a fixed t.
#[derive(Clone, Debug)]
pub struct GreenTensor {
    n: usize,
    population: ComplexMatrix,
    coherence: Vec<Vec<C64>>,
}

impl GreenTensor {
    pub fn new(data: &RelaxationData, manifold: usize, t_fs: f64) -> Result<Self> {
        let n = data.manifolds[manifold].energies.len();
        if t_fs < 0.0 {
            return Ok(Self {
                n,
                population: ComplexMatrix::zeros(n, n),
                coherence: vec![vec![C64::new(0.0, 0.0); n]; n],
            });
        }
        let population = population_propagator(data, manifold, t_fs)?;
        let tau = fs_to_wavenumber_time(t_fs);
        let coherence = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let z = data.resonance(StateRef::new(manifold, a), StateRef::new(manifold, b));
                        (-C64::new(0.0, 1.0) * z * tau).exp()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n, population, coherence })
    }

    /// G_{ab,cd}.
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> C64 {
        if a == b && c == d {
            self.population[(a, c)]
        } else if a == c && b == d {
            self.coherence[a][b]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// Thermal populations exp(−βE)/Z of a manifold.
pub fn boltzmann(energies: &[f64], temperature: f64) -> Vec<f64> {
    let beta = crate::units::beta(temperature);
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = energies.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.iter().map(|x| x / z).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{diagonalize, SystemParams};

    fn setup() -> (EigenSystem, RelaxationData) {
        let eig = diagonalize(&SystemParams::default()).unwrap();
        let relax = relaxation_data(&eig, &BathSpec::default()).unwrap();
        (eig, relax)
    }

    #[test]
    fn transport_columns_sum_to_zero_and_offdiagonal_is_nonpositive() {
        let (_, relax) = setup();
        for m in 1..3 {
            let k = &relax.manifolds[m].transport;
            for b in 0..k.len() {
                let col: f64 = (0..k.len()).map(|a| k[a][b]).sum();
                assert!(col.abs() < 1e-12 * k[b][b].abs().max(1.0));
                for a in 0..k.len() {
                    if a != b {
                        assert!(k[a][b] <= 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn rates_obey_detailed_balance() {
        let (_, relax) = setup();
        let beta = crate::units::beta(relax.temperature);
        for m in 1..3 {
            let r = &relax.manifolds[m];
            for a in 0..r.energies.len() {
                for b in 0..a {
                    let (up, down) = (r.transport[a][b], r.transport[b][a]);
                    if down.abs() < 1e-9 {
                        continue;
                    }
                    let expect = (-beta * (r.energies[a] - r.energies[b])).exp();
                    assert!((up / down - expect).abs() < 1e-6 * expect, "{m}: {a}{b}");
                }
            }
        }
    }

    #[test]
    fn boltzmann_distribution_is_stationary() {
        let (_, relax) = setup();
        for m in 1..3 {
            let r = &relax.manifolds[m];
            let p = boltzmann(&r.energies, relax.temperature);
            for a in 0..p.len() {
                let flux: f64 = (0..p.len()).map(|b| r.transport[a][b] * p[b]).sum();
                assert!(flux.abs() < 1e-10 * r.transport[a][a].abs().max(1.0));
            }
        }
    }

    #[test]
    fn long_time_populations_approach_boltzmann() {
        let (_, relax) = setup();
        let traj = propagate_populations(&relax, 1, 2, &[0.0, 50.0, 20_000.0]).unwrap();
        assert_eq!(traj.populations[0], vec![0.0, 0.0, 1.0]);
        let p = boltzmann(&relax.manifolds[1].energies, relax.temperature);
        for (x, y) in traj.populations[2].iter().zip(&p) {
            assert!((x - y).abs() < 1e-8);
        }
        for row in &traj.populations {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pade_and_spectral_propagators_agree() {
        let (_, relax) = setup();
        for m in 1..3 {
            for t in [0.0, 3.0, 40.0, 500.0] {
                let a = population_propagator(&relax, m, t).unwrap();
                let b = population_propagator_spectral(&relax, m, t).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-9, "{m} {t}");
            }
        }
    }

    #[test]
    fn coherence_decays_by_e_after_one_lifetime() {
        let (_, relax) = setup();
        let (a, b) = (StateRef::new(1, 2), StateRef::GROUND);
        let gamma = relax.dephasing(a, b);
        let t = 1.0 / (gamma * crate::units::RAD_PER_FS_PER_WAVENUMBER);
        let g = green_function(&relax, GreenKind::InterCoherence, [a, b, a, b], t).unwrap();
        assert!((g.norm() - (-1.0f64).exp()).abs() < 1e-12);
        let phase = -relax.energy(a) * crate::units::fs_to_wavenumber_time(t);
        assert!((g.arg() - phase.sin().atan2(phase.cos())).abs() < 1e-9);
        assert_eq!(green_function(&relax, GreenKind::InterCoherence, [a, b, a, b], -1.0).unwrap(), C64::new(0.0, 0.0));
        assert!(green_function(&relax, GreenKind::Population, [a, b, a, b], 1.0).is_err());
    }

    #[test]
    fn no_bath_means_no_relaxation() {
        let eig = diagonalize(&SystemParams::default()).unwrap();
        let spec = BathSpec { mode_weights: vec![0.0, 0.0], ..BathSpec::default() };
        let relax = relaxation_data(&eig, &spec).unwrap();
        for m in &relax.manifolds {
            assert!(m.transport.iter().flatten().all(|&x| x == 0.0));
            assert!(m.linewidths.iter().all(|&x| x == 0.0));
        }
        let p = population_propagator(&relax, 2, 1000.0).unwrap();
        assert!(p.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-14);
    }

    #[test]
    fn occupation_operators_add_up_to_excitation_number() {
        let eig = diagonalize(&SystemParams::default()).unwrap();
        for m in 1..3 {
            let mut total = cavity_occupation_operator(&eig, m).unwrap();
            for v in coupling_operators(&eig, m).unwrap() {
                total = &total + &v;
            }
            let n = eig.manifolds[m].len();
            let expect = ComplexMatrix::identity(n).scale(C64::new(m as f64, 0.0));
            assert!(total.max_abs_diff(&expect) < 1e-12);
        }
    }

    #[test]
    fn linewidth_is_sum_over_final_states() {
        let (eig, relax) = setup();
        let spec = BathSpec::default();
        let bath = correlation_expansion(&spec).unwrap();
        let ops = coupling_operators(&eig, 1).unwrap();
        let e = &eig.manifolds[1].energies;
        for a in 0..3 {
            let expect: f64 = ops
                .iter()
                .zip(&spec.mode_weights)
                .map(|(v, lam)| lam * (0..3).map(|x| v[(a, x)].norm_sqr() * bath.rate(e[a] - e[x])).sum::<f64>())
                .sum();
            assert!((relax.linewidth(StateRef::new(1, a)) - expect).abs() < 1e-12 * expect);
        }
        // dephasing between manifolds is the mean linewidth
        let (x, y) = (StateRef::new(2, 1), StateRef::new(1, 0));
        assert_eq!(relax.dephasing(x, y), 0.5 * (relax.linewidth(x) + relax.linewidth(y)));
    }

    #[test]
    fn restriction_conserves_population() {
        let (_, relax) = setup();
        let r = relax.restricted(&[0, 2], &[3]).unwrap();
        let p = population_propagator(&r, 1, 300.0).unwrap();
        for b in 0..2 {
            assert!(((0..2).map(|a| p[(a, b)].re).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert!(relax.restricted(&[0, 0], &[]).is_err());
    }
}
