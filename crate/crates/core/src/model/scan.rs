use serde::Serialize;

use super::{build_hamiltonian, SystemParams};
use crate::error::{Error, Result};
use crate::numerics::hermitian_eig;

/// Polariton energies over a grid of cavity frequencies, one block per
/// coupling strength.
#[derive(Clone, Debug, Serialize)]
pub struct DetuningScan {
    pub couplings: Vec<f64>,
    pub cavity_frequencies: Vec<f64>,
    /// `one[g][w]` holds the one-polariton energies.
    pub one: Vec<Vec<Vec<f64>>>,
    /// `two[g][w]` holds the two-polariton energies.
    pub two: Vec<Vec<Vec<f64>>>,
}

impl DetuningScan {
    /// Smallest `E_hi − E_lo` of the one-polariton branches over the scan.
    pub fn min_one_polariton_gap(&self, coupling_index: usize, lo: usize, hi: usize) -> f64 {
        self.one[coupling_index]
            .iter()
            .map(|e| e[hi] - e[lo])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Energies for `points` evenly spaced cavity frequencies in
/// `[omega_min, omega_max]`, with every cavity coupling set to each `g`.
pub fn scan_detuning(
    params: &SystemParams,
    omega_min: f64,
    omega_max: f64,
    points: usize,
    couplings: &[f64],
) -> Result<DetuningScan> {
    if points < 2 {
        return Err(Error::invalid("points", "a scan needs at least 2 points"));
    }
    if !(omega_min.is_finite() && omega_max.is_finite()) || omega_max <= omega_min {
        return Err(Error::invalid("cavity range", format!("need finite min < max, got [{omega_min}, {omega_max}]")));
    }
    let cavity_frequencies: Vec<f64> = (0..points)
        .map(|i| omega_min + (omega_max - omega_min) * i as f64 / (points - 1) as f64)
        .collect();
    let mut one = Vec::with_capacity(couplings.len());
    let mut two = Vec::with_capacity(couplings.len());
    for &g in couplings {
        let mut rows1 = Vec::with_capacity(points);
        let mut rows2 = Vec::with_capacity(points);
        for &wc in &cavity_frequencies {
            let mut p = params.clone().with_uniform_coupling(g);
            p.cavity_frequency = wc;
            rows1.push(hermitian_eig(&build_hamiltonian(&p, 1)?)?.real_values());
            rows2.push(hermitian_eig(&build_hamiltonian(&p, 2)?)?.real_values());
        }
        one.push(rows1);
        two.push(rows2);
    }
    Ok(DetuningScan {
        couplings: couplings.to_vec(),
        cavity_frequencies,
        one,
        two,
    })
}

/// Cavity frequency of a planar DBR cavity at incidence angle `theta`:
/// ω0 / √(1 − sin²θ / n²).
pub fn dbr_cavity_frequency(omega0: f64, theta: f64, n_ind: f64) -> Result<f64> {
    let s = theta.sin();
    if !(s.abs() < n_ind) {
        return Err(Error::Domain(format!("|sin θ| = {} must be below the refractive index {n_ind}", s.abs())));
    }
    Ok(omega0 / (1.0 - s * s / (n_ind * n_ind)).sqrt())
}
