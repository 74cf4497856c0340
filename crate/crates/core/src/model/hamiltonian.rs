use num_complex::Complex64 as C64;

use super::{enumerate_basis, Configuration, ExchangeConvention, SystemParams};
use crate::error::Result;
use crate::numerics::ComplexMatrix;

/// Manifold block of the cavity/vibron Hamiltonian over [`enumerate_basis`].
///
/// Diagonal: Σ n_m E_m + n_c ω_c + Σ_m U1_m n_m(n_m−1)/2 + Σ_{m<n} U2_mn n_m n_n.
/// Off-diagonal: hopping J_mn B_m†B_n and exchange g_m (a†B_m + B_m†a) with
/// bosonic √n factors, subject to the [`ExchangeConvention`].
pub fn build_hamiltonian(params: &SystemParams, manifold: usize) -> Result<ComplexMatrix> {
    params.validate()?;
    let basis = enumerate_basis(params.n_modes(), manifold)?;
    let n = basis.len();
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = C64::new(diagonal_energy(params, &basis[i]), 0.0);
        for j in i + 1..n {
            let v = coupling(params, &basis[i], &basis[j]);
            h[(i, j)] = C64::new(v, 0.0);
            h[(j, i)] = C64::new(v, 0.0);
        }
    }
    Ok(h)
}

fn diagonal_energy(p: &SystemParams, c: &Configuration) -> f64 {
    let mut e = c.cavity as f64 * p.cavity_frequency;
    for (m, &nm) in c.vibrons.iter().enumerate() {
        let nm = nm as f64;
        e += nm * p.vibron_energies[m] + 0.5 * p.overtone_nonlinearity[m] * nm * (nm - 1.0);
        for (k, &nk) in c.vibrons.iter().enumerate().skip(m + 1) {
            e += p.combination_nonlinearity[m][k] * nm * nk as f64;
        }
    }
    e
}

/// ⟨a|H|b⟩ for a ≠ b.
fn coupling(p: &SystemParams, a: &Configuration, b: &Configuration) -> f64 {
    let diff: Vec<i64> = a.vibrons.iter().zip(&b.vibrons).map(|(&x, &y)| x as i64 - y as i64).collect();
    let dc = a.cavity as i64 - b.cavity as i64;
    let gained: Vec<usize> = (0..diff.len()).filter(|&m| diff[m] == 1).collect();
    let lost: Vec<usize> = (0..diff.len()).filter(|&m| diff[m] == -1).collect();
    let moved = diff.iter().map(|d| d.abs()).sum::<i64>();
    match (dc, moved) {
        // ⟨a| J_mn B_m† B_n |b⟩ with a quantum moved from mode n to mode m
        (0, 2) if gained.len() == 1 && lost.len() == 1 => {
            let (m, n) = (gained[0], lost[0]);
            p.hopping[m][n] * (b.vibrons[n] as f64).sqrt() * (b.vibrons[m] as f64 + 1.0).sqrt()
        }
        // ⟨a| g_m a† B_m |b⟩
        (1, 1) if lost.len() == 1 => exchange(p, lost[0], b),
        // ⟨a| g_m B_m† a |b⟩ = ⟨b| g_m a† B_m |a⟩
        (-1, 1) if gained.len() == 1 => exchange(p, gained[0], a),
        _ => 0.0,
    }
}

/// ⟨photon side| g_m a† B_m |vibron side⟩.
fn exchange(p: &SystemParams, m: usize, vibron_side: &Configuration) -> f64 {
    let nm = vibron_side.vibrons[m];
    if p.exchange == ExchangeConvention::Reference && nm >= 2 {
        return 0.0;
    }
    p.cavity_couplings[m] * (nm as f64).sqrt() * (vibron_side.cavity as f64 + 1.0).sqrt()
}
