//! Two-dimensional half-Fourier transforms of sampled time-domain responses.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::units::RAD_PER_FS_PER_WAVENUMBER;

/// Composite Simpson weights for `points` (odd) samples spaced `dt`.
pub fn simpson_weights(points: usize, dt: f64) -> Vec<f64> {
    assert!(points >= 3 && points % 2 == 1, "Simpson needs an odd number of points ≥ 3");
    (0..points)
        .map(|k| {
            let w = if k == 0 || k == points - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * dt / 3.0
        })
        .collect()
}

/// S(Ωa, Ωb) = ∫₀^T∫₀^T dta dtb exp(i c (Ωa ta + Ωb tb)) R(ta, tb) with t in fs
/// and Ω in cm⁻¹, on a tensor Simpson grid. Returns `values[i][j]` for
/// `omegas_a[i]`, `omegas_b[j]`.
pub fn half_fourier_2d(
    response: impl Fn(f64, f64) -> C64 + Sync,
    omegas_a: &[f64],
    omegas_b: &[f64],
    t_max_fs: f64,
    points: usize,
) -> Vec<Vec<C64>> {
    let dt = t_max_fs / (points - 1) as f64;
    let w = simpson_weights(points, dt);
    let times: Vec<f64> = (0..points).map(|k| k as f64 * dt).collect();
    let samples: Vec<Vec<C64>> = times
        .par_iter()
        .map(|&ta| times.iter().map(|&tb| response(ta, tb)).collect())
        .collect();
    let phase = |omega: f64| -> Vec<C64> {
        times
            .iter()
            .zip(&w)
            .map(|(&t, &wk)| C64::from_polar(wk, RAD_PER_FS_PER_WAVENUMBER * omega * t))
            .collect()
    };
    let pa: Vec<Vec<C64>> = omegas_a.iter().map(|&o| phase(o)).collect();
    let pb: Vec<Vec<C64>> = omegas_b.iter().map(|&o| phase(o)).collect();
    pa.par_iter()
        .map(|wa| {
            let row: Vec<C64> = (0..points)
                .map(|j| (0..points).map(|i| wa[i] * samples[i][j]).sum())
                .collect();
            pb.iter().map(|wb| wb.iter().zip(&row).map(|(x, y)| x * y).sum()).collect()
        })
        .collect()
}
