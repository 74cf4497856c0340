//! Eigenvalues of a Hermitian matrix as roots of det(m − xI), located by
//! sign changes on a fine grid and refined by bisection.

use crate::numerics::{determinant, ComplexMatrix};

fn char_value(m: &ComplexMatrix, x: f64) -> f64 {
    let n = m.rows();
    let shifted = ComplexMatrix::from_fn(n, n, |i, j| if i == j { m[(i, j)] - x } else { m[(i, j)] });
    determinant(&shifted).map(|d| d.re).unwrap_or(0.0)
}

/// Roots in ascending order. Assumes simple eigenvalues separated by more than
/// `(2R)/samples`, R the Gershgorin radius bound.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, samples: usize) -> Vec<f64> {
    let n = m.rows();
    let radius = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
        * 1.01
        + 1e-12;
    let xs: Vec<f64> = (0..=samples)
        .map(|k| -radius + 2.0 * radius * k as f64 / samples as f64)
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&x| char_value(m, x)).collect();
    let mut roots = Vec::new();
    for k in 0..samples {
        if vals[k] == 0.0 {
            roots.push(xs[k]);
            continue;
        }
        if vals[k].signum() != vals[k + 1].signum() && vals[k + 1] != 0.0 {
            let (mut lo, mut hi, mut flo) = (xs[k], xs[k + 1], vals[k]);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = char_value(m, mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    roots
}
