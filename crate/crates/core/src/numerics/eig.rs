use num_complex::Complex64 as C64;

use super::{inverse, ComplexMatrix};
use crate::error::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Eigenvalues with right eigenvectors (columns) and left eigenvectors (rows).
///
/// `left · right` is diagonal; both solvers here normalize it to the identity.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<C64>,
    pub right_vectors: ComplexMatrix,
    pub left_vectors: ComplexMatrix,
    pub is_hermitian: bool,
}

impl EigenDecomposition {
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    /// Reassembles `R · f(Λ) · L`.
    pub fn reconstruct_with(&self, f: impl Fn(C64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.right_vectors[(i, j)] * f(self.values[j]));
        &scaled * &self.left_vectors
    }
}

fn require_square(m: &ComplexMatrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Contract(format!("{what} needs a square matrix, got {:?}", m.dims())));
    }
    if !m.is_finite() {
        return Err(Error::Contract(format!("{what} input has non-finite entries")));
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Values come back ascending. Eigenvectors within a degenerate cluster are
/// ordered by the index of their largest component, and each vector is
/// rotated so that component is real and positive.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    require_square(m, "hermitian_eig")?;
    if !m.is_hermitian(1e-10) {
        return Err(Error::Contract("hermitian_eig input is not Hermitian".into()));
    }
    let n = m.rows();
    let norm = m.frobenius_norm();
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(m[(i, i)].re, 0.0)
        } else {
            0.5 * (m[(i, j)] + m[(j, i)].conj())
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let tol = 1e-12 * norm;
    const MAX_SWEEPS: usize = 100;
    let mut converged = norm == 0.0;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > tol {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let dominant: Vec<usize> = (0..n).map(|j| dominant_index(&v.column(j))).collect();
    let degenerate_tol = 1e-10 * norm.max(1.0);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] - values[order[end - 1]] <= degenerate_tol {
            end += 1;
        }
        order[start..end].sort_by_key(|&k| dominant[k]);
        start = end;
    }

    let mut right = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let col = v.column(old_j);
        let pivot = col[dominant[old_j]];
        let phase = if pivot.norm() > 0.0 { pivot.conj() / pivot.norm() } else { ONE };
        for i in 0..n {
            right[(i, new_j)] = col[i] * phase;
        }
    }
    Ok(EigenDecomposition {
        values: order.iter().map(|&k| C64::new(values[k], 0.0)).collect(),
        left_vectors: right.adjoint(),
        right_vectors: right,
        is_hermitian: true,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.rows();
    let phase = apq / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // Q = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
    let qpp = C64::new(c, 0.0);
    let qpq = C64::new(s, 0.0);
    let qqp = -s * phase.conj();
    let qqq = c * phase.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * qpp + akq * qqp;
        a[(k, q)] = akp * qpq + akq * qqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = qpp.conj() * apk + qqp.conj() * aqk;
        a[(q, k)] = qpq.conj() * apk + qqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * qpp + vkq * qqp;
        v[(k, q)] = vkp * qpq + vkq * qqq;
    }
}

/// First index whose magnitude is within a relative 1e-9 of the largest.
fn dominant_index(col: &[C64]) -> usize {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    col.iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-9))
        .unwrap_or(0)
}

/// Eigendecomposition of a general square matrix.
///
/// Householder reduction to Hessenberg form, shifted complex QR to Schur
/// form, then back-substitution for the eigenvectors. Left eigenvectors are
/// the rows of the inverse of the right-vector matrix, so `L·R = I`.
/// Values are ordered by real part, then imaginary part.
pub fn general_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    require_square(m, "general_eig")?;
    let n = m.rows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            right_vectors: ComplexMatrix::zeros(0, 0),
            left_vectors: ComplexMatrix::zeros(0, 0),
            is_hermitian: false,
        });
    }
    let (mut h, mut z) = hessenberg(m);
    schur(&mut h, &mut z)?;

    let norm = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let smin = f64::EPSILON * norm;
    let mut y = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = h[(k, k)];
        y[(k, k)] = ONE;
        for i in (0..k).rev() {
            let mut sum = ZERO;
            for j in i + 1..=k {
                sum += h[(i, j)] * y[(j, k)];
            }
            let mut denom = h[(i, i)] - lambda;
            if denom.norm() < smin {
                denom = C64::new(smin, 0.0);
            }
            y[(i, k)] = -sum / denom;
        }
    }
    let mut r = &z * &y;
    for j in 0..n {
        let nrm = r.column(j).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            r[(i, j)] /= nrm;
        }
    }

    let values: Vec<C64> = h.diagonal();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .re
            .total_cmp(&values[b].re)
            .then(values[a].im.total_cmp(&values[b].im))
    });
    let right = ComplexMatrix::from_fn(n, n, |i, j| r[(i, order[j])]);
    let left = match inverse(&right) {
        Ok(inv) => inv,
        Err(_) => return Err(Error::Defective { condition: f64::INFINITY }),
    };
    let condition = right.frobenius_norm() * left.frobenius_norm();
    if !condition.is_finite() || condition >= 1e8 {
        return Err(Error::Defective { condition });
    }
    Ok(EigenDecomposition {
        values: order.iter().map(|&k| values[k]).collect(),
        right_vectors: right,
        left_vectors: left,
        is_hermitian: false,
    })
}

/// Returns `(h, q)` with `h = q† m q` upper Hessenberg.
fn hessenberg(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.rows();
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vnorm;
        }
        // P = I − 2 v v† acting on indices k+1..n.
        for j in 0..n {
            let dot: C64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= 2.0 * v[i] * dot;
            }
        }
        for i in 0..n {
            let dot: C64 = (0..v.len()).map(|jj| h[(i, k + 1 + jj)] * v[jj]).sum();
            for jj in 0..v.len() {
                h[(i, k + 1 + jj)] -= 2.0 * dot * v[jj].conj();
            }
        }
        for i in 0..n {
            let dot: C64 = (0..v.len()).map(|jj| q[(i, k + 1 + jj)] * v[jj]).sum();
            for jj in 0..v.len() {
                q[(i, k + 1 + jj)] -= 2.0 * dot * v[jj].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Shifted complex QR iteration on a Hessenberg matrix, accumulating the
/// Schur vectors into `z`. On return `h` is upper triangular.
fn schur(h: &mut ComplexMatrix, z: &mut ComplexMatrix) -> Result<()> {
    let n = h.rows();
    let norm = h.frobenius_norm();
    let max_iter = 100 * n.max(1);
    let mut total = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].norm() <= f64::EPSILON * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > max_iter {
            return Err(Error::NoConvergence(max_iter));
        }
        let mu = if since_deflation % 11 == 0 {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for d in l..=hi {
            h[(d, d)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            rotations.push((k, c, s));
        }
        for &(k, c, s) in &rotations {
            for i in 0..=hi {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = x * c + y * s.conj();
                z[(i, k + 1)] = -x * s + y * c;
            }
        }
        for d in l..=hi {
            h[(d, d)] += mu;
        }
    }
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(())
}

/// Rotation `[[c, s], [−s̄, c]]` (c real) mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, ZERO);
    }
    if a.norm() == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = 0.5 * (a - d);
    let disc = (half * half + b * c).sqrt();
    let e1 = 0.5 * (a + d) + disc;
    let e2 = 0.5 * (a + d) - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pauli_x() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let e = hermitian_eig(&m).unwrap();
        assert!((e.values[0].re + 1.0).abs() < 1e-14);
        assert!((e.values[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_polariton_block() {
        let m = ComplexMatrix::from_real(
            3,
            3,
            &[2019.0, -16.0, 25.0, -16.0, 2080.0, 25.0, 25.0, 25.0, 2050.0],
        );
        let e = hermitian_eig(&m).unwrap();
        let expected = [1996.59, 2058.21, 2094.20];
        for (v, x) in e.values.iter().zip(expected) {
            assert!((v.re - x).abs() < 0.02, "{} vs {}", v.re, x);
        }
    }

    #[test]
    fn complex_hermitian_residual() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.5), c(0.0, -2.0)],
            vec![c(0.5, -0.5), c(-3.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 2.0), c(1.0, -1.0), c(2.0, 0.0)],
        ]);
        let e = hermitian_eig(&m).unwrap();
        let r = &e.right_vectors;
        let lhs = &m * r;
        let rhs = ComplexMatrix::from_fn(3, 3, |i, j| r[(i, j)] * e.values[j]);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12 * m.frobenius_norm());
        let gram = &r.adjoint() * r;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn degenerate_ordering_and_phase() {
        let m = ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.right_vectors, ComplexMatrix::identity(3));
        let m = ComplexMatrix::from_real(2, 2, &[5.0, 0.0, 0.0, 5.0]).scale(c(-1.0, 0.0));
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.right_vectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn rejects_bad_input() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(matches!(hermitian_eig(&m), Err(Error::Contract(_))));
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&m), Err(Error::Contract(_))));
        assert!(matches!(general_eig(&m), Err(Error::Contract(_))));
    }

    #[test]
    fn general_diagonal() {
        let m = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(-1.0, 0.0)]);
        let e = general_eig(&m).unwrap();
        assert!((e.values[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((e.values[1] - c(2.0, 0.0)).norm() < 1e-14);
        assert!(e.right_vectors[(0, 1)].norm() > 0.999_999);
        assert!(e.right_vectors[(1, 0)].norm() > 0.999_999);
    }

    #[test]
    fn general_rate_matrix() {
        let (k, kp) = (0.3, 1.7);
        let m = ComplexMatrix::from_real(2, 2, &[-k, kp, k, -kp]);
        let e = general_eig(&m).unwrap();
        assert!((e.values[0].re + (k + kp)).abs() < 1e-13);
        assert!(e.values[1].norm() < 1e-13);
        let lr = &e.left_vectors * &e.right_vectors;
        assert!(lr.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn general_nonnormal_complex() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0), c(4.0, 0.0), c(0.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, -2.0), c(0.0, 0.0), c(-2.0, 0.0)],
        ]);
        let e = general_eig(&m).unwrap();
        let mr = &m * &e.right_vectors;
        let rl = ComplexMatrix::from_fn(4, 4, |i, j| e.right_vectors[(i, j)] * e.values[j]);
        assert!(mr.max_abs_diff(&rl) < 1e-11 * m.frobenius_norm());
        let lm = &e.left_vectors * &m;
        let ll = ComplexMatrix::from_fn(4, 4, |i, j| e.values[i] * e.left_vectors[(i, j)]);
        assert!(lm.max_abs_diff(&ll) < 1e-10 * m.frobenius_norm());
        let tr: C64 = e.values.iter().sum();
        assert!((tr - m.trace()).norm() < 1e-12 * m.frobenius_norm());
    }

    #[test]
    fn defective_is_reported() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(general_eig(&m), Err(Error::Defective { .. })));
    }
}
