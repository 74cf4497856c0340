use num_complex::Complex64 as C64;

use super::{solve, ComplexMatrix};
use crate::error::{Error, Result};

const THETA: [(usize, f64); 4] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_230e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068e0),
];
const THETA_13: f64 = 5.371_920_351_148_152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `exp(m·t)` by Padé scaling and squaring (Higham 2005).
pub fn expm(m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Contract(format!("expm needs a square matrix, got {:?}", m.dims())));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Contract(format!("expm time must be finite and ≥ 0, got {t}")));
    }
    let n = m.rows();
    let a = m.scale(C64::new(t, 0.0));
    let norm = a.one_norm();
    let id = ComplexMatrix::identity(n);
    if norm == 0.0 {
        return Ok(id);
    }
    for &(deg, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match deg {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return pade_low(&a, coeffs);
        }
    }
    let s = ((norm / THETA_13).log2().ceil()).max(0.0) as i32;
    let scaled = a.scale(C64::new(0.5f64.powi(s), 0.0));
    let mut r = pade13(&scaled)?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

fn lin(terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(terms[0].1.rows(), terms[0].1.cols());
    for &(c, m) in terms {
        out = &out + &m.scale(C64::new(c, 0.0));
    }
    out
}

fn pade_low(a: &ComplexMatrix, b: &[f64]) -> Result<ComplexMatrix> {
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let a2 = a * a;
    let mut powers = vec![id];
    for _ in 1..b.len() / 2 {
        let next = &powers[powers.len() - 1] * &a2;
        powers.push(next);
    }
    let mut u = ComplexMatrix::zeros(n, n);
    let mut v = ComplexMatrix::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        u = &u + &p.scale(C64::new(b[2 * k + 1], 0.0));
        v = &v + &p.scale(C64::new(b[2 * k], 0.0));
    }
    let u = a * &u;
    finish(&u, &v)
}

fn pade13(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    let b = &B13;
    let id = ComplexMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = lin(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]);
    let u = a * &(&(&a6 * &inner_u) + &lin(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)]));
    let inner_v = lin(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]);
    let v = &(&a6 * &inner_v) + &lin(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)]);
    finish(&u, &v)
}

fn finish(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve(&(v - u), &(v + u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_gives_identity() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(expm(&z, 4.0).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn scalar_decay() {
        let m = ComplexMatrix::from_real(1, 1, &[-1.0]);
        let e = expm(&m, 2.0).unwrap();
        assert!((e[(0, 0)].re - (-2.0f64).exp()).abs() < 1e-14 * (-2.0f64).exp());
    }

    #[test]
    fn every_pade_degree_matches_series() {
        // nilpotent-plus-diagonal test matrix with a closed form
        for &scale in &[1e-3, 0.1, 0.5, 1.5, 4.0, 40.0] {
            let m = ComplexMatrix::from_real(2, 2, &[-1.0, 1.0, 0.0, -1.0]);
            let e = expm(&m, scale).unwrap();
            let d = (-scale).exp();
            assert!((e[(0, 0)].re - d).abs() <= 1e-12 * d, "{scale}: {:e}", (e[(0, 0)].re - d).abs() / d);
            assert!((e[(0, 1)].re - scale * d).abs() <= 1e-12 * (scale * d));
            assert!(e[(1, 0)].norm() < 1e-300);
        }
    }

    #[test]
    fn rotation_generator() {
        let w = 3.0;
        let m = ComplexMatrix::from_real(2, 2, &[0.0, -w, w, 0.0]);
        let e = expm(&m, 1.3).unwrap();
        assert!((e[(0, 0)].re - (w * 1.3).cos()).abs() < 1e-13);
        assert!((e[(1, 0)].re - (w * 1.3).sin()).abs() < 1e-13);
    }

    #[test]
    fn negative_time_rejected() {
        let m = ComplexMatrix::identity(2);
        assert!(expm(&m, -1.0).is_err());
    }
}
