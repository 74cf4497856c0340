use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P·m = L·U` packed in one matrix.
#[derive(Clone, Debug)]
pub struct Lu {
    packed: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Contract(format!(
                "LU needs a square matrix, got {:?}",
                m.dims()
            )));
        }
        let n = m.rows();
        let mut a = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = a[(k, j)];
                    a[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self {
            packed: a,
            perm,
            sign,
            singular,
        })
    }

    pub fn determinant(&self) -> C64 {
        if self.singular {
            return C64::new(0.0, 0.0);
        }
        self.packed
            .diagonal()
            .into_iter()
            .fold(C64::new(self.sign, 0.0), |acc, d| acc * d)
    }

    pub fn solve_vec(&self, b: &[C64]) -> Result<Vec<C64>> {
        if self.singular {
            return Err(Error::Singular);
        }
        let n = self.packed.rows();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.packed[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.packed[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.packed[(i, i)];
        }
        Ok(x)
    }

    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.packed.rows();
        assert_eq!(b.rows(), n, "right-hand side has wrong row count");
        let mut out = ComplexMatrix::zeros(n, b.cols());
        for j in 0..b.cols() {
            let x = self.solve_vec(&b.column(j))?;
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }
}

pub fn determinant(m: &ComplexMatrix) -> Result<C64> {
    Ok(Lu::new(m)?.determinant())
}

pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    Lu::new(m)?.solve(&ComplexMatrix::identity(m.rows()))
}

/// Solves `a·x = b`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Lu::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(2.0, 1.0), C64::new(1.0, 0.0)],
            vec![C64::new(1.0, -1.0), C64::new(0.5, 0.0), C64::new(0.0, 2.0)],
            vec![C64::new(3.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 1.0)],
        ]);
        let inv = inverse(&m).unwrap();
        assert!((&m * &inv).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn singular_detected() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(inverse(&m).unwrap_err(), Error::Singular);
        assert!(determinant(&m).unwrap().norm() < 1e-15);
    }

    #[test]
    fn determinant_of_permutation() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!((determinant(&m).unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }
}
