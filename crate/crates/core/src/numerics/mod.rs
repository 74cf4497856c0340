//! Dense linear algebra for small complex matrices.

mod eig;
mod expm;
mod lu;
mod matrix;

pub use eig::{general_eig, hermitian_eig, EigenDecomposition};
pub use expm::expm;
pub use lu::{determinant, inverse, solve, Lu};
pub use matrix::ComplexMatrix;
