//! Reference routines used to cross-check the production code paths.
//!
//! Each routine reaches its answer by a different route from the code it
//! checks: quadrature instead of pole sums, determinant bisection instead of
//! Jacobi rotations, symbolic ladder-operator application instead of
//! closed-form matrix elements, and direct time-domain integration instead of
//! resolvent sums.

pub mod charpoly;
pub mod fourier;
pub mod quadrature;
pub mod second_quantization;
