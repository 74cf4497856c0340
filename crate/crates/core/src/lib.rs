//! Cavity-coupled anharmonic vibron modes with a phonon bath.
//!
//! The crate builds the truncated cavity/vibron Hamiltonian, diagonalizes it
//! manifold by manifold, derives secular Redfield transport and dephasing
//! rates from a Brownian-oscillator bath, and evaluates frequency-domain
//! double-quantum-coherence (DQC) and photon-echo (PE) 2D spectra.
//!
//! Frequencies are in cm⁻¹ throughout; times are in fs and are converted with
//! [`units::RAD_PER_FS_PER_WAVENUMBER`] at propagation boundaries.

pub mod bath;
pub mod error;
pub mod kinetics;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod response;
pub mod units;

pub use num_complex::Complex64 as C64;

pub use bath::{BathSpec, ExponentialExpansion};
pub use error::{Error, Result};
pub use kinetics::{PopulationTrajectory, RelaxationData};
pub use model::{Configuration, EigenSystem, ExchangeConvention, StateRef, SystemParams};
pub use numerics::{ComplexMatrix, EigenDecomposition};
pub use response::{CaseSpec, GridSpec, Pulse, PulseSet, SpectrumGrid, Technique};
