//! Truncated cavity/vibron basis, manifold Hamiltonians and their eigensystems.

mod basis;
mod hamiltonian;
mod params;
mod scan;
mod system;

pub use basis::{enumerate_basis, Configuration, StateRef};
pub use hamiltonian::build_hamiltonian;
pub use params::{ExchangeConvention, SystemParams};
pub use scan::{dbr_cavity_frequency, scan_detuning, DetuningScan};
pub use system::{diagonalize, interaction_block, transition_dipoles, EigenSystem, Manifold};
pub(crate) use system::check_subset;

/// Highest excitation manifold that is built.
pub const MAX_MANIFOLD: usize = 2;
