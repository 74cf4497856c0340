//! Gaussian pulse envelopes, frequency-domain DQC and PE 2D spectra, and the
//! time-domain response functions they are the Fourier image of.

mod grid;
mod peaks;
mod presets;
mod pulse;
mod spectra;
mod time_domain;

pub use grid::{Axis, GridSpec, SpectrumGrid, LINEWIDTH_FLOOR};
pub use peaks::{axis_resonances, local_maxima, match_axis_value, match_coordinate, AxisMatch, CoordinateMatch, Peak};
pub use presets::{dqc_cases, pe_cases, preset, CarrierSpec, CaseSpec, Transition, PRESET_NAMES};
pub use pulse::{pulse_envelope, Pulse, PulseSet, PulseShape, Technique};
pub use spectra::{dqc_pathways, dqc_spectrum, evaluate, pe_pathways, pe_spectrum, PathwayFamily, PathwayTerm};
pub use time_domain::{time_domain_response, ResponseFunction};
