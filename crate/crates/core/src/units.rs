//! Physical constants and unit conversions.

/// 2πc in rad fs⁻¹ per cm⁻¹.
pub const RAD_PER_FS_PER_WAVENUMBER: f64 = 2.0 * std::f64::consts::PI * 2.997_924_58e-5;

/// Boltzmann constant in cm⁻¹ K⁻¹.
pub const BOLTZMANN_WAVENUMBER: f64 = 0.695_034_8;

/// Converts a time in fs into the reciprocal-wavenumber time used inside
/// `exp(-rate * t)` with `rate` in cm⁻¹.
#[inline]
pub fn fs_to_wavenumber_time(t_fs: f64) -> f64 {
    t_fs * RAD_PER_FS_PER_WAVENUMBER
}

/// Inverse temperature in cm.
#[inline]
pub fn beta(temperature_k: f64) -> f64 {
    1.0 / (BOLTZMANN_WAVENUMBER * temperature_k)
}
