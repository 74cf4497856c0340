use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::RAD_PER_FS_PER_WAVENUMBER;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technique {
    /// Double-quantum coherence, k = +k1 + k2 − k3; t1 is the parametric delay.
    Dqc,
    /// Photon echo, k = −k1 + k2 + k3; t2 is the parametric delay.
    Pe,
}

impl Technique {
    /// Wavevector signs of pulses 1–3.
    pub fn phase_matching(self) -> [i8; 3] {
        match self {
            Technique::Dqc => [1, 1, -1],
            Technique::Pe => [-1, 1, 1],
        }
    }

    pub fn axis_labels(self) -> (&'static str, &'static str) {
        match self {
            Technique::Dqc => ("omega2", "omega3"),
            Technique::Pe => ("omega1", "omega3"),
        }
    }

    pub fn delay_label(self) -> &'static str {
        match self {
            Technique::Dqc => "t1",
            Technique::Pe => "t2",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Technique::Dqc => "dqc",
            Technique::Pe => "pe",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseShape {
    Gaussian,
    /// Impulsive limit: a frequency-independent envelope of 1.
    Flat,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pulse {
    /// Carrier frequency in cm⁻¹.
    pub carrier: f64,
    /// Intensity FWHM duration in fs.
    pub duration_fs: f64,
    pub shape: PulseShape,
}

impl Pulse {
    pub fn gaussian(carrier: f64, duration_fs: f64) -> Self {
        Self { carrier, duration_fs, shape: PulseShape::Gaussian }
    }

    pub fn flat(carrier: f64) -> Self {
        Self { carrier, duration_fs: 0.0, shape: PulseShape::Flat }
    }

    /// Γ0 = 2 ln 2 / τ0² in rad² fs⁻².
    pub fn width(&self) -> f64 {
        2.0 * LN_2 / (self.duration_fs * self.duration_fs)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.carrier.is_finite() {
            return Err(Error::invalid("carrier", "must be finite"));
        }
        if self.shape == PulseShape::Gaussian && !(self.duration_fs.is_finite() && self.duration_fs > 0.0) {
            return Err(Error::invalid("duration_fs", format!("must be > 0, got {}", self.duration_fs)));
        }
        Ok(())
    }
}

/// E(ω) = √(π/Γ0)·exp(−Δω²/(4Γ0)), Δω = (ω − ω0) converted to rad fs⁻¹.
pub fn pulse_envelope(pulse: &Pulse, omega: f64) -> f64 {
    match pulse.shape {
        PulseShape::Flat => 1.0,
        PulseShape::Gaussian => {
            let g = pulse.width();
            let dw = (omega - pulse.carrier) * RAD_PER_FS_PER_WAVENUMBER;
            (PI / g).sqrt() * (-dw * dw / (4.0 * g)).exp()
        }
    }
}

/// Pulses 1–3 and the heterodyne pulse, with the parametric delay in fs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSet {
    pub technique: Technique,
    pub pulses: [Pulse; 4],
    pub delay_fs: f64,
}

impl PulseSet {
    pub fn validate(&self) -> Result<()> {
        for p in &self.pulses {
            p.validate()?;
        }
        if !(self.delay_fs.is_finite() && self.delay_fs >= 0.0) {
            return Err(Error::invalid(self.technique.delay_label(), format!("delay must be ≥ 0, got {}", self.delay_fs)));
        }
        Ok(())
    }

    pub fn impulsive(technique: Technique, delay_fs: f64) -> Self {
        Self { technique, pulses: [Pulse::flat(0.0); 4], delay_fs }
    }

    pub fn envelope(&self, k: usize, omega: f64) -> f64 {
        pulse_envelope(&self.pulses[k], omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_value_and_symmetry() {
        let p = Pulse::gaussian(2058.0, 100.0);
        assert!((pulse_envelope(&p, 2058.0) - (PI / p.width()).sqrt()).abs() < 1e-12);
        for d in [1.0, 17.0, 150.0] {
            assert!((pulse_envelope(&p, 2058.0 + d) - pulse_envelope(&p, 2058.0 - d)).abs() < 1e-15);
        }
    }

    #[test]
    fn transform_limited_bandwidth() {
        // numeric Fourier transform of the time-domain field exp(−Γ0 t²)
        let tau = 40.0;
        let p = Pulse::gaussian(0.0, tau);
        let g = p.width();
        let field = |t: f64| (-g * t * t).exp();
        let dt = 0.05;
        let times: Vec<f64> = (-4000..=4000).map(|k| k as f64 * dt).collect();
        let spectrum = |w: f64| -> f64 { times.iter().map(|&t| field(t) * (w * t).cos()).sum::<f64>() * dt };
        let fwhm = |f: &dyn Fn(f64) -> f64, step: f64| -> f64 {
            let peak = f(0.0);
            let mut x = 0.0;
            while f(x) > 0.5 * peak {
                x += step;
            }
            let (mut lo, mut hi) = (x - step, x);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if f(mid) > 0.5 * peak {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            2.0 * lo
        };
        let temporal = fwhm(&|t| field(t).powi(2), 0.5);
        let spectral = fwhm(&|w| spectrum(w).powi(2), 1e-3);
        assert!((temporal - tau).abs() < 1e-6 * tau);
        assert!((temporal * spectral - 4.0 * LN_2).abs() < 1e-6);
        // the analytic envelope has the same spectral shape
        let ratio = |w: f64| spectrum(w) / spectrum(0.0);
        let w = 0.03;
        let env = pulse_envelope(&p, w / RAD_PER_FS_PER_WAVENUMBER) / pulse_envelope(&p, 0.0);
        assert!((ratio(w) - env).abs() < 1e-9);
    }

    #[test]
    fn negative_duration_rejected() {
        let err = Pulse::gaussian(2000.0, -5.0).validate().unwrap_err();
        assert!(err.to_string().contains("duration_fs"));
    }
}
