//! Brownian-oscillator phonon bath: spectral density, exponential expansion
//! of the thermal correlation function, and half-Fourier relaxation functions.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units;

/// Overdamped (Drude) plus one underdamped Brownian oscillator, with the
/// temperature and per-mode coupling weights. Energies in cm⁻¹.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BathSpec {
    pub overdamped_reorganization: f64,
    pub overdamped_width: f64,
    pub structured_reorganization: f64,
    pub structured_frequency: f64,
    pub structured_damping: f64,
    pub temperature: f64,
    /// Relative squared system-bath couplings per vibron mode.
    pub mode_weights: Vec<f64>,
    pub matsubara_tolerance: f64,
    pub max_matsubara_terms: usize,
}

impl Default for BathSpec {
    fn default() -> Self {
        Self {
            overdamped_reorganization: 15.0,
            overdamped_width: 20.0,
            structured_reorganization: 15.0,
            structured_frequency: 721.0,
            structured_damping: 20.0,
            temperature: 300.0,
            mode_weights: vec![1.0, 1.5625],
            matsubara_tolerance: 1e-8,
            max_matsubara_terms: 2000,
        }
    }
}

impl BathSpec {
    pub fn beta(&self) -> f64 {
        units::beta(self.temperature)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("overdamped_width", self.overdamped_width),
            ("structured_frequency", self.structured_frequency),
            ("structured_damping", self.structured_damping),
            ("temperature", self.temperature),
            ("matsubara_tolerance", self.matsubara_tolerance),
        ];
        for (field, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be finite and > 0, got {v}")));
            }
        }
        for (field, v) in [
            ("overdamped_reorganization", self.overdamped_reorganization),
            ("structured_reorganization", self.structured_reorganization),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(field, format!("must be finite and ≥ 0, got {v}")));
            }
        }
        if self.mode_weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::invalid("mode_weights", "weights must be finite and ≥ 0"));
        }
        if self.max_matsubara_terms == 0 {
            return Err(Error::invalid("max_matsubara_terms", "must be ≥ 1"));
        }
        Ok(())
    }

    pub fn overdamped_density(&self, omega: f64) -> f64 {
        let (l, g) = (self.overdamped_reorganization, self.overdamped_width);
        2.0 * l * g * omega / (omega * omega + g * g)
    }

    pub fn structured_density(&self, omega: f64) -> f64 {
        let (l, u, g) = (self.structured_reorganization, self.structured_frequency, self.structured_damping);
        let d = u * u - omega * omega;
        2.0 * l * u * u * g * omega / (d * d + omega * omega * g * g)
    }
}

/// J(ω) in cm⁻¹.
pub fn spectral_density(omega: f64, spec: &BathSpec) -> f64 {
    spec.overdamped_density(omega) + spec.structured_density(omega)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Overdamped,
    Structured,
    Matsubara,
}

/// One term `A·exp(−φτ)` of the correlation function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpTerm {
    pub amplitude: C64,
    pub rate: C64,
    pub kind: TermKind,
}

/// C(τ) = Σ_k A_k exp(−φ_k τ) for τ > 0, with an asymptotic correction for
/// the omitted Matsubara tail in the relaxation functions.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentialExpansion {
    pub beta: f64,
    pub terms: Vec<ExpTerm>,
    /// Number of Matsubara terms kept.
    pub matsubara_terms: usize,
    /// Omitted Matsubara amplitudes behave as `a1/ν + a3/ν³`.
    pub tail_a1: f64,
    pub tail_a3: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl ExponentialExpansion {
    /// Expansion with explicit terms and no Matsubara tail.
    pub fn from_terms(beta: f64, terms: Vec<ExpTerm>) -> Self {
        Self {
            beta,
            terms,
            matsubara_terms: 0,
            tail_a1: 0.0,
            tail_a3: 0.0,
        }
    }

    fn matsubara_step(&self) -> f64 {
        2.0 * PI / self.beta
    }

    /// Σ_{n>N} ν_n^{−k} by Euler–Maclaurin.
    fn tail_sum(&self, k: i32) -> f64 {
        let n = self.matsubara_terms as f64;
        if self.matsubara_terms == 0 {
            return 0.0;
        }
        let kf = k as f64;
        let s = n.powf(1.0 - kf) / (kf - 1.0) - 0.5 * n.powf(-kf) + kf / 12.0 * n.powf(-kf - 1.0)
            - kf * (kf + 1.0) * (kf + 2.0) / 720.0 * n.powf(-kf - 3.0);
        s / self.matsubara_step().powi(k)
    }

    fn tail_relaxation(&self, omega: f64) -> C64 {
        if self.matsubara_terms == 0 || (self.tail_a1 == 0.0 && self.tail_a3 == 0.0) {
            return C64::new(0.0, 0.0);
        }
        let (a1, a3) = (self.tail_a1, self.tail_a3);
        C64::new(
            a1 * self.tail_sum(2) + (a3 - a1 * omega * omega) * self.tail_sum(4),
            a1 * omega * self.tail_sum(3),
        )
    }

    /// C(t) for t in fs. The Matsubara sum is truncated, which is exact to
    /// `exp(−ν_N t)` for t > 0.
    pub fn correlation(&self, t_fs: f64) -> C64 {
        if t_fs == 0.0 {
            return self.correlation_at_zero().unwrap_or(C64::new(f64::INFINITY, self.im_at_zero()));
        }
        let tau = units::fs_to_wavenumber_time(t_fs);
        self.terms.iter().map(|t| t.amplitude * (-t.rate * tau).exp()).sum()
    }

    fn im_at_zero(&self) -> f64 {
        self.terms.iter().map(|t| t.amplitude.im).sum()
    }

    /// C(0). The overdamped component makes Re C(0) diverge logarithmically
    /// (its Matsubara amplitudes fall off as 1/ν), which is reported as a
    /// domain error.
    pub fn correlation_at_zero(&self) -> Result<C64> {
        if self.tail_a1 != 0.0 {
            return Err(Error::Domain(
                "Re C(0) diverges for an overdamped component (Matsubara amplitudes ~ 1/ν)".into(),
            ));
        }
        let sum: C64 = self.terms.iter().map(|t| t.amplitude).sum();
        Ok(sum + self.tail_a3 * self.tail_sum(3))
    }

    /// M^(±)(ω): half-Fourier transform of C^(±)(t) = C(t) or C(t)*.
    pub fn relaxation(&self, omega: f64, branch: Branch) -> C64 {
        let i_omega = C64::new(0.0, omega);
        let sum: C64 = match branch {
            Branch::Plus => self.terms.iter().map(|t| t.amplitude / (t.rate - i_omega)).sum(),
            Branch::Minus => self
                .terms
                .iter()
                .map(|t| t.amplitude.conj() / (t.rate.conj() - i_omega))
                .sum(),
        };
        sum + self.tail_relaxation(omega)
    }

    /// Re M^(+)(ω), the only part that enters rates.
    pub fn rate(&self, omega: f64) -> f64 {
        self.relaxation(omega, Branch::Plus).re
    }
}

/// Complex-exponential expansion of the bath correlation function.
///
/// Contour closure in the lower half plane picks up the Drude pole at −iγ0,
/// the two Brownian poles ±ζ − iγ/2 and the Matsubara poles −iν_n. Matsubara
/// terms are added until `|A_n/ν_n|` drops below the tolerance relative to
/// the pole contribution to M(0), or `max_matsubara_terms` is reached.
pub fn correlation_expansion(spec: &BathSpec) -> Result<ExponentialExpansion> {
    spec.validate()?;
    let beta = spec.beta();
    let mut terms = Vec::new();
    let (l0, g0) = (spec.overdamped_reorganization, spec.overdamped_width);
    let (l, u, g) = (spec.structured_reorganization, spec.structured_frequency, spec.structured_damping);
    if l > 0.0 && u <= 0.5 * g {
        return Err(Error::UnsupportedRegime(format!(
            "structured oscillator is overdamped (frequency {u} ≤ damping/2 = {})",
            0.5 * g
        )));
    }
    if l0 > 0.0 {
        let cot = 1.0 / (0.5 * beta * g0).tan();
        terms.push(ExpTerm {
            amplitude: C64::new(l0 * g0 * cot, -l0 * g0),
            rate: C64::new(g0, 0.0),
            kind: TermKind::Overdamped,
        });
    }
    if l > 0.0 {
        let zeta = (u * u - 0.25 * g * g).sqrt();
        let pref = l * u * u / (2.0 * zeta);
        for sign in [1.0, -1.0] {
            let rate = C64::new(0.5 * g, sign * zeta);
            let pole = C64::new(0.0, -1.0) * rate;
            let coth = 1.0 / (0.5 * beta * pole).tanh();
            terms.push(ExpTerm {
                amplitude: sign * pref * (1.0 + coth),
                rate,
                kind: TermKind::Structured,
            });
        }
    }
    if terms.is_empty() {
        return Ok(ExponentialExpansion::from_terms(beta, terms));
    }
    let reference = terms
        .iter()
        .map(|t| (t.amplitude / t.rate).norm())
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    let step = 2.0 * PI / beta;
    let asymptotic_from = 10.0 * g0.max(u).max(g);
    let mut kept = 0;
    for n in 1..=spec.max_matsubara_terms {
        let nu = step * n as f64;
        let mut a = 0.0;
        if l0 > 0.0 {
            let d = nu * nu - g0 * g0;
            if d.abs() < 1e-12 * nu * nu {
                return Err(Error::UnsupportedRegime(format!(
                    "Matsubara frequency {nu} coincides with the overdamped width"
                )));
            }
            a += 4.0 * l0 * g0 / beta * nu / d;
        }
        if l > 0.0 {
            let s = u * u + nu * nu;
            a -= 4.0 * l * u * u * g / beta * nu / (s * s - g * g * nu * nu);
        }
        terms.push(ExpTerm {
            amplitude: C64::new(a, 0.0),
            rate: C64::new(nu, 0.0),
            kind: TermKind::Matsubara,
        });
        kept = n;
        if nu > asymptotic_from && (a / nu).abs() < spec.matsubara_tolerance * reference {
            break;
        }
    }
    Ok(ExponentialExpansion {
        beta,
        terms,
        matsubara_terms: kept,
        tail_a1: 4.0 * l0 * g0 / beta,
        tail_a3: (4.0 * l0 * g0 * g0 * g0 - 4.0 * l * u * u * g) / beta,
    })
}

/// M^(±)(ω) from an expansion.
pub fn relaxation_function(omega: f64, expansion: &ExponentialExpansion, branch: Branch) -> C64 {
    expansion.relaxation(omega, branch)
}
