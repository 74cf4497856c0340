use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How vibron/cavity exchange acts on the overtone configurations of the
/// two-quantum manifold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeConvention {
    /// Overtone configurations |2_m⟩|0⟩ do not exchange a quantum with the
    /// cavity; every other element follows the bosonic ladder factors. This is
    /// the matrix that reproduces the reference two-polariton energies.
    #[default]
    Reference,
    /// Full bosonic ladder operators, including ⟨2_m,0|H|1_m,1⟩ = √2·g_m.
    Bosonic,
}

/// Vibron, cavity and dipole parameters. Energies in cm⁻¹.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    pub vibron_energies: Vec<f64>,
    pub hopping: Vec<Vec<f64>>,
    pub overtone_nonlinearity: Vec<f64>,
    pub combination_nonlinearity: Vec<Vec<f64>>,
    pub cavity_frequency: f64,
    pub cavity_couplings: Vec<f64>,
    pub site_dipoles: Vec<f64>,
    #[serde(default)]
    pub exchange: ExchangeConvention,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            vibron_energies: vec![2019.0, 2080.0],
            hopping: vec![vec![0.0, -16.0], vec![-16.0, 0.0]],
            overtone_nonlinearity: vec![-11.0, -14.0],
            combination_nonlinearity: vec![vec![0.0, -14.0], vec![-14.0, 0.0]],
            cavity_frequency: 2050.0,
            cavity_couplings: vec![25.0, 25.0],
            site_dipoles: vec![1.0, 1.0],
            exchange: ExchangeConvention::Reference,
        }
    }
}

impl SystemParams {
    pub fn n_modes(&self) -> usize {
        self.vibron_energies.len()
    }

    /// Dipole that couples the cavity field to the pump, Σ_m d_m.
    pub fn cavity_dipole(&self) -> f64 {
        self.site_dipoles.iter().sum()
    }

    /// Sets every cavity coupling to `g`.
    pub fn with_uniform_coupling(mut self, g: f64) -> Self {
        self.cavity_couplings.iter_mut().for_each(|x| *x = g);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.n_modes();
        if m == 0 {
            return Err(Error::invalid("vibron_energies", "at least one mode is required"));
        }
        let check_len = |field: &str, len: usize| {
            if len != m {
                Err(Error::invalid(field, format!("expected {m} entries, got {len}")))
            } else {
                Ok(())
            }
        };
        check_len("hopping", self.hopping.len())?;
        check_len("overtone_nonlinearity", self.overtone_nonlinearity.len())?;
        check_len("combination_nonlinearity", self.combination_nonlinearity.len())?;
        check_len("cavity_couplings", self.cavity_couplings.len())?;
        check_len("site_dipoles", self.site_dipoles.len())?;
        let finite = |field: &str, xs: &[f64]| {
            if xs.iter().all(|x| x.is_finite()) {
                Ok(())
            } else {
                Err(Error::invalid(field, "entries must be finite"))
            }
        };
        finite("vibron_energies", &self.vibron_energies)?;
        finite("overtone_nonlinearity", &self.overtone_nonlinearity)?;
        finite("cavity_frequency", &[self.cavity_frequency])?;
        finite("cavity_couplings", &self.cavity_couplings)?;
        finite("site_dipoles", &self.site_dipoles)?;
        for (field, mat) in [
            ("hopping", &self.hopping),
            ("combination_nonlinearity", &self.combination_nonlinearity),
        ] {
            for (i, row) in mat.iter().enumerate() {
                check_len(field, row.len())?;
                finite(field, row)?;
                if row[i] != 0.0 {
                    return Err(Error::invalid(field, format!("diagonal entry [{i}][{i}] must be zero")));
                }
            }
            for i in 0..m {
                for j in 0..i {
                    if mat[i][j] != mat[j][i] {
                        return Err(Error::invalid(
                            field,
                            format!("matrix must be symmetric: [{i}][{j}] = {} but [{j}][{i}] = {}", mat[i][j], mat[j][i]),
                        ));
                    }
                }
            }
        }
        if let Some(g) = self.cavity_couplings.iter().find(|&&g| g < 0.0) {
            return Err(Error::invalid("cavity_couplings", format!("couplings must be ≥ 0, got {g}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        SystemParams::default().validate().unwrap();
    }

    #[test]
    fn asymmetric_hopping_rejected() {
        let mut p = SystemParams::default();
        p.hopping[0][1] = -15.0;
        let err = p.validate().unwrap_err();
        assert!(err.to_string().contains("hopping"), "{err}");
    }

    #[test]
    fn negative_coupling_rejected() {
        let p = SystemParams::default().with_uniform_coupling(-1.0);
        assert!(p.validate().is_err());
    }
}
