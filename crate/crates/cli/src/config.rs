//! Run configuration: TOML sections mirror the core parameter types, every
//! key is optional and defaults to the reference parameter set.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vibpol::response::{dqc_cases, pe_cases};
use vibpol::{BathSpec, CaseSpec, GridSpec, SystemParams, Technique};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Seeds the randomized parameter sets of `verify`.
    pub seed: u64,
    pub system: SystemParams,
    pub bath: BathSpec,
    pub dqc: DqcConfig,
    pub pe: PeConfig,
    pub populations: PopulationsConfig,
    pub scan: ScanConfig,
    pub bath_dump: BathDumpConfig,
    pub verify: VerifyConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            system: SystemParams::default(),
            bath: BathSpec::default(),
            dqc: DqcConfig::default(),
            pe: PeConfig::default(),
            populations: PopulationsConfig::default(),
            scan: ScanConfig::default(),
            bath_dump: BathDumpConfig::default(),
            verify: VerifyConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DqcConfig {
    pub grid: GridSpec,
    pub cases: Vec<CaseSpec>,
}

impl Default for DqcConfig {
    fn default() -> Self {
        Self { grid: GridSpec::default_for(Technique::Dqc), cases: dqc_cases() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PeConfig {
    pub grid: GridSpec,
    pub cases: Vec<CaseSpec>,
}

impl Default for PeConfig {
    fn default() -> Self {
        Self { grid: GridSpec::default_for(Technique::Pe), cases: pe_cases() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PopulationsConfig {
    pub t_max_fs: f64,
    pub step_fs: f64,
}

impl Default for PopulationsConfig {
    fn default() -> Self {
        Self { t_max_fs: 3000.0, step_fs: 10.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub cavity_min: f64,
    pub cavity_max: f64,
    pub points: usize,
    pub couplings: Vec<f64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { cavity_min: 1900.0, cavity_max: 2200.0, points: 151, couplings: vec![10.0, 25.0, 50.0] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BathDumpConfig {
    pub omega_max: f64,
    pub omega_points: usize,
    pub t_max_fs: f64,
    pub t_points: usize,
}

impl Default for BathDumpConfig {
    fn default() -> Self {
        Self { omega_max: 1500.0, omega_points: 1501, t_max_fs: 500.0, t_points: 501 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// Randomized parameter sets drawn around the configured system.
    pub random_sets: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { random_sets: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Divide each spectrum by its largest |S|.
    pub normalize: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: PathBuf::from("out"), normalize: true }
    }
}

fn invalid(section: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("[{section}] {e}"))
}

fn positive(section: &str, field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(section, format!("`{field}` must be finite and > 0, got {v}")))
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.system.validate().map_err(|e| invalid("system", e))?;
        self.bath.validate().map_err(|e| invalid("bath", e))?;
        if self.bath.mode_weights.len() != self.system.n_modes() {
            return Err(invalid(
                "bath",
                format!("`mode_weights` needs {} entries, got {}", self.system.n_modes(), self.bath.mode_weights.len()),
            ));
        }
        for (section, grid, cases) in [("dqc", &self.dqc.grid, &self.dqc.cases), ("pe", &self.pe.grid, &self.pe.cases)] {
            grid.validate().map_err(|e| invalid(section, e))?;
            for case in cases {
                case.validate().map_err(|e| invalid(section, format!("case `{}`: {e}", case.name)))?;
            }
            let mut names: Vec<&str> = cases.iter().map(|c| c.name.as_str()).collect();
            names.sort_unstable();
            if names.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(section, "case names must be unique"));
            }
        }
        positive("populations", "t_max_fs", self.populations.t_max_fs)?;
        positive("populations", "step_fs", self.populations.step_fs)?;
        let s = &self.scan;
        if !(s.cavity_min.is_finite() && s.cavity_max > s.cavity_min) || s.points < 2 {
            return Err(invalid("scan", "need cavity_min < cavity_max and at least 2 points"));
        }
        if s.couplings.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(invalid("scan", "`couplings` must be finite and ≥ 0"));
        }
        let b = &self.bath_dump;
        positive("bath_dump", "omega_max", b.omega_max)?;
        positive("bath_dump", "t_max_fs", b.t_max_fs)?;
        if b.omega_points < 2 || b.t_points < 2 {
            return Err(invalid("bath_dump", "need at least 2 points on each axis"));
        }
        Ok(())
    }

    pub fn cases(&self, technique: Technique) -> (&GridSpec, &[CaseSpec]) {
        match technique {
            Technique::Dqc => (&self.dqc.grid, &self.dqc.cases),
            Technique::Pe => (&self.pe.grid, &self.pe.cases),
        }
    }

    /// Canonical TOML text; loading it gives back the same configuration.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("every configuration field is representable in TOML")
    }
}

pub fn parse_config(text: &str, origin: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

/// Reads and validates a config file; `None` gives the defaults.
pub fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => {
            let config = RunConfig::default();
            config.validate()?;
            Ok(config)
        }
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?;
            parse_config(&text, &p.display().to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(parse_config("", "test").unwrap(), RunConfig::default());
    }

    #[test]
    fn canonical_form_round_trips() {
        let text = "seed = 7\n[system]\ncavity_frequency = 2040.0\n[pe.grid.axis1]\nstart = 1900.0\nstop = 2100.0\npoints = 64\n[pe.grid.axis2]\nstart = 1900.0\nstop = 2100.0\npoints = 32\n";
        let first = parse_config(text, "test").unwrap();
        let canonical = first.to_toml();
        let second = parse_config(&canonical, "canonical").unwrap();
        assert_eq!(first, second);
        assert_eq!(canonical, second.to_toml());
    }

    #[test]
    fn partial_sections_keep_other_defaults() {
        let c = parse_config("[bath]\ntemperature = 77.0\n", "test").unwrap();
        assert_eq!(c.bath.temperature, 77.0);
        assert_eq!(c.bath.structured_frequency, BathSpec::default().structured_frequency);
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = parse_config("[bath]\ntemprature = 77.0\n", "test").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        assert!(err.to_string().contains("temprature"), "{err}");
    }

    #[test]
    fn negative_duration_names_the_field() {
        let text = r#"
[[pe.cases]]
name = "x"
durations_fs = [-10.0, 10.0, 10.0, 10.0]
carriers = ["p2'-p0", "p2'-p0", 1990.0, 1990.0]
delay_fs = 10.0
"#;
        let err = parse_config(text, "test").unwrap_err();
        assert!(matches!(err, CliError::Validation(_)));
        assert!(err.to_string().contains("durations_fs[0]"), "{err}");
    }
}
