use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Pulse, PulseSet, Technique};
use crate::error::{Error, Result};
use crate::model::{EigenSystem, StateRef};

/// A polariton transition written `upper-lower`, e.g. `p5''-p1'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub upper: StateRef,
    pub lower: StateRef,
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.upper, self.lower)
    }
}

impl FromStr for Transition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (u, l) = s
            .split_once('-')
            .ok_or_else(|| Error::invalid("carrier", format!("`{s}` is not of the form upper-lower")))?;
        let t = Transition { upper: u.parse()?, lower: l.parse()? };
        if t.upper.manifold != t.lower.manifold + 1 {
            return Err(Error::invalid("carrier", format!("`{s}` must connect adjacent manifolds")));
        }
        Ok(t)
    }
}

impl Serialize for Transition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Transition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Carrier frequency given directly in cm⁻¹ or tied to a transition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierSpec {
    Wavenumber(f64),
    Transition(Transition),
}

impl CarrierSpec {
    pub fn resolve(&self, eig: &EigenSystem) -> Result<f64> {
        match *self {
            CarrierSpec::Wavenumber(w) => Ok(w),
            CarrierSpec::Transition(t) => {
                for s in [t.upper, t.lower] {
                    if s.index >= eig.manifolds[s.manifold].len() {
                        return Err(Error::invalid("carrier", format!("state {s} does not exist")));
                    }
                }
                Ok(eig.transition(t.upper, t.lower))
            }
        }
    }
}

/// One named pulse configuration: durations and carriers of pulses 1–3 and
/// the heterodyne pulse, plus the parametric delay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub name: String,
    pub durations_fs: [f64; 4],
    pub carriers: [CarrierSpec; 4],
    pub delay_fs: f64,
}

impl CaseSpec {
    pub fn validate(&self) -> Result<()> {
        for (k, &d) in self.durations_fs.iter().enumerate() {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::invalid(format!("durations_fs[{k}]"), format!("must be > 0, got {d}")));
            }
        }
        if !(self.delay_fs.is_finite() && self.delay_fs >= 0.0) {
            return Err(Error::invalid("delay_fs", format!("must be ≥ 0, got {}", self.delay_fs)));
        }
        Ok(())
    }

    pub fn resolve(&self, technique: Technique, eig: &EigenSystem) -> Result<PulseSet> {
        self.validate()?;
        let mut pulses = [Pulse::flat(0.0); 4];
        for k in 0..4 {
            pulses[k] = Pulse::gaussian(self.carriers[k].resolve(eig)?, self.durations_fs[k]);
        }
        Ok(PulseSet { technique, pulses, delay_fs: self.delay_fs })
    }
}

fn tr(s: &str) -> CarrierSpec {
    CarrierSpec::Transition(s.parse().expect("preset transition labels are valid"))
}

fn case(name: &str, tau: f64, pump: &str, probe: &str, delay: f64) -> CaseSpec {
    CaseSpec {
        name: name.into(),
        durations_fs: [tau; 4],
        carriers: [tr(pump), tr(pump), tr(probe), tr(probe)],
        delay_fs: delay,
    }
}

/// The six reference DQC pulse configurations (t1 = 0).
pub fn dqc_cases() -> Vec<CaseSpec> {
    vec![
        case("a", 100.0, "p2'-p0", "p5''-p1'", 0.0),
        case("b", 40.0, "p2'-p0", "p5''-p1'", 0.0),
        case("c", 100.0, "p2'-p0", "p2''-p1'", 0.0),
        case("d", 100.0, "p3'-p0", "p5''-p1'", 0.0),
        case("e", 100.0, "p3'-p0", "p2''-p1'", 0.0),
        case("f", 40.0, "p3'-p0", "p2''-p1'", 0.0),
    ]
}

/// The six reference PE pulse configurations.
pub fn pe_cases() -> Vec<CaseSpec> {
    vec![
        case("a", 10.0, "p2'-p0", "p5''-p1'", 10.0),
        case("b", 10.0, "p2'-p0", "p5''-p1'", 150.0),
        case("c", 10.0, "p3'-p0", "p5''-p1'", 10.0),
        case("d", 10.0, "p3'-p0", "p5''-p1'", 150.0),
        case("e", 40.0, "p2'-p0", "p5''-p1'", 10.0),
        case("f", 40.0, "p2'-p0", "p5''-p1'", 150.0),
    ]
}

pub const PRESET_NAMES: [&str; 12] = [
    "dqc-a", "dqc-b", "dqc-c", "dqc-d", "dqc-e", "dqc-f", "pe-a", "pe-b", "pe-c", "pe-d", "pe-e", "pe-f",
];

/// Looks up `dqc-a` … `dqc-f`, `pe-a` … `pe-f`.
pub fn preset(name: &str) -> Option<(Technique, CaseSpec)> {
    let (tech, letter) = name.split_once('-')?;
    let (technique, cases) = match tech {
        "dqc" => (Technique::Dqc, dqc_cases()),
        "pe" => (Technique::Pe, pe_cases()),
        _ => return None,
    };
    cases.into_iter().find(|c| c.name == letter).map(|c| (technique, c))
}
