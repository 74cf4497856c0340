use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MAX_MANIFOLD;
use crate::error::{Error, Result};

/// Occupation numbers of each vibron mode and of the cavity mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub vibrons: Vec<u32>,
    pub cavity: u32,
}

impl Configuration {
    pub fn new(vibrons: Vec<u32>, cavity: u32) -> Self {
        Self { vibrons, cavity }
    }

    pub fn total_quanta(&self) -> u32 {
        self.vibrons.iter().sum::<u32>() + self.cavity
    }

    /// ASCII label such as `10|1` (vibron occupations, then cavity).
    pub fn label(&self) -> String {
        let v: String = self.vibrons.iter().map(|n| n.to_string()).collect();
        format!("{v}|{}", self.cavity)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: String = self.vibrons.iter().map(|n| n.to_string()).collect();
        write!(f, "|{v}⟩|{}⟩", self.cavity)
    }
}

/// Ordered configurations spanning one excitation manifold.
///
/// Manifold 1: single vibron quanta in mode order, then the cavity photon.
/// Manifold 2: vibron overtones, vibron combinations (m < n, lexicographic),
/// one vibron quantum plus one photon (mode order), then two photons.
pub fn enumerate_basis(n_modes: usize, manifold: usize) -> Result<Vec<Configuration>> {
    if n_modes == 0 {
        return Err(Error::invalid("n_modes", "at least one vibron mode is required"));
    }
    let unit = |m: usize, k: u32| {
        let mut v = vec![0; n_modes];
        v[m] = k;
        v
    };
    let basis = match manifold {
        0 => vec![Configuration::new(vec![0; n_modes], 0)],
        1 => (0..n_modes)
            .map(|m| Configuration::new(unit(m, 1), 0))
            .chain(std::iter::once(Configuration::new(vec![0; n_modes], 1)))
            .collect(),
        2 => {
            let mut b: Vec<Configuration> = (0..n_modes).map(|m| Configuration::new(unit(m, 2), 0)).collect();
            for m in 0..n_modes {
                for n in m + 1..n_modes {
                    let mut v = vec![0; n_modes];
                    v[m] = 1;
                    v[n] = 1;
                    b.push(Configuration::new(v, 0));
                }
            }
            b.extend((0..n_modes).map(|m| Configuration::new(unit(m, 1), 1)));
            b.push(Configuration::new(vec![0; n_modes], 2));
            b
        }
        other => return Err(Error::UnsupportedTruncation(other)),
    };
    debug_assert!(manifold <= MAX_MANIFOLD);
    Ok(basis)
}

/// A polariton eigenstate: manifold and zero-based index in ascending energy.
///
/// Textual form is `p0` for the ground state, `p<k>'` for the k-th (one-based)
/// one-polariton state and `p<k>''` for the k-th two-polariton state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateRef {
    pub manifold: usize,
    pub index: usize,
}

impl StateRef {
    pub const GROUND: StateRef = StateRef { manifold: 0, index: 0 };

    pub fn new(manifold: usize, index: usize) -> Self {
        Self { manifold, index }
    }
}

impl fmt::Display for StateRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.manifold {
            0 => write!(f, "p0"),
            m => write!(f, "p{}{}", self.index + 1, "'".repeat(m)),
        }
    }
}

impl FromStr for StateRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("state", format!("cannot parse `{s}` (expected p0, p<k>' or p<k>'')"));
        let rest = s.trim().strip_prefix('p').ok_or_else(bad)?;
        let primes = rest.chars().rev().take_while(|&c| c == '\'').count();
        let digits = &rest[..rest.len() - primes];
        let k: usize = digits.parse().map_err(|_| bad())?;
        match (primes, k) {
            (0, 0) => Ok(StateRef::GROUND),
            (1 | 2, k) if k >= 1 => Ok(StateRef::new(primes, k - 1)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for StateRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StateRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_mode_sizes_and_order() {
        assert_eq!(enumerate_basis(2, 0).unwrap().len(), 1);
        let b1: Vec<String> = enumerate_basis(2, 1).unwrap().iter().map(|c| c.label()).collect();
        assert_eq!(b1, ["10|0", "01|0", "00|1"]);
        let b2: Vec<String> = enumerate_basis(2, 2).unwrap().iter().map(|c| c.label()).collect();
        assert_eq!(b2, ["20|0", "02|0", "11|0", "10|1", "01|1", "00|2"]);
    }

    #[test]
    fn quanta_match_manifold() {
        for m in 1..5 {
            for n in 0..=2 {
                let b = enumerate_basis(m, n).unwrap();
                assert!(b.iter().all(|c| c.total_quanta() as usize == n));
                let expected = match n {
                    0 => 1,
                    1 => m + 1,
                    _ => (m + 1) * (m + 2) / 2,
                };
                assert_eq!(b.len(), expected);
            }
        }
    }

    #[test]
    fn three_quanta_unsupported() {
        assert_eq!(enumerate_basis(2, 3).unwrap_err(), Error::UnsupportedTruncation(3));
    }

    #[test]
    fn state_labels_roundtrip() {
        for s in ["p0", "p1'", "p3'", "p1''", "p6''"] {
            assert_eq!(s.parse::<StateRef>().unwrap().to_string(), s);
        }
        assert_eq!("p5''".parse::<StateRef>().unwrap(), StateRef::new(2, 4));
        for bad in ["p", "q1'", "p0'", "p1'''", "p'"] {
            assert!(bad.parse::<StateRef>().is_err(), "{bad}");
        }
    }
}
