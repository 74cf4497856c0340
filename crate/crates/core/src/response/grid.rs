use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::Technique;
use crate::error::{Error, Result};

/// Linewidths below this (cm⁻¹) are raised to it when rendering grids.
pub const LINEWIDTH_FLOOR: f64 = 0.1;

/// Evenly spaced frequency axis in cm⁻¹, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        Self { start, stop, points }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        (0..self.points)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64)
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        if self.points < 2 {
            0.0
        } else {
            (self.stop - self.start).abs() / (self.points - 1) as f64
        }
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.stop <= self.start {
            return Err(Error::invalid(field, format!("need finite start < stop, got [{}, {}]", self.start, self.stop)));
        }
        if self.points < 3 {
            return Err(Error::invalid(field, format!("need at least 3 points, got {}", self.points)));
        }
        Ok(())
    }
}

/// First axis is Ω2 (DQC) or Ω1 (PE, displayed positive); second is Ω3.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub axis1: Axis,
    pub axis2: Axis,
}

impl GridSpec {
    pub fn default_for(technique: Technique) -> Self {
        match technique {
            Technique::Dqc => GridSpec {
                axis1: Axis::new(3900.0, 4350.0, 256),
                axis2: Axis::new(1850.0, 2250.0, 256),
            },
            Technique::Pe => GridSpec {
                axis1: Axis::new(1850.0, 2250.0, 256),
                axis2: Axis::new(1850.0, 2250.0, 256),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate("axis1")?;
        self.axis2.validate("axis2")
    }
}

/// Max-abs normalized complex 2D spectrum, stored row-major over
/// (axis1, axis2).
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumGrid {
    pub technique: Technique,
    pub axis1_label: String,
    pub axis2_label: String,
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    #[serde(skip)]
    pub values: Vec<C64>,
    /// max |S| before normalization (0 for an identically zero grid).
    pub normalization: f64,
    pub delay_fs: f64,
    pub linewidth_floor: f64,
    pub warnings: Vec<String>,
}

impl SpectrumGrid {
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.values[i * self.axis2.len() + j]
    }

    pub fn magnitude(&self, i: usize, j: usize) -> f64 {
        self.get(i, j).norm()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.axis1.len(), self.axis2.len())
    }

    /// Index of the grid point nearest to (x1, x2).
    pub fn nearest(&self, x1: f64, x2: f64) -> (usize, usize) {
        let near = |axis: &[f64], x: f64| {
            (0..axis.len())
                .min_by(|&a, &b| (axis[a] - x).abs().total_cmp(&(axis[b] - x).abs()))
                .unwrap_or(0)
        };
        (near(&self.axis1, x1), near(&self.axis2, x2))
    }
}
