use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{SpectrumGrid, Technique, LINEWIDTH_FLOOR};
use crate::error::{Error, Result};
use crate::kinetics::RelaxationData;
use crate::model::StateRef;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Peak {
    pub i: usize,
    pub j: usize,
    pub axis1: f64,
    pub axis2: f64,
    pub magnitude: f64,
}

/// Interior local maxima of |S| over the 8-neighbourhood, above
/// `rel_threshold` times the global maximum, strongest first.
pub fn local_maxima(grid: &SpectrumGrid, rel_threshold: f64) -> Vec<Peak> {
    let (n1, n2) = grid.dims();
    let top = grid.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if n1 < 3 || n2 < 3 || top == 0.0 {
        return Vec::new();
    }
    let mut peaks = Vec::new();
    for i in 1..n1 - 1 {
        for j in 1..n2 - 1 {
            let v = grid.magnitude(i, j);
            if v < rel_threshold * top {
                continue;
            }
            let is_max = (i - 1..=i + 1)
                .flat_map(|k| (j - 1..=j + 1).map(move |l| (k, l)))
                .filter(|&(k, l)| (k, l) != (i, j))
                .all(|(k, l)| grid.magnitude(k, l) <= v);
            if is_max {
                peaks.push(Peak {
                    i,
                    j,
                    axis1: grid.axis1[i],
                    axis2: grid.axis2[j],
                    magnitude: v,
                });
            }
        }
    }
    peaks.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));
    peaks
}

/// Complex resonances that produce poles along one axis (1 or 2), in display
/// coordinates (PE Ω1 positive) and with the spectral linewidth floor.
pub fn axis_resonances(technique: Technique, axis: usize, relax: &RelaxationData) -> Result<Vec<C64>> {
    let g = StateRef::GROUND;
    let n1 = relax.manifolds[1].energies.len();
    let n2 = relax.manifolds[2].energies.len();
    let floor = |z: C64| C64::new(z.re, -(-z.im).max(LINEWIDTH_FLOOR));
    let one_zero = || (0..n1).map(move |a| floor(relax.resonance(StateRef::new(1, a), g)));
    let two_one = || {
        (0..n2).flat_map(move |f| (0..n1).map(move |b| floor(relax.resonance(StateRef::new(2, f), StateRef::new(1, b)))))
    };
    let out: Vec<C64> = match (technique, axis) {
        (Technique::Dqc, 1) => (0..n2).map(|f| floor(relax.resonance(StateRef::new(2, f), g))).collect(),
        (Technique::Pe, 1) => one_zero().collect(),
        (_, 2) => one_zero().chain(two_one()).collect(),
        _ => return Err(Error::Contract(format!("axis must be 1 or 2, got {axis}"))),
    };
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateMatch {
    pub predicted: (f64, f64),
    /// |Im z| of the axis resonance nearest the prediction, per axis.
    pub tolerance: (f64, f64),
    pub nearest_peak: Option<Peak>,
    pub matched: bool,
}

fn relevant_width(resonances: &[C64], x: f64) -> f64 {
    resonances
        .iter()
        .min_by(|a, b| (a.re - x).abs().total_cmp(&(b.re - x).abs()))
        .map(|z| -z.im)
        .unwrap_or(LINEWIDTH_FLOOR)
}

/// Checks whether some local maximum of |S| lies within the relevant
/// linewidth of a predicted coordinate on both axes.
pub fn match_coordinate(grid: &SpectrumGrid, relax: &RelaxationData, predicted: (f64, f64)) -> Result<CoordinateMatch> {
    let r1 = axis_resonances(grid.technique, 1, relax)?;
    let r2 = axis_resonances(grid.technique, 2, relax)?;
    let tol = (relevant_width(&r1, predicted.0), relevant_width(&r2, predicted.1));
    let distance = |p: &Peak| ((p.axis1 - predicted.0).abs() / tol.0).max((p.axis2 - predicted.1).abs() / tol.1);
    let nearest = local_maxima(grid, 1e-3)
        .into_iter()
        .min_by(|a, b| distance(a).total_cmp(&distance(b)));
    let matched = nearest.as_ref().is_some_and(|p| distance(p) <= 1.0);
    Ok(CoordinateMatch {
        predicted,
        tolerance: tol,
        nearest_peak: nearest,
        matched,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisMatch {
    pub axis: usize,
    pub predicted: f64,
    /// |Im z| of the axis resonance nearest the prediction.
    pub tolerance: f64,
    /// Coordinate of the nearest located maximum along this axis.
    pub nearest: Option<f64>,
    pub matched: bool,
}

/// Checks whether some local maximum of |S| sits within the relevant
/// linewidth of `predicted` along one axis (1 or 2), ignoring the other.
pub fn match_axis_value(grid: &SpectrumGrid, relax: &RelaxationData, axis: usize, predicted: f64) -> Result<AxisMatch> {
    let tol = relevant_width(&axis_resonances(grid.technique, axis, relax)?, predicted);
    let coord = |p: &Peak| if axis == 1 { p.axis1 } else { p.axis2 };
    let nearest = local_maxima(grid, 1e-3)
        .iter()
        .map(coord)
        .min_by(|a, b| (a - predicted).abs().total_cmp(&(b - predicted).abs()));
    Ok(AxisMatch {
        axis,
        predicted,
        tolerance: tol,
        nearest,
        matched: nearest.is_some_and(|x| (x - predicted).abs() <= tol),
    })
}
