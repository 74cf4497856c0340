#![allow(dead_code)]

use proptest::prelude::*;
use vibpol::{BathSpec, ExchangeConvention, SystemParams};

/// Two-mode parameter sets around the default operating point.
pub fn system_params() -> impl Strategy<Value = SystemParams> {
    (
        prop::array::uniform2(1950.0..2150.0f64),
        -25.0..25.0f64,
        prop::array::uniform2(-40.0..0.0f64),
        -20.0..0.0f64,
        1950.0..2150.0f64,
        prop::array::uniform2(5.0..60.0f64),
        prop::array::uniform2(0.3..1.5f64),
        any::<bool>(),
    )
        .prop_map(|(e, j, u1, u2, wc, g, d, bosonic)| SystemParams {
            vibron_energies: e.to_vec(),
            hopping: vec![vec![0.0, j], vec![j, 0.0]],
            overtone_nonlinearity: u1.to_vec(),
            combination_nonlinearity: vec![vec![0.0, u2], vec![u2, 0.0]],
            cavity_frequency: wc,
            cavity_couplings: g.to_vec(),
            site_dipoles: d.to_vec(),
            exchange: if bosonic { ExchangeConvention::Bosonic } else { ExchangeConvention::Reference },
        })
}

pub fn bath_spec() -> impl Strategy<Value = BathSpec> {
    (
        1.0..30.0f64,
        5.0..60.0f64,
        1.0..30.0f64,
        200.0..1000.0f64,
        5.0..80.0f64,
        77.0..600.0f64,
        prop::array::uniform2(0.2..2.0f64),
    )
        .prop_map(|(l0, g0, l, u, g, t, w)| BathSpec {
            overdamped_reorganization: l0,
            overdamped_width: g0,
            structured_reorganization: l,
            structured_frequency: u,
            structured_damping: g,
            temperature: t,
            mode_weights: w.to_vec(),
            ..BathSpec::default()
        })
}
