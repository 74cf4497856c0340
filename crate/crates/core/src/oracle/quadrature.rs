//! Adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (k, &x) in XGK[..7].iter().enumerate() {
        let s = f(c - h * x) + f(c + h * x);
        kronrod += WGK[k] * s;
        if k % 2 == 1 {
            gauss += WG[k / 2] * s;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// ∫_a^b f, refined until the error estimate is below
/// `max(abs_tol, rel_tol·|I|)` or 20000 segments are in use.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&f, a, b));
    for _ in 0..20_000 {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.error).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
    }
    let mut values: Vec<f64> = heap.into_iter().map(|s| s.value).collect();
    values.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    values.iter().sum()
}

/// ∫_a^∞ f via x = a + s·u/(1−u); `scale` should be a characteristic width.
pub fn integrate_to_infinity(f: impl Fn(f64) -> f64, a: f64, scale: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    integrate(
        |u| {
            let one_minus = 1.0 - u;
            let x = a + scale * u / one_minus;
            let v = f(x);
            if v == 0.0 {
                0.0
            } else {
                v * scale / (one_minus * one_minus)
            }
        },
        0.0,
        1.0,
        rel_tol,
        abs_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_gaussian() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-14, 0.0);
        assert!((v - 0.0).abs() < 1e-13);
        let g = integrate_to_infinity(|x| (-x * x).exp(), 0.0, 1.0, 1e-13, 0.0);
        assert!((g - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn sharp_lorentzian() {
        let w = 0.01;
        let v = integrate_to_infinity(|x| w / ((x - 700.0).powi(2) + w * w), 0.0, 700.0, 1e-12, 0.0);
        let exact = std::f64::consts::FRAC_PI_2 + (700.0 / w).atan();
        assert!((v - exact).abs() < 1e-9, "{v} vs {exact}");
    }
}
