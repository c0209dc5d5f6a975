//! Globally adaptive quadrature on finite intervals, built on the
//! 15-point Kronrod extension of 7-point Gauss. Worst-error-first interval
//! subdivision with the usual roughness-scaled error estimate.

use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Abscissae of the 15-point Kronrod rule on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

/// Weights of the embedded 7-point Gauss rule (nodes XGK[1], XGK[3], ...).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadEstimate {
    pub value: f64,
    pub abs_error: f64,
}

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

/// One Gauss-Kronrod evaluation over [a, b].
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut fv = [0.0_f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - reskh).abs() + (fv[14 - j] - reskh).abs());
    }
    resasc *= half.abs();
    let value = resk * half;
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over the union of consecutive seed intervals, refining
/// worst segments until the summed error estimate satisfies
/// `abs_tol + rel_tol * |integral|`, or fails with a convergence error.
///
/// Seed points must be finite and strictly increasing; supplying interior
/// breakpoints (modes, kinks) is how callers keep sharply peaked
/// integrands from being overlooked.
pub fn adaptive_seeded<F: Fn(f64) -> f64>(
    f: &F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadEstimate> {
    if points.len() < 2 {
        return Err(Error::domain("adaptive_seeded", "need at least two seed points".to_string()));
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::domain(
                "adaptive_seeded",
                format!("seed points not strictly increasing near {}", w[0]),
            ));
        }
    }
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in points.windows(2) {
        let seg = gk15(f, w[0], w[1]);
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }
    const MAX_SPLITS: usize = 20_000;
    for _ in 0..MAX_SPLITS {
        if total_err <= abs_tol + rel_tol * total.abs() {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Interval at the resolution limit of f64; keep its estimate.
            total_err -= worst.error;
            total_err += worst.error.min(f64::EPSILON * worst.value.abs());
            continue;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    if !total.is_finite() {
        return Err(Error::convergence("adaptive_seeded", "integral is not finite".to_string()));
    }
    if total_err > abs_tol + rel_tol * total.abs() {
        return Err(Error::convergence(
            "adaptive_seeded",
            format!("error estimate {total_err:.3e} above tolerance (value {total:.6e})"),
        ));
    }
    Ok(QuadEstimate { value: total, abs_error: total_err })
}

/// Convenience wrapper for a single interval.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadEstimate> {
    adaptive_seeded(f, &[a, b], rel_tol, abs_tol)
}
