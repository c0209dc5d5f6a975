//! Derivatives of the scaled complementary error function.
//!
//! Writing u = erfcx, each derivative has the form
//! u^(j)(x) = p_j(x) u(x) + q_j(x) / sqrt(pi) with polynomial p_j, q_j
//! obtained from u' = 2x u - 2/sqrt(pi). The p_j carry only positive
//! coefficients and the q_j only negative ones, so the polynomials
//! themselves evaluate cleanly; what cancels is the final combination,
//! increasingly badly as j grows at moderate positive x, where u^(j) is
//! orders of magnitude below either summand.
//!
//! Three evaluation routes cover the axis:
//! - the polynomial table, exact wherever the combination is benign
//!   (all x <= 0, small x, or small j);
//! - the termwise-differentiated asymptotic series of u, which takes over
//!   for large positive x;
//! - the representation u^(j)(x) = (2/sqrt(pi)) (-2)^j
//!   int_0^inf t^j e^(-t^2 - 2xt) dt, whose integrand never cancels, as a
//!   fallback for the mid-range pocket both estimates flag as bad.
//!
//! Every route reports an absolute error estimate and the best one wins.

use crate::specfun::erfcx;
use crate::specfun::integrate::adaptive_seeded;
use crate::Result;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn poly_eval_abs(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
}

/// p_{j+1} = p_j' + 2x p_j and q_{j+1} = q_j' - 2 p_j, ascending powers.
fn build_tables(n_max: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut p: Vec<Vec<f64>> = vec![vec![1.0]];
    let mut q: Vec<Vec<f64>> = vec![vec![]];
    for j in 0..n_max {
        let dp = poly_derivative(&p[j]);
        let mut next_p = vec![0.0; p[j].len() + 1];
        for (i, &c) in dp.iter().enumerate() {
            next_p[i] += c;
        }
        for (i, &c) in p[j].iter().enumerate() {
            next_p[i + 1] += 2.0 * c;
        }
        let dq = poly_derivative(&q[j]);
        let mut next_q = vec![0.0; p[j].len().max(if dq.is_empty() { 0 } else { dq.len() })];
        for (i, &c) in dq.iter().enumerate() {
            next_q[i] += c;
        }
        for (i, &c) in p[j].iter().enumerate() {
            next_q[i] -= 2.0 * c;
        }
        p.push(next_p);
        q.push(next_q);
    }
    (p, q)
}

/// Asymptotic value and error estimate for u^(j)(x), valid for large x.
/// The series for u is differentiated term by term and summed to its
/// smallest term; the estimate is the first term left out.
fn asymptotic_deriv(x: f64, j: usize) -> (f64, f64) {
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    let mut term = sign * factorial(j) * FRAC_1_SQRT_PI * x.powi(-(j as i32) - 1);
    let mut sum = term;
    let inv_2x2 = 1.0 / (2.0 * x * x);
    for m in 0..120 {
        let a = (2 * m + j + 1) as f64;
        let b = (2 * m + j + 2) as f64;
        let ratio = -(a * b) * inv_2x2 / (2 * m + 2) as f64;
        let next = term * ratio;
        if next.abs() >= term.abs() {
            return (sum, next.abs());
        }
        sum += next;
        term = next;
        if term.abs() <= f64::EPSILON * sum.abs() {
            return (sum, term.abs());
        }
    }
    (sum, term.abs())
}

/// Cancellation-free integral route.
fn integral_deriv(x: f64, j: usize) -> Result<(f64, f64)> {
    let jf = j as f64;
    let t_peak = if j == 0 { 0.0 } else { 0.5 * (-x + (x * x + 2.0 * jf).sqrt()) };
    let t_hi = t_peak + 9.0 + 45.0 / (1.0 + (2.0 * (x + t_peak)).max(0.5));
    let mut seeds = vec![0.0];
    for &s in &[0.5 * t_peak, t_peak, t_peak + 1.5, 0.5 * (t_peak + t_hi), t_hi] {
        if s > seeds[seeds.len() - 1] + 1e-12 {
            seeds.push(s);
        }
    }
    let f = |t: f64| t.powi(j as i32) * (-t * t - 2.0 * x * t).exp();
    let est = adaptive_seeded(f, &seeds, 3e-12, 1e-300)?;
    let scale = if j % 2 == 0 { 1.0 } else { -1.0 };
    let front = scale * 2.0 * FRAC_1_SQRT_PI * 2.0_f64.powi(j as i32);
    Ok((front * est.value, front.abs() * (est.abs_error + 4.0 * f64::EPSILON * est.value)))
}

/// Evaluates u^(0)(x) ... u^(n_max)(x) for u = erfcx.
pub(crate) fn erfcx_derivatives(x: f64, n_max: usize) -> Result<Vec<f64>> {
    let (p, q) = build_tables(n_max);
    let u = erfcx(x);
    let mut out = Vec::with_capacity(n_max + 1);
    for j in 0..=n_max {
        let pv = poly_eval(&p[j], x);
        let qv = poly_eval(&q[j], x);
        let table_val = pv * u + qv * FRAC_1_SQRT_PI;
        let table_err =
            4.0 * f64::EPSILON * (poly_eval_abs(&p[j], x) * u.abs() + poly_eval_abs(&q[j], x) * FRAC_1_SQRT_PI);

        let (mut best_val, mut best_err) = (table_val, table_err);
        if x >= 2.0 {
            let (av, ae) = asymptotic_deriv(x, j);
            if ae < best_err {
                best_val = av;
                best_err = ae;
            }
        }
        if best_err > 1e-10 * best_val.abs() && x > -1.0 {
            let (iv, ie) = integral_deriv(x, j)?;
            if ie < best_err {
                best_val = iv;
            }
        }
        out.push(best_val);
    }
    Ok(out)
}
