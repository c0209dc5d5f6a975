//! Gauss-Laguerre quadrature rules for integrals of e^{-x} g(x) on [0, inf).
//!
//! Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix
//! (diagonal 2k+1, off-diagonal k), found with an implicit-shift QL sweep
//! and polished with one or two Newton steps on the Laguerre recurrence.
//! Weights come from w_i = x_i / ((n+1) L_{n+1}(x_i))^2, evaluated through
//! a rescaled recurrence that tracks the logarithm, because for orders in
//! the hundreds the raw polynomial values and the far-tail weights leave
//! the range of f64. The rule therefore carries `ln_weights` alongside
//! `weights`; fitting code that normalizes products of weights works in
//! log space and never needs the linear value.

use crate::{Error, Result};

/// Largest order the constructor accepts.
pub const MAX_ORDER: usize = 200;

/// Nodes and weights of a Gauss-Laguerre rule.
///
/// Invariants: nodes strictly increasing and positive, weights summing to
/// one. Weights are positive wherever f64 can represent them; at orders
/// beyond roughly 170 the outermost true weights drop below the smallest
/// subnormal and `weights` flushes to zero there while `ln_weights` stays
/// finite and correct.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub ln_weights: Vec<f64>,
}

impl QuadratureRule {
    /// Approximates the integral of e^{-x} g(x) over [0, inf).
    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. `d` holds the diagonal and returns the eigenvalues
/// (unsorted); `e` holds the subdiagonal in e[0..n-1].
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::convergence(
                    "tridiagonal_eigenvalues",
                    format!("row {l} of {n} after 60 sweeps"),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0_f64, 1.0_f64);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    Ok(())
}

/// Laguerre values (L_n(x), L_{n-1}(x)) rescaled by e^{-ln_scale} to stay
/// in range; the true values are the returned pair times e^{ln_scale}.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = 1.0_f64; // L_0
    let mut cur = 1.0 - x; // L_1
    let mut ln_scale = 0.0_f64;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e120 {
            let scale = 1e-120;
            prev *= scale;
            cur *= scale;
            ln_scale += 120.0 * std::f64::consts::LN_10;
        }
    }
    (cur, prev, ln_scale)
}

/// Builds the Gauss-Laguerre rule of the given order.
pub fn gauss_laguerre(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::domain("gauss_laguerre", "order must be at least 1".to_string()));
    }
    if order > MAX_ORDER {
        return Err(Error::domain(
            "gauss_laguerre",
            format!("order {order} beyond supported maximum {MAX_ORDER}"),
        ));
    }
    let mut d: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + 1.0).collect();
    let mut e: Vec<f64> = (0..order).map(|k| k as f64).collect();
    e.remove(0);
    e.push(0.0);
    tridiagonal_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));

    let n = order;
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut ln_weights = Vec::with_capacity(n);
    for (idx, &ev) in d.iter().enumerate() {
        let mut x = ev;
        for _ in 0..3 {
            let (ln_val, lnm1, _) = laguerre_pair(n, x);
            let denom = ln_val - lnm1;
            if denom == 0.0 {
                break;
            }
            let step = x * ln_val / (nf * denom);
            x -= step;
            if step.abs() <= 1e-15 * x {
                break;
            }
        }
        if !(x > 0.0) || (idx > 0 && x <= nodes[idx - 1]) {
            return Err(Error::convergence(
                "gauss_laguerre",
                format!("node {idx} of order {order} failed to separate"),
            ));
        }
        let (lnp1, _, ln_scale) = laguerre_pair(n + 1, x);
        let ln_w = x.ln() - 2.0 * ((nf + 1.0).ln() + lnp1.abs().ln() + ln_scale);
        nodes.push(x);
        ln_weights.push(ln_w);
    }
    let weights: Vec<f64> = ln_weights.iter().map(|&lw| lw.exp()).collect();
    Ok(QuadratureRule { order, nodes, weights, ln_weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ln_gamma;

    #[test]
    fn order_one_is_the_mean() {
        let r = gauss_laguerre(1).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn order_two_closed_form() {
        let r = gauss_laguerre(2).unwrap();
        let s2 = 2.0_f64.sqrt();
        assert!((r.nodes[0] - (2.0 - s2)).abs() < 1e-14);
        assert!((r.nodes[1] - (2.0 + s2)).abs() < 1e-14);
        assert!((r.weights[0] - (2.0 + s2) / 4.0).abs() < 1e-14);
        assert!((r.weights[1] - (2.0 - s2) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn order_twenty_fifth_moment() {
        let r = gauss_laguerre(20).unwrap();
        let got = r.integrate(|x| x.powi(5));
        assert!((got - 120.0).abs() <= 1e-8 * 120.0);
    }

    #[test]
    fn moment_exactness_up_to_degree() {
        // Gauss exactness: sum w x^m = m! for m <= 2n - 1, checked in log
        // space so high moments at order 64 cannot overflow.
        for &order in &[3_usize, 8, 16, 33, 64] {
            let r = gauss_laguerre(order).unwrap();
            for m in (0..=(2 * order - 1)).step_by(order.max(3) / 3) {
                let mf = m as f64;
                let sum: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.ln_weights)
                    .map(|(&x, &lw)| (lw + mf * x.ln()).exp())
                    .sum();
                let want = ln_gamma(mf + 1.0).unwrap().exp();
                assert!(
                    (sum - want).abs() <= 1e-10 * want,
                    "moment {m} at order {order}: {sum} vs {want}"
                );
            }
        }
    }

    #[test]
    fn structural_invariants() {
        for &order in &[2_usize, 7, 20, 64, 100, 150] {
            let r = gauss_laguerre(order).unwrap();
            assert_eq!(r.nodes.len(), order);
            assert!(r.nodes[0] > 0.0);
            for i in 1..order {
                assert!(r.nodes[i] > r.nodes[i - 1], "order {order} node {i}");
            }
            assert!(r.weights.iter().all(|&w| w > 0.0), "order {order}");
            let total: f64 = r.weights.iter().sum();
            assert!((total - 1.0).abs() <= 1e-12, "weight sum at order {order}: {total}");
        }
    }

    #[test]
    fn rejects_out_of_range_orders() {
        assert!(gauss_laguerre(0).is_err());
        assert!(gauss_laguerre(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = gauss_laguerre(37).unwrap();
        let b = gauss_laguerre(37).unwrap();
        assert_eq!(a, b);
    }
}
