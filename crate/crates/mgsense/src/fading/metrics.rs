//! Agreement metrics between a fitted mixture and the exact density.

use crate::mixture_gamma::MixtureGamma;
use crate::par;
use crate::Result;

/// Number of grid points used by [`total_variation`].
pub const TV_GRID_POINTS: usize = 2000;

/// Log-spaced evaluation grid spanning [1e-6, 1e3] times the shadowing
/// scale, the range over which fits are judged.
pub fn tv_grid(omega: f64) -> Vec<f64> {
    let lo = (1e-6 * omega).ln();
    let hi = (1e3 * omega).ln();
    (0..TV_GRID_POINTS)
        .map(|i| (lo + (hi - lo) * i as f64 / (TV_GRID_POINTS - 1) as f64).exp())
        .collect()
}

fn trapezoid_abs_diff(grid: &[f64], diffs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..grid.len() {
        acc += 0.5 * (diffs[i - 1] + diffs[i]) * (grid[i] - grid[i - 1]);
    }
    0.5 * acc
}

/// Total variation distance between the mixture and an exact density,
/// trapezoid-integrated on the standard grid. Exact-density evaluations
/// run in parallel when the `parallel` feature is enabled.
pub fn total_variation<F>(mg: &MixtureGamma, exact_pdf: F, omega: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let grid = tv_grid(omega);
    let diffs = par::map_collect(&grid, |&g| {
        exact_pdf(g).map(|e| (e - mg.pdf_unchecked(g)).abs())
    });
    let diffs = diffs.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(trapezoid_abs_diff(&grid, &diffs))
}

/// Single-threaded twin of [`total_variation`], kept for benchmarking the
/// parallel split and for contexts where spawning is undesirable.
pub fn total_variation_sequential<F>(mg: &MixtureGamma, exact_pdf: F, omega: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let grid = tv_grid(omega);
    let mut diffs = Vec::with_capacity(grid.len());
    for &g in &grid {
        diffs.push((exact_pdf(g)? - mg.pdf_unchecked(g)).abs());
    }
    Ok(trapezoid_abs_diff(&grid, &diffs))
}
