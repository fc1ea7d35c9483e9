//! Uniform sampling grids and sampled functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Uniform grid of `n` points spanning `[x_min, x_max]` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("grid needs at least 2 points, got {n}"));
        }
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return domain(format!("invalid grid range [{x_min}, {x_max}]"));
        }
        Ok(Grid { x_min, x_max, n })
    }

    /// Symmetric grid `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Grid::new(-half_width, half_width, n)
    }

    /// Default grid for a free double-slit density at time `t`: `±(L + 8√(1+t²))`, 4096 points.
    pub fn for_density(l: f64, t: f64) -> Self {
        let spread = (1.0 + t * t).sqrt();
        Grid {
            x_min: -(l + 8.0 * spread),
            x_max: l + 8.0 * spread,
            n: 4096,
        }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    /// The i-th abscissa. The symmetric mirror of point `i` is point `n-1-i`,
    /// computed so that symmetric grids give exactly opposite values.
    pub fn x(&self, i: usize) -> f64 {
        let dx = self.dx();
        let j = self.n - 1 - i;
        if i <= j {
            self.x_min + i as f64 * dx
        } else {
            self.x_max - j as f64 * dx
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    pub fn sample<T>(&self, f: impl Fn(f64) -> T) -> SampledFunction<T> {
        SampledFunction {
            grid: *self,
            values: self.points().map(f).collect(),
        }
    }

    /// Composite Simpson rule over the grid samples; when the number of
    /// intervals is odd the last three intervals use Simpson's 3/8 rule.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.n, "sample count does not match grid");
        simpson(values, self.dx())
    }
}

pub(crate) fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (y[0] + y[1]),
        3 => h / 3.0 * (y[0] + 4.0 * y[1] + y[2]),
        4 => 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]),
        _ => {
            let intervals = n - 1;
            let simpson_end = if intervals.is_multiple_of(2) {
                n - 1
            } else {
                n - 4
            };
            let mut acc = y[0] + y[simpson_end];
            for (k, v) in y.iter().enumerate().take(simpson_end).skip(1) {
                acc += if k % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            let mut total = acc * h / 3.0;
            if simpson_end != n - 1 {
                let t = &y[simpson_end..];
                total += 3.0 * h / 8.0 * (t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3]);
            }
            total
        }
    }
}

/// Samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T> {
    pub grid: Grid,
    pub values: Vec<T>,
}

pub type SampledWave = SampledFunction<Complex64>;
pub type SampledDensity = SampledFunction<f64>;

impl<T> SampledFunction<T> {
    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.n {
            return domain(format!(
                "{} samples supplied for a grid of {} points",
                values.len(),
                grid.n
            ));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &T)> + '_ {
        self.grid.points().zip(self.values.iter())
    }
}

impl SampledFunction<f64> {
    pub fn integral(&self) -> f64 {
        self.grid.integrate(&self.values)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl SampledFunction<Complex64> {
    pub fn density(&self) -> SampledDensity {
        SampledFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v.norm_sqr()).collect(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.density().integral()
    }

    /// ⟨self|other⟩ by Simpson quadrature.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let re: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.conj() * b).re)
            .collect();
        let im: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.conj() * b).im)
            .collect();
        Complex64::new(self.grid.integrate(&re), self.grid.integrate(&im))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        SampledFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        for n in [5usize, 6, 7, 8, 101, 100] {
            let g = Grid::new(-1.0, 2.0, n).unwrap();
            let f = g.sample(|x| x * x * x - 2.0 * x * x + 0.5);
            // ∫_{-1}^{2} x^3 - 2x^2 + 1/2 dx = 15/4 - 6 + 3/2
            assert!((f.integral() - (3.75 - 6.0 + 1.5)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn small_point_counts() {
        let g = Grid::new(0.0, 1.0, 2).unwrap();
        assert!((g.integrate(&[1.0, 3.0]) - 2.0).abs() < 1e-15);
        let g = Grid::new(0.0, 1.0, 4).unwrap();
        let f = g.sample(|x| x * x);
        assert!((f.integral() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_grid_points_mirror_exactly() {
        let g = Grid::symmetric(13.7, 4096).unwrap();
        for i in 0..g.n {
            assert_eq!(g.x(i), -g.x(g.n - 1 - i));
        }
        assert_eq!(g.x(0), -13.7);
        assert_eq!(g.x(g.n - 1), 13.7);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 1.0, 10).is_err());
        assert!(SampledFunction::new(Grid::new(0.0, 1.0, 3).unwrap(), vec![0.0; 2]).is_err());
    }
}
