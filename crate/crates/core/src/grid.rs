//! Uniform grids on the unit square and real grid functions over them.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Uniform grid `x_m = m/M`, `y_n = n/N` on `[0,1]²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    m: usize,
    n: usize,
}

impl GridSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter {
                name: "M",
                reason: "need at least two x-intervals",
            });
        }
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "N",
                reason: "need at least two y-intervals",
            });
        }
        Ok(Self { m, n })
    }

    /// Number of x-intervals.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of y-intervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn dy(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn x(&self, m: usize) -> f64 {
        m as f64 / self.m as f64
    }

    pub fn y(&self, n: usize) -> f64 {
        n as f64 / self.n as f64
    }

    /// Node count along x (`M + 1`).
    pub fn x_nodes(&self) -> usize {
        self.m + 1
    }

    /// Node count along y (`N + 1`); the length of every slice.
    pub fn y_nodes(&self) -> usize {
        self.n + 1
    }

    /// Samples `f` at the y-nodes.
    pub fn sample_slice(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=self.n).map(|n| f(self.y(n))).collect()
    }

    pub(crate) fn check_slice(&self, what: &'static str, slice: &[f64]) -> Result<()> {
        if slice.len() != self.y_nodes() {
            return Err(Error::LengthMismatch {
                what,
                expected: self.y_nodes(),
                actual: slice.len(),
            });
        }
        Ok(())
    }
}

/// Real values on the `(M+1)×(N+1)` nodes of a [`GridSpec`], stored m-major:
/// each x-column `m` is one contiguous y-slice.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction2D {
    grid: GridSpec,
    values: Vec<f64>,
}

impl GridFunction2D {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.x_nodes() * grid.y_nodes()],
        }
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = Self::zeros(grid);
        for m in 0..=grid.m() {
            let x = grid.x(m);
            for (n, v) in out.slice_mut(m).iter_mut().enumerate() {
                *v = f(x, grid.y(n));
            }
        }
        out
    }

    /// Wraps m-major values; `values.len()` must be `(M+1)(N+1)`.
    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        let expected = grid.x_nodes() * grid.y_nodes();
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                what: "grid values",
                expected,
                actual: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.values[m * self.grid.y_nodes() + n]
    }

    pub fn set(&mut self, m: usize, n: usize, value: f64) {
        let stride = self.grid.y_nodes();
        self.values[m * stride + n] = value;
    }

    /// The y-slice at column `m`.
    pub fn slice(&self, m: usize) -> &[f64] {
        let stride = self.grid.y_nodes();
        &self.values[m * stride..(m + 1) * stride]
    }

    pub fn slice_mut(&mut self, m: usize) -> &mut [f64] {
        let stride = self.grid.y_nodes();
        &mut self.values[m * stride..(m + 1) * stride]
    }

    /// Largest absolute value over all nodes.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Plain ℓ² norm over all nodes (no mesh weights).
    pub fn l2_sum_norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|v| v * v).sum())
    }

    pub(crate) fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch {
                left_m: self.grid.m(),
                left_n: self.grid.n(),
                right_m: other.grid.m(),
                right_n: other.grid.n(),
            });
        }
        Ok(())
    }

    /// Pointwise `self - other`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    /// Pointwise `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }
}
