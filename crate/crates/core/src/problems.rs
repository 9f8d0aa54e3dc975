//! Reference boundary data.
//!
//! Both examples prescribe `u(0,y) = u0(y)` and `u(1,y) = g(y)` for the
//! four-sided Dirichlet problem whose solution serves as ground truth. The
//! sampled slices are clamped to zero at `y = 0, 1` since the `y`-boundary
//! rows of the grid carry the homogeneous Dirichlet condition.

use alloc::vec::Vec;

use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    /// Low frequency, `k = 5`, `g = u0`.
    One,
    /// High frequency, `k = 50`, `u0 = 0`.
    Two,
}

impl Example {
    pub fn from_index(i: u32) -> Option<Self> {
        match i {
            1 => Some(Self::One),
            2 => Some(Self::Two),
            _ => None,
        }
    }

    pub fn index(&self) -> u32 {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }

    pub fn wavenumber(&self) -> f64 {
        match self {
            Self::One => 5.0,
            Self::Two => 50.0,
        }
    }

    pub fn u0(&self, y: f64) -> f64 {
        match self {
            Self::One => example_one_u0(y),
            Self::Two => 0.0,
        }
    }

    pub fn g(&self, y: f64) -> f64 {
        match self {
            Self::One => example_one_u0(y),
            Self::Two => {
                let d = (y - 0.5) * (y - 0.5);
                -libm::sin(7.0 * libm::sqrt(0.001 + d)) / (7.0 * libm::sqrt(1.0 + d))
            }
        }
    }

    /// `(u0, g)` sampled on the y-grid with zero endpoints.
    pub fn boundary_slices(&self, grid: GridSpec) -> (Vec<f64>, Vec<f64>) {
        (clamped(grid, |y| self.u0(y)), clamped(grid, |y| self.g(y)))
    }
}

fn example_one_u0(y: f64) -> f64 {
    let a = 0.0625; // 0.5⁴
    let b = libm::pow(y - 0.5, 4.0);
    -libm::exp(-2.0 * (a + b)) + a + b
}

fn clamped(grid: GridSpec, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut s = grid.sample_slice(f);
    let n = grid.n();
    s[0] = 0.0;
    s[n] = 0.0;
    s
}
