//! Explicit x-marching of the stabilized (hyperbolic) Cauchy system.
//!
//! With `x` playing the role of time, the stabilized equation
//! `u_xx − u_yy + P u + k² u = 0` is a wave equation. Both the linearized sweep
//! `V^{q+1}_xx − V^{q+1}_yy + P₁ V^q − k² V^{q+1} = 0` and the direct system
//! are marched with the central (leapfrog) scheme
//!
//! ```text
//! V_{m+1} = 2 V_m − V_{m−1} + Δx² · F_m,
//! V_1     = V_0 + Δx · V_x(0) + (Δx² / 2) · F_0,
//! ```
//!
//! where `F` is the right-hand side of `V_xx = …` evaluated at row `m`. The
//! y-derivatives and `P₁` are applied in the sine basis, so every mode `j`
//! follows its own three-term recurrence:
//!
//! * linearized: `c'' = −λ_j c + 2λ_j [j in band] s_j` (`s` = previous sweep),
//! * direct:     `c'' = λ_j c` on the band and `c'' = −λ_j c` on `B ∪ A3`.
//!
//! Rows at `y ∈ {0, 1}` are identically zero.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::{GridFunction2D, GridSpec};
use crate::spectral::{SpectralCoeffs, StabilizedOperators};
use crate::{Error, Result};

/// Parameters of the stabilized scheme, `log γ = 2k − η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizationParams {
    k: f64,
    eta: f64,
    sweeps: usize,
    grid: GridSpec,
}

impl StabilizationParams {
    /// Validates `0 < η ≤ k`, `q ≥ 1`, `Δx ≤ Δy` and the step constraint
    /// `log γ · Δx · γ^{Δx} < 1`.
    pub fn new(k: f64, eta: f64, sweeps: usize, grid: GridSpec) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: "wavenumber must be positive and finite",
            });
        }
        if !(eta > 0.0 && eta <= k) {
            return Err(Error::InvalidParameter {
                name: "eta",
                reason: "must satisfy 0 < eta <= k",
            });
        }
        if sweeps == 0 {
            return Err(Error::InvalidParameter {
                name: "q",
                reason: "need at least one linearization sweep",
            });
        }
        if grid.dx() > grid.dy() {
            return Err(Error::StepConstraint {
                reason: "dx must not exceed dy",
                value: grid.dx() / grid.dy(),
            });
        }
        let params = Self {
            k,
            eta,
            sweeps,
            grid,
        };
        let s = params.step_constraint();
        if s.is_nan() || s >= 1.0 {
            return Err(Error::StepConstraint {
                reason: "log(gamma) dx gamma^dx must be < 1",
                value: s,
            });
        }
        Ok(params)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn log_gamma(&self) -> f64 {
        2.0 * self.k - self.eta
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// `log γ · Δx · γ^{Δx}`.
    pub fn step_constraint(&self) -> f64 {
        let t = self.log_gamma() * self.grid.dx();
        t * libm::exp(t)
    }

    pub fn with_sweeps(self, sweeps: usize) -> Result<Self> {
        Self::new(self.k, self.eta, sweeps, self.grid)
    }
}

/// Cauchy data at `x = 0`: the value and the x-derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchySlice {
    value: Vec<f64>,
    slope: Vec<f64>,
}

impl CauchySlice {
    /// Data with zero slope. Endpoints must vanish within 1e-10 and are then
    /// set to exactly zero.
    pub fn new(value: Vec<f64>) -> Result<Self> {
        let slope = vec![0.0; value.len()];
        Self::with_slope(value, slope)
    }

    pub fn with_slope(mut value: Vec<f64>, slope: Vec<f64>) -> Result<Self> {
        if value.len() < 3 {
            return Err(Error::InvalidParameter {
                name: "value",
                reason: "slice needs at least three nodes",
            });
        }
        if slope.len() != value.len() {
            return Err(Error::LengthMismatch {
                what: "slope",
                expected: value.len(),
                actual: slope.len(),
            });
        }
        let last = value.len() - 1;
        for &v in &[value[0], value[last]] {
            if v.abs() > 1e-10 {
                return Err(Error::NonVanishingEndpoint { value: v });
            }
        }
        value[0] = 0.0;
        value[last] = 0.0;
        Ok(Self { value, slope })
    }

    pub fn value(&self) -> &[f64] {
        &self.value
    }

    pub fn slope(&self) -> &[f64] {
        &self.slope
    }
}

/// Marching solver for one parameter set; owns the sine basis and partition.
#[derive(Debug, Clone)]
pub struct StabilizedSolver {
    params: StabilizationParams,
    ops: StabilizedOperators,
}

impl StabilizedSolver {
    pub fn new(params: StabilizationParams) -> Result<Self> {
        let ops = StabilizedOperators::for_grid(params.grid.n(), params.k, params.eta)?;
        // leapfrog on c'' = −ω² c is stable for ωΔx < 2; the linearized sweep
        // oscillates on every mode with λ > 0
        let omega = ops
            .partition()
            .modes()
            .iter()
            .map(|m| m.lambda.max(0.0))
            .fold(0.0, f64::max);
        let courant = libm::sqrt(omega) * params.grid.dx();
        if courant.is_nan() || courant >= 2.0 {
            return Err(Error::StepConstraint {
                reason: "leapfrog stability needs sqrt(lambda_max) dx < 2",
                value: courant,
            });
        }
        Ok(Self { params, ops })
    }

    pub fn params(&self) -> &StabilizationParams {
        &self.params
    }

    pub fn operators(&self) -> &StabilizedOperators {
        &self.ops
    }

    fn check_data(&self, data: &CauchySlice) -> Result<()> {
        self.params.grid.check_slice("Cauchy data", data.value())
    }

    /// Runs the leapfrog recurrence with `rhs(m, c, out)` filling
    /// `F_m` for coefficient vector `c` at row `m`.
    fn march(
        &self,
        data: &CauchySlice,
        mut rhs: impl FnMut(usize, &[f64], &mut [f64]),
    ) -> GridFunction2D {
        let grid = self.params.grid;
        let basis = self.ops.basis();
        let dx = grid.dx();
        let dx2 = dx * dx;
        let j_max = basis.j_max();

        let mut out = GridFunction2D::zeros(grid);
        out.slice_mut(0).copy_from_slice(data.value());

        let mut prev = basis.forward_unchecked(data.value()).into_values();
        let slope = basis.forward_unchecked(data.slope()).into_values();
        let mut force = vec![0.0; j_max];
        rhs(0, &prev, &mut force);
        let mut curr: Vec<f64> = (0..j_max)
            .map(|j| prev[j] + dx * slope[j] + 0.5 * dx2 * force[j])
            .collect();
        basis.inverse_into(&curr, out.slice_mut(1));

        for m in 1..grid.m() {
            rhs(m, &curr, &mut force);
            for j in 0..j_max {
                let next = 2.0 * curr[j] - prev[j] + dx2 * force[j];
                prev[j] = curr[j];
                curr[j] = next;
            }
            basis.inverse_into(&curr, out.slice_mut(m + 1));
        }
        out
    }

    /// One linearized sweep: returns `V^{q+1}` given `V^q = source_prev`.
    pub fn march_once(
        &self,
        source_prev: &GridFunction2D,
        data: &CauchySlice,
    ) -> Result<GridFunction2D> {
        self.check_data(data)?;
        if source_prev.grid() != self.params.grid {
            let g = self.params.grid;
            return Err(Error::GridMismatch {
                left_m: g.m(),
                left_n: g.n(),
                right_m: source_prev.grid().m(),
                right_n: source_prev.grid().n(),
            });
        }
        let modes = self.ops.partition().modes();
        let basis = self.ops.basis();
        // only band modes see the previous sweep (through P₁)
        let source: Vec<SpectralCoeffs> = (0..=self.params.grid.m())
            .map(|m| basis.forward_unchecked(source_prev.slice(m)))
            .collect();

        Ok(self.march(data, |m, c, f| {
            let s = source[m].values();
            for (j, mode) in modes.iter().enumerate() {
                let mut v = -mode.lambda * c[j];
                if mode.is_band() {
                    v += 2.0 * mode.lambda * s[j];
                }
                f[j] = v;
            }
        }))
    }

    /// `V^{ε,q}`: starts from the constant-in-x extension of the datum and
    /// applies `q` linearized sweeps.
    pub fn solve_v(&self, data: &CauchySlice) -> Result<GridFunction2D> {
        self.check_data(data)?;
        let grid = self.params.grid;
        let mut iterate = GridFunction2D::zeros(grid);
        for m in 0..=grid.m() {
            iterate.slice_mut(m).copy_from_slice(data.value());
        }
        for _ in 0..self.params.sweeps {
            iterate = self.march_once(&iterate, data)?;
        }
        Ok(iterate)
    }

    /// Marches the stabilized system itself, with `P` applied to the current
    /// row (no linearization).
    pub fn solve_direct(&self, data: &CauchySlice) -> Result<GridFunction2D> {
        self.check_data(data)?;
        let rates: Vec<f64> = self
            .ops
            .partition()
            .modes()
            .iter()
            .map(|m| m.stabilized_rate())
            .collect();
        Ok(self.march(data, |_, c, f| {
            for ((fj, cj), s) in f.iter_mut().zip(c).zip(&rates) {
                *fj = s * cj;
            }
        }))
    }
}

/// `u = U + V`.
pub fn compose_solution(u: &GridFunction2D, v: &GridFunction2D) -> Result<GridFunction2D> {
    u.sum(v)
}
