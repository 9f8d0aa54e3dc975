//! Closed-form mode solutions used as ground truth.
//!
//! With `u1 = 0`, every sine coefficient `c_j(x) = ⟨u(x,·), φ_j⟩` of the
//! Cauchy problem solves `c'' = λ_j c`, `c(0) = c0`, `c'(0) = 0`:
//!
//! | regime | true problem           | stabilized problem           |
//! |--------|------------------------|------------------------------|
//! | band   | `cosh(√λ x)`           | `cosh(√λ x)` (same equation) |
//! | `B`    | `cosh(√λ x)`           | `cos(√λ x)`                  |
//! | A3     | `cos(√−λ x)`           | `cosh(√−λ x)`                |
//! | A2     | constant               | constant                     |
//!
//! The stabilized column comes from substituting `φ_j` into the stabilized
//! equation: `P φ_j = −2k² φ_j − 2λ_j φ_j` on the band and `−2k² φ_j` on
//! `B ∪ A3`, which gives `c'' = λ_j c` and `c'' = −λ_j c` respectively.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::{GridFunction2D, GridSpec};
use crate::spectral::{classify_mode, eigenvalue, FrequencyClass, SineBasis, SpectralCoeffs};
use crate::{Error, Result};

/// Largest `√λ` for which `cosh` is evaluated.
pub const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeRegime {
    TrueA1,
    TrueA2,
    TrueA3,
    StabilizedBand,
    StabilizedTruncated,
    StabilizedA3,
}

/// A single-mode solution `c(x)` of either the true or the stabilized
/// problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    pub j: usize,
    pub regime: ModeRegime,
    pub c0: f64,
    rate: f64,
}

impl ModeSolution {
    /// Mode `j` of the Cauchy problem with wavenumber `k`.
    pub fn true_mode(j: usize, k: f64, c0: f64) -> Self {
        let m = classify_mode(j, k);
        let regime = match m.class {
            FrequencyClass::A1 => ModeRegime::TrueA1,
            FrequencyClass::A2 => ModeRegime::TrueA2,
            FrequencyClass::A3 => ModeRegime::TrueA3,
        };
        Self {
            j,
            regime,
            c0,
            rate: libm::sqrt(m.lambda.abs()),
        }
    }

    /// Mode `j` of the stabilized problem with `log γ`.
    pub fn stabilized_mode(j: usize, k: f64, log_gamma: f64, c0: f64) -> Self {
        let m = classify_mode(j, k);
        let regime = match m.class {
            FrequencyClass::A3 => ModeRegime::StabilizedA3,
            _ if m.lambda > log_gamma * log_gamma => ModeRegime::StabilizedTruncated,
            _ => ModeRegime::StabilizedBand,
        };
        Self {
            j,
            regime,
            c0,
            rate: libm::sqrt(m.lambda.abs()),
        }
    }

    /// `√|λ_j|`.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    fn grows(&self) -> bool {
        matches!(
            self.regime,
            ModeRegime::TrueA1 | ModeRegime::StabilizedBand | ModeRegime::StabilizedA3
        )
    }

    /// `c(x)`.
    pub fn value(&self, x: f64) -> f64 {
        let t = self.rate * x;
        if self.rate == 0.0 {
            self.c0
        } else if self.grows() {
            self.c0 * libm::cosh(t)
        } else {
            self.c0 * libm::cos(t)
        }
    }

    /// `c'(x)`.
    pub fn slope(&self, x: f64) -> f64 {
        let t = self.rate * x;
        if self.rate == 0.0 {
            0.0
        } else if self.grows() {
            self.c0 * self.rate * libm::sinh(t)
        } else {
            -self.c0 * self.rate * libm::sin(t)
        }
    }
}

/// `⟨u(x,·), φ_j⟩` of the Cauchy problem with `⟨u0, φ_j⟩ = c0`, `u1 = 0`.
pub fn true_coefficient(j: usize, x: f64, k: f64, c0: f64) -> f64 {
    ModeSolution::true_mode(j, k, c0).value(x)
}

fn require_growing(j: usize, k: f64) -> Result<f64> {
    let m = classify_mode(j, k);
    if m.class != FrequencyClass::A1 {
        return Err(Error::NotGrowingMode {
            j,
            lambda: m.lambda,
        });
    }
    Ok(m.lambda)
}

/// `⟨u_x(x,·), φ_j⟩ = √λ sinh(√λ x) c0`, defined for `j ∈ A1` only.
pub fn true_x_derivative_coefficient(j: usize, x: f64, k: f64, c0: f64) -> Result<f64> {
    require_growing(j, k)?;
    Ok(ModeSolution::true_mode(j, k, c0).slope(x))
}

/// Both sides of the exponential relation satisfied by growing modes,
/// `λ e^{(1−x)√λ} (c(x) + c'(x)/√λ) = λ c(1) + √λ c'(1)`.
pub fn relation_sides(j: usize, x: f64, k: f64, c0: f64) -> Result<(f64, f64)> {
    let lambda = require_growing(j, k)?;
    let s = libm::sqrt(lambda);
    let mode = ModeSolution::true_mode(j, k, c0);
    let lhs = lambda * libm::exp((1.0 - x) * s) * (mode.value(x) + mode.slope(x) / s);
    let rhs = lambda * mode.value(1.0) + s * mode.slope(1.0);
    Ok((lhs, rhs))
}

/// `LHS − RHS` of [`relation_sides`].
pub fn relation_residual(j: usize, x: f64, k: f64, c0: f64) -> Result<f64> {
    let (lhs, rhs) = relation_sides(j, x, k, c0)?;
    Ok(lhs - rhs)
}

/// Coefficient of the stabilized problem with `log γ = log_gamma`.
pub fn stabilized_coefficient(j: usize, x: f64, k: f64, log_gamma: f64, c0: f64) -> f64 {
    ModeSolution::stabilized_mode(j, k, log_gamma, c0).value(x)
}

fn check_exponents(coeffs: &SpectralCoeffs, k: f64) -> Result<()> {
    let worst = (1..=coeffs.len())
        .map(|j| libm::sqrt(classify_mode(j, k).lambda.abs()))
        .fold(0.0, f64::max);
    if worst > MAX_EXPONENT {
        return Err(Error::OracleOverflow { sqrt_lambda: worst });
    }
    Ok(())
}

fn synthesize(
    coeffs: &SpectralCoeffs,
    grid: GridSpec,
    mode: impl Fn(usize, f64) -> ModeSolution,
) -> Result<GridFunction2D> {
    let basis = SineBasis::with_modes(grid.n(), coeffs.len())?;
    let modes: Vec<ModeSolution> = coeffs
        .values()
        .iter()
        .enumerate()
        .map(|(i, &c)| mode(i + 1, c))
        .collect();
    let mut out = GridFunction2D::zeros(grid);
    let mut c = vec![0.0; coeffs.len()];
    for m in 0..=grid.m() {
        let x = grid.x(m);
        for (ci, md) in c.iter_mut().zip(&modes) {
            *ci = md.value(x);
        }
        basis.inverse_into(&c, out.slice_mut(m));
    }
    Ok(out)
}

/// Grid samples of `Σ_j c_j(x) φ_j(y)` for the Cauchy problem with data
/// coefficients `u0_coeffs` and `u1 = 0`.
pub fn synthesize_true_solution(
    u0_coeffs: &SpectralCoeffs,
    k: f64,
    grid: GridSpec,
) -> Result<GridFunction2D> {
    check_exponents(u0_coeffs, k)?;
    synthesize(u0_coeffs, grid, |j, c| ModeSolution::true_mode(j, k, c))
}

/// Same as [`synthesize_true_solution`] for the stabilized problem.
pub fn synthesize_stabilized_solution(
    u0_coeffs: &SpectralCoeffs,
    k: f64,
    log_gamma: f64,
    grid: GridSpec,
) -> Result<GridFunction2D> {
    check_exponents(u0_coeffs, k)?;
    synthesize(u0_coeffs, grid, |j, c| {
        ModeSolution::stabilized_mode(j, k, log_gamma, c)
    })
}

/// Norm of the true solution in `C([0,1];H²) ∩ C¹([0,1];H¹)`, taken as
/// `sup ‖u‖_{H²} + sup ‖u‖_{H¹} + sup ‖u_x‖_{H¹}` with the sups over
/// `samples` equispaced points of `[0,1]` and the Sobolev norms computed
/// spectrally (`‖u‖²_{H²} = Σ (1 + μ + μ²) c²`).
pub fn regularity_norm(u0_coeffs: &SpectralCoeffs, k: f64, samples: usize) -> Result<f64> {
    check_exponents(u0_coeffs, k)?;
    let samples = samples.max(2);
    let modes: Vec<(f64, ModeSolution)> = u0_coeffs
        .values()
        .iter()
        .enumerate()
        .map(|(i, &c)| (eigenvalue(i + 1), ModeSolution::true_mode(i + 1, k, c)))
        .collect();
    let (mut h2, mut h1, mut h1x) = (0.0f64, 0.0f64, 0.0f64);
    for s in 0..samples {
        let x = s as f64 / (samples - 1) as f64;
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for (mu, md) in &modes {
            let v = md.value(x);
            let d = md.slope(x);
            a += (1.0 + mu + mu * mu) * v * v;
            b += (1.0 + mu) * v * v;
            c += (1.0 + mu) * d * d;
        }
        h2 = h2.max(a);
        h1 = h1.max(b);
        h1x = h1x.max(c);
    }
    Ok(libm::sqrt(h2) + libm::sqrt(h1) + libm::sqrt(h1x))
}

/// Inputs of the L² error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBoundParams {
    pub k: f64,
    pub eta: f64,
    /// Noise level ε.
    pub eps: f64,
    /// Bound `M` on the regularity norm of the true solution.
    pub m_norm: f64,
}

/// `(1/k² + 1) ε² e^{(4k+1)x} + 16 M² e^{4k(x−1) + 2η + x} x / k²`, the bound
/// on `‖u^ε(x,·) − u(x,·)‖²`.
pub fn error_bound_rhs(x: f64, p: &ErrorBoundParams) -> f64 {
    let k2 = p.k * p.k;
    let noise = (1.0 / k2 + 1.0) * p.eps * p.eps * libm::exp((4.0 * p.k + 1.0) * x);
    let truncation =
        16.0 * p.m_norm * p.m_norm * libm::exp(4.0 * p.k * (x - 1.0) + 2.0 * p.eta + x) * x / k2;
    noise + truncation
}
