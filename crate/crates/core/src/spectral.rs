//! Dirichlet sine basis on the y-grid, the frequency partition of the modes
//! and the truncation / stabilized operators built from it.
//!
//! The basis functions are `φ_j(y) = √2 sin(jπy)` with `-φ_j'' = μ_j φ_j`,
//! `μ_j = j²π²`. For a wavenumber `k`, `λ_j = μ_j − k²` splits the modes into
//! A1 (`λ > 0`), A2 (`λ = 0`) and A3 (`λ < 0`). Given `log γ`, the truncated
//! set is `B = { j ∈ A1 : λ_j > log²γ }`; everything outside `B ∪ A3` is the
//! band (`0 ≤ λ ≤ log²γ`).
//!
//! Projections use the Riemann sum on the interior nodes, which for
//! `j_max = N − 1` is an exact discrete sine transform:
//! `Σ_{n=1}^{N-1} sin(jπn/N) sin(lπn/N) = (N/2) δ_jl`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// `μ_j = j²π²`.
pub fn eigenvalue(j: usize) -> f64 {
    let jp = j as f64 * PI;
    jp * jp
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrequencyClass {
    /// `λ > 0`: exponentially growing in the Cauchy problem.
    A1,
    /// `λ = 0`.
    A2,
    /// `λ < 0`: oscillatory in the Cauchy problem.
    A3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeClassification {
    pub mu: f64,
    pub lambda: f64,
    pub class: FrequencyClass,
}

/// Classifies mode `j ≥ 1` for wavenumber `k > 0`.
///
/// `λ` within a few ulps of zero (e.g. `k = 2π`, `j = 2`) is snapped to exactly
/// zero and classified A2.
pub fn classify_mode(j: usize, k: f64) -> ModeClassification {
    debug_assert!(j >= 1 && k > 0.0);
    let mu = eigenvalue(j);
    let mut lambda = mu - k * k;
    if lambda.abs() <= 8.0 * f64::EPSILON * mu {
        lambda = 0.0;
    }
    let class = if lambda > 0.0 {
        FrequencyClass::A1
    } else if lambda < 0.0 {
        FrequencyClass::A3
    } else {
        FrequencyClass::A2
    };
    ModeClassification { mu, lambda, class }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeRecord {
    pub j: usize,
    pub mu: f64,
    pub lambda: f64,
    pub class: FrequencyClass,
    pub in_b: bool,
}

impl ModeRecord {
    /// Mode left untouched by the truncation (`ℕ \ (B ∪ A3)`).
    pub fn is_band(&self) -> bool {
        !self.in_b && self.class != FrequencyClass::A3
    }

    /// `s_j` in the decoupled stabilized mode equation `c'' = s_j c`:
    /// `λ_j` on the band, `−λ_j` on `B ∪ A3`.
    pub fn stabilized_rate(&self) -> f64 {
        if self.is_band() {
            self.lambda
        } else {
            -self.lambda
        }
    }
}

/// Classification of modes `1..=j_max` for a wavenumber `k` and
/// `log γ = 2k − η`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPartition {
    k: f64,
    log_gamma: f64,
    modes: Vec<ModeRecord>,
}

impl FrequencyPartition {
    /// Requires `0 < η ≤ k` (so that `log γ ≥ k`) and `j_max ≥ 1`.
    pub fn new(k: f64, eta: f64, j_max: usize) -> Result<Self> {
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
        if j_max == 0 {
            return Err(Error::InvalidParameter {
                name: "j_max",
                reason: "need at least one mode",
            });
        }
        let log_gamma = 2.0 * k - eta;
        let threshold = log_gamma * log_gamma;
        let modes = (1..=j_max)
            .map(|j| {
                let c = classify_mode(j, k);
                ModeRecord {
                    j,
                    mu: c.mu,
                    lambda: c.lambda,
                    class: c.class,
                    in_b: c.class == FrequencyClass::A1 && c.lambda > threshold,
                }
            })
            .collect();
        Ok(Self {
            k,
            log_gamma,
            modes,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn log_gamma(&self) -> f64 {
        self.log_gamma
    }

    pub fn gamma(&self) -> f64 {
        libm::exp(self.log_gamma)
    }

    pub fn j_max(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[ModeRecord] {
        &self.modes
    }

    /// Record of mode `j` (1-based).
    pub fn mode(&self, j: usize) -> &ModeRecord {
        &self.modes[j - 1]
    }

    pub fn a3_modes(&self) -> impl Iterator<Item = usize> + '_ {
        self.modes
            .iter()
            .filter(|m| m.class == FrequencyClass::A3)
            .map(|m| m.j)
    }

    pub fn band_modes(&self) -> impl Iterator<Item = usize> + '_ {
        self.modes.iter().filter(|m| m.is_band()).map(|m| m.j)
    }

    pub fn truncated_modes(&self) -> impl Iterator<Item = usize> + '_ {
        self.modes.iter().filter(|m| m.in_b).map(|m| m.j)
    }
}

/// Sine-basis coefficients `c_j = ⟨f, φ_j⟩`, `j = 1..=j_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    values: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn from_values(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(j_max: usize) -> Self {
        Self {
            values: vec![0.0; j_max],
        }
    }

    /// `e_j`: a single unit coefficient.
    pub fn unit(j: usize, j_max: usize) -> Self {
        let mut c = Self::zeros(j_max);
        c.values[j - 1] = 1.0;
        c
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coefficient of mode `j` (1-based).
    pub fn get(&self, j: usize) -> f64 {
        self.values[j - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `Σ c_j²`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|c| c * c).sum()
    }
}

/// Sampled sine basis on a y-grid with `N` intervals.
#[derive(Debug, Clone)]
pub struct SineBasis {
    n: usize,
    j_max: usize,
    // φ_j(y_i) for j = 1..=j_max, i = 1..N-1; row-major in j
    table: Vec<f64>,
}

impl SineBasis {
    /// Full basis, `j_max = N − 1`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "N",
                reason: "need at least two y-intervals",
            });
        }
        Self::with_modes(n, n - 1)
    }

    pub fn with_modes(n: usize, j_max: usize) -> Result<Self> {
        if n < 2 || j_max == 0 || j_max > n - 1 {
            return Err(Error::InvalidParameter {
                name: "j_max",
                reason: "must satisfy 1 <= j_max <= N - 1",
            });
        }
        let interior = n - 1;
        let mut table = Vec::with_capacity(j_max * interior);
        for j in 1..=j_max {
            for i in 1..n {
                // reduce jπi/N modulo 2π before evaluating
                let r = (j * i) % (2 * n);
                table.push(core::f64::consts::SQRT_2 * libm::sin(PI * r as f64 / n as f64));
            }
        }
        Ok(Self { n, j_max, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn dy(&self) -> f64 {
        1.0 / self.n as f64
    }

    fn row(&self, j: usize) -> &[f64] {
        let w = self.n - 1;
        &self.table[(j - 1) * w..j * w]
    }

    /// `φ_j(y_i)` at grid node `i` (0 and `N` give 0).
    pub fn phi(&self, j: usize, i: usize) -> f64 {
        if i == 0 || i >= self.n {
            0.0
        } else {
            self.row(j)[i - 1]
        }
    }

    /// Samples of `φ_j` on all `N + 1` nodes.
    pub fn mode_slice(&self, j: usize) -> Vec<f64> {
        (0..=self.n).map(|i| self.phi(j, i)).collect()
    }

    fn check(&self, slice: &[f64]) -> Result<()> {
        if slice.len() != self.n + 1 {
            return Err(Error::LengthMismatch {
                what: "y-slice",
                expected: self.n + 1,
                actual: slice.len(),
            });
        }
        Ok(())
    }

    /// Riemann-sum projection `c_j = Δy Σ_{i=1}^{N-1} f(y_i) φ_j(y_i)`.
    ///
    /// The endpoint samples do not enter the interior sum.
    pub fn forward(&self, slice: &[f64]) -> Result<SpectralCoeffs> {
        self.check(slice)?;
        Ok(self.forward_unchecked(slice))
    }

    pub(crate) fn forward_unchecked(&self, slice: &[f64]) -> SpectralCoeffs {
        let interior = &slice[1..self.n];
        let dy = self.dy();
        let values = (1..=self.j_max)
            .map(|j| {
                let s: f64 = self.row(j).iter().zip(interior).map(|(p, f)| p * f).sum();
                dy * s
            })
            .collect();
        SpectralCoeffs { values }
    }

    /// Reconstruction `f(y_i) = Σ_j c_j φ_j(y_i)`, zero at both endpoints.
    pub fn inverse(&self, coeffs: &SpectralCoeffs) -> Result<Vec<f64>> {
        if coeffs.len() != self.j_max {
            return Err(Error::LengthMismatch {
                what: "coefficients",
                expected: self.j_max,
                actual: coeffs.len(),
            });
        }
        let mut out = vec![0.0; self.n + 1];
        self.inverse_into(coeffs.values(), &mut out);
        Ok(out)
    }

    /// Writes `Σ_j c_j φ_j` into `out` (`N + 1` nodes).
    pub(crate) fn inverse_into(&self, coeffs: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        let interior = &mut out[1..self.n];
        for (j, &c) in (1..=self.j_max).zip(coeffs) {
            if c == 0.0 {
                continue;
            }
            for (o, p) in interior.iter_mut().zip(self.row(j)) {
                *o += c * p;
            }
        }
    }

    /// `Δy Σ_{i=1}^{N-1} f(y_i)²`.
    pub fn riemann_norm_sq(&self, slice: &[f64]) -> f64 {
        self.dy() * slice[1..self.n].iter().map(|v| v * v).sum::<f64>()
    }
}

/// The truncation operator `Q = Q₁ + Q₂`, the stabilized operator
/// `P = Q + 2∂²/∂y²` and its linearized part `P₁ = P + 2k²`, all acting on
/// y-slices through a [`SineBasis`].
#[derive(Debug, Clone)]
pub struct StabilizedOperators {
    basis: SineBasis,
    partition: FrequencyPartition,
}

impl StabilizedOperators {
    pub fn new(basis: SineBasis, partition: FrequencyPartition) -> Result<Self> {
        if basis.j_max() != partition.j_max() {
            return Err(Error::LengthMismatch {
                what: "partition modes",
                expected: basis.j_max(),
                actual: partition.j_max(),
            });
        }
        Ok(Self { basis, partition })
    }

    /// Full basis on `N` y-intervals with `log γ = 2k − η`.
    pub fn for_grid(n: usize, k: f64, eta: f64) -> Result<Self> {
        let basis = SineBasis::new(n)?;
        let partition = FrequencyPartition::new(k, eta, basis.j_max())?;
        Self::new(basis, partition)
    }

    pub fn basis(&self) -> &SineBasis {
        &self.basis
    }

    pub fn partition(&self) -> &FrequencyPartition {
        &self.partition
    }

    /// `Σ_j w(mode_j) ⟨f, φ_j⟩ φ_j`.
    pub fn apply_multiplier(
        &self,
        slice: &[f64],
        weight: impl Fn(&ModeRecord) -> f64,
    ) -> Result<Vec<f64>> {
        let mut coeffs = self.basis.forward(slice)?;
        for (c, mode) in coeffs.values_mut().iter_mut().zip(self.partition.modes()) {
            *c *= weight(mode);
        }
        self.basis.inverse(&coeffs)
    }

    /// `Q f = 2 Σ_{j∈B} λ_j c_j φ_j + 2 Σ_{j∈A3} λ_j c_j φ_j`.
    pub fn apply_q(&self, slice: &[f64]) -> Result<Vec<f64>> {
        self.apply_multiplier(slice, |m| if m.is_band() { 0.0 } else { 2.0 * m.lambda })
    }

    /// The `B` part of `Q`.
    pub fn apply_q1(&self, slice: &[f64]) -> Result<Vec<f64>> {
        self.apply_multiplier(slice, |m| if m.in_b { 2.0 * m.lambda } else { 0.0 })
    }

    /// The `A3` part of `Q`.
    pub fn apply_q2(&self, slice: &[f64]) -> Result<Vec<f64>> {
        self.apply_multiplier(slice, |m| {
            if m.class == FrequencyClass::A3 {
                2.0 * m.lambda
            } else {
                0.0
            }
        })
    }

    /// `P f = −2k² f − 2 Σ_{band} λ_j c_j φ_j`.
    pub fn apply_p(&self, slice: &[f64]) -> Result<Vec<f64>> {
        let k2 = self.partition.k() * self.partition.k();
        let mut out = self.apply_p1(slice)?;
        for (o, f) in out.iter_mut().zip(slice) {
            *o -= 2.0 * k2 * f;
        }
        Ok(out)
    }

    /// `P₁ f = −2 Σ_{band} λ_j c_j φ_j`.
    pub fn apply_p1(&self, slice: &[f64]) -> Result<Vec<f64>> {
        self.apply_multiplier(slice, |m| if m.is_band() { -2.0 * m.lambda } else { 0.0 })
    }

    /// Spectral second derivative `∂²f/∂y² = −Σ_j μ_j c_j φ_j`.
    pub fn second_derivative(&self, slice: &[f64]) -> Result<Vec<f64>> {
        self.apply_multiplier(slice, |m| -m.mu)
    }
}
