//! Additive noise, the coarse-mesh constraint and error metrics.
//!
//! Noise stream: a ChaCha8 generator seeded with `seed_from_u64(seed)` emits
//! one `u64` per node `n = 0..=N` in order; each word `w` maps to
//! `2·(w >> 11)·2⁻⁵³ − 1 ∈ [−1, 1)`. The two endpoint samples are drawn and
//! then replaced by zero, so the stream position of interior nodes does not
//! depend on the clamping.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::grid::GridFunction2D;
use crate::{Error, Result};

/// Maps a raw 64-bit word to `[−1, 1)`.
#[inline]
pub fn unit_symmetric(word: u64) -> f64 {
    let u = (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * u - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    eps: f64,
    seed: u64,
    beta: f64,
}

impl NoiseModel {
    /// `eps ∈ [0, 1)`, `beta ∈ (0, 1)`. `eps = 0` is allowed for noiseless
    /// runs.
    pub fn new(eps: f64, seed: u64, beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::InvalidParameter {
                name: "eps",
                reason: "noise level must lie in [0, 1)",
            });
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                reason: "grid-constraint exponent must lie in (0, 1)",
            });
        }
        Ok(Self { eps, seed, beta })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The unscaled realization `rand(y_n)`, `n = 0..=N`, endpoints zero.
    pub fn direction(&self, n: usize) -> Vec<f64> {
        noise_direction(n, self.seed)
    }

    /// `eps · rand(y_n)`.
    pub fn noise_vector(&self, n: usize) -> Vec<f64> {
        let mut v = self.direction(n);
        for s in &mut v {
            *s *= self.eps;
        }
        v
    }
}

/// `rand(y_n)` for `n = 0..=N` from `seed`, with `rand(y_0) = rand(y_N) = 0`.
pub fn noise_direction(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..=n).map(|_| unit_symmetric(rng.next_u64())).collect();
    v[0] = 0.0;
    v[n] = 0.0;
    v
}

/// `u0 + eps·rand`, endpoints clamped to zero.
pub fn add_noise(u0: &[f64], model: &NoiseModel) -> Vec<f64> {
    let n = u0.len().saturating_sub(1);
    if u0.is_empty() {
        return Vec::new();
    }
    let noise = model.noise_vector(n);
    let mut out: Vec<f64> = u0.iter().zip(&noise).map(|(a, b)| a + b).collect();
    out[0] = 0.0;
    out[n] = 0.0;
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConstraintReport {
    pub n: usize,
    /// `ε^{−β}`, infinite for `ε = 0`.
    pub eps_limit: f64,
    /// `k^β`.
    pub k_limit: f64,
    pub eps_ok: bool,
    pub k_ok: bool,
}

impl GridConstraintReport {
    pub fn passed(&self) -> bool {
        self.eps_ok || self.k_ok
    }
}

/// Coarse-mesh check: passes when `N ≤ ε^{−β}` or `N ≤ k^β`.
pub fn check_grid_constraint(n: usize, eps: f64, k: f64, beta: f64) -> GridConstraintReport {
    let eps_limit = if eps > 0.0 {
        libm::pow(eps, -beta)
    } else {
        f64::INFINITY
    };
    let k_limit = libm::pow(k, beta);
    let nf = n as f64;
    GridConstraintReport {
        n,
        eps_limit,
        k_limit,
        eps_ok: nf <= eps_limit,
        k_ok: nf <= k_limit,
    }
}

/// `100 · ‖approx − truth‖ / ‖truth‖` with plain sums over every node.
pub fn relative_error_percent(approx: &GridFunction2D, truth: &GridFunction2D) -> Result<f64> {
    approx.check_same_grid(truth)?;
    let mut diff = 0.0;
    let mut norm = 0.0;
    for (a, t) in approx.values().iter().zip(truth.values()) {
        diff += (a - t) * (a - t);
        norm += t * t;
    }
    if norm == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(100.0 * libm::sqrt(diff) / libm::sqrt(norm))
}

/// `√(Δy Σ f² + Δy Σ ((f_{n+1} − f_n)/Δy)²)` on a slice of `N+1` nodes.
pub fn discrete_h1_norm(slice: &[f64], dy: f64) -> f64 {
    let l2: f64 = slice.iter().map(|v| v * v).sum();
    let grad: f64 = slice
        .windows(2)
        .map(|w| {
            let d = (w[1] - w[0]) / dy;
            d * d
        })
        .sum();
    libm::sqrt(dy * (l2 + grad))
}
