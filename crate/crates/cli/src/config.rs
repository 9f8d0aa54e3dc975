use std::path::PathBuf;

use anyhow::{bail, Result};
use helmstab_core::problems::Example;
use serde::Serialize;

pub const DEFAULT_M: usize = 400;
pub const DEFAULT_N: usize = 80;
pub const DEFAULT_Q: usize = 1;
pub const DEFAULT_EPS: [f64; 2] = [0.99, 0.1];
pub const DEFAULT_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
/// Exponent of the coarse-mesh check `N ≤ ε^{−β}` or `N ≤ k^β`.
pub const DEFAULT_BETA: f64 = 0.99;

/// One experiment: boundary data of an example, solver parameters, noise
/// levels and seeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// `"1"`, `"2"` or `"custom"` when `k` differs from the example's own
    /// wavenumber.
    pub label: String,
    /// Source of the boundary data.
    pub example: u32,
    pub k: f64,
    pub eta: f64,
    pub m: usize,
    pub n: usize,
    pub q: usize,
    pub eps: Vec<f64>,
    pub seeds: Vec<u64>,
    pub beta: f64,
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    #[serde(skip)]
    pub heatmaps: bool,
}

impl ExperimentConfig {
    /// Defaults for `example`: its own `k`, `η = k`, `400×80` grid, `q = 1`.
    pub fn for_example(example: Example) -> Self {
        let k = example.wavenumber();
        Self {
            label: example.index().to_string(),
            example: example.index(),
            k,
            eta: k,
            m: DEFAULT_M,
            n: DEFAULT_N,
            q: DEFAULT_Q,
            eps: DEFAULT_EPS.to_vec(),
            seeds: DEFAULT_SEEDS.to_vec(),
            beta: DEFAULT_BETA,
            out_dir: None,
            heatmaps: false,
        }
    }

    /// Applies command-line overrides. A wavenumber other than the example's
    /// own turns the run into a custom one; `η` then defaults to the new `k`.
    pub fn with_overrides(
        example: Example,
        k: Option<f64>,
        eta: Option<f64>,
        grid: Option<(usize, usize)>,
        q: Option<usize>,
    ) -> Self {
        let mut c = Self::for_example(example);
        if let Some(k) = k {
            if k != c.k {
                c.label = "custom".to_string();
            }
            c.k = k;
            c.eta = k;
        }
        if let Some(eta) = eta {
            c.eta = eta;
        }
        if let Some((m, n)) = grid {
            c.m = m;
            c.n = n;
        }
        if let Some(q) = q {
            c.q = q;
        }
        c
    }

    pub fn example_data(&self) -> Result<Example> {
        match Example::from_index(self.example) {
            Some(e) => Ok(e),
            None => bail!("unknown example {}", self.example),
        }
    }
}

/// Parses `MxN`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    let m = m
        .trim()
        .parse()
        .map_err(|e| format!("bad M in {s:?}: {e}"))?;
    let n = n
        .trim()
        .parse()
        .map_err(|e| format!("bad N in {s:?}: {e}"))?;
    if m == 0 || n < 2 {
        return Err(format!("grid {s:?} too small"));
    }
    Ok((m, n))
}

/// `A:B:STEPS`, the inclusive range `A..=B` with `STEPS` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl EpsRange {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.end
                } else {
                    self.start + h * i as f64
                }
            })
            .collect()
    }
}

pub fn parse_eps_range(s: &str) -> Result<EpsRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected A:B:STEPS, got {s:?}"));
    }
    let start: f64 = parts[0].parse().map_err(|e| format!("bad A: {e}"))?;
    let end: f64 = parts[1].parse().map_err(|e| format!("bad B: {e}"))?;
    let steps: usize = parts[2].parse().map_err(|e| format!("bad STEPS: {e}"))?;
    if steps == 0 {
        return Err("STEPS must be at least 1".to_string());
    }
    Ok(EpsRange { start, end, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = ExperimentConfig::for_example(Example::Two);
        assert_eq!((c.k, c.eta, c.m, c.n, c.q), (50.0, 50.0, 400, 80, 1));
        assert_eq!(c.eps, vec![0.99, 0.1]);
        assert!(c.seeds.len() >= 5);
    }

    #[test]
    fn overrides_and_custom_label() {
        let c = ExperimentConfig::with_overrides(Example::One, Some(5.0), None, None, None);
        assert_eq!(c.label, "1");
        let c = ExperimentConfig::with_overrides(
            Example::One,
            Some(8.0),
            None,
            Some((500, 100)),
            Some(3),
        );
        assert_eq!(c.label, "custom");
        assert_eq!((c.k, c.eta, c.m, c.n, c.q), (8.0, 8.0, 500, 100, 3));
        let c = ExperimentConfig::with_overrides(Example::One, None, Some(2.5), None, None);
        assert_eq!(c.eta, 2.5);
    }

    #[test]
    fn grid_and_range_parsing() {
        assert_eq!(parse_grid("400x80"), Ok((400, 80)));
        assert!(parse_grid("400").is_err());
        assert!(parse_grid("ax80").is_err());
        let r = parse_eps_range("0.1:0.9:5").unwrap();
        let v = r.values();
        assert_eq!(v.len(), 5);
        assert_eq!((v[0], v[4]), (0.1, 0.9));
        assert!((v[2] - 0.5).abs() < 1e-15);
        assert_eq!(parse_eps_range("0.5:0.5:1").unwrap().values(), vec![0.5]);
        assert!(parse_eps_range("0.1:0.9").is_err());
        assert!(parse_eps_range("0.1:0.9:0").is_err());
    }
}
