//! Experiment pipeline: reference solution, Neumann data, `U`, noisy `V`
//! sweeps and the relative error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use helmstab_core::forward::{extract_trace, generate_neumann_data, solve_dirichlet, solve_u};
use helmstab_core::marching::{
    compose_solution, CauchySlice, StabilizationParams, StabilizedSolver,
};
use helmstab_core::noise::{add_noise, check_grid_constraint, relative_error_percent, NoiseModel};
use helmstab_core::{GridFunction2D, GridSpec};
use serde::Serialize;

use crate::config::{EpsRange, ExperimentConfig};
use crate::io;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricRow {
    pub eps: f64,
    pub seed: u64,
    pub e_percent: f64,
    pub grid_file: Option<String>,
    /// Seconds; kept out of the metrics file so reruns compare equal.
    #[serde(skip)]
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub eps: f64,
    pub seeds: usize,
    pub mean: f64,
    /// Sample standard deviation, zero for a single seed.
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub config: ExperimentConfig,
    pub truth_file: Option<String>,
    pub metrics: Vec<MetricRow>,
    pub summary: Vec<Summary>,
    pub warnings: Vec<String>,
}

impl RunRecord {
    pub fn mean_for(&self, eps: f64) -> Option<f64> {
        self.summary.iter().find(|s| s.eps == eps).map(|s| s.mean)
    }
}

#[derive(Serialize)]
struct Timing {
    eps: f64,
    seed: u64,
    wall_time: f64,
}

/// Everything that does not depend on the noise realization.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub config: ExperimentConfig,
    pub grid: GridSpec,
    pub truth: GridFunction2D,
    pub u0: Vec<f64>,
    pub u1: Vec<f64>,
    /// Solution of the Neumann system carrying `u1`.
    pub big_u: GridFunction2D,
    solver: StabilizedSolver,
}

/// Validates the configuration, solves for the reference field and the `U`
/// system.
pub fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    let example = config.example_data()?;
    let grid = GridSpec::new(config.m, config.n)?;
    let params = StabilizationParams::new(config.k, config.eta, config.q, grid)?;
    let solver = StabilizedSolver::new(params)?;

    let (u0, g) = example.boundary_slices(grid);
    let truth = solve_dirichlet(&u0, &g, config.k, grid).context("reference solve")?;
    let u1 = generate_neumann_data(&truth, &u0)?;
    let big_u = solve_u(&u1, config.k, grid).context("Neumann solve")?;
    Ok(Prepared {
        config: config.clone(),
        grid,
        truth,
        u0,
        u1,
        big_u,
        solver,
    })
}

impl Prepared {
    /// `U + V^{ε,q}` for one noise realization. `eps = 0` gives the noiseless
    /// reconstruction.
    pub fn reconstruct(&self, eps: f64, seed: u64) -> Result<GridFunction2D> {
        let model = NoiseModel::new(eps, seed, self.config.beta)?;
        let noisy = add_noise(&self.u0, &model);
        let trace = extract_trace(&self.big_u, 0)?;
        let mut value: Vec<f64> = noisy.iter().zip(&trace).map(|(a, b)| a - b).collect();
        let last = value.len() - 1;
        value[0] = 0.0;
        value[last] = 0.0;
        let v = self.solver.solve_v(&CauchySlice::new(value)?)?;
        Ok(compose_solution(&self.big_u, &v)?)
    }

    pub fn relative_error(&self, approx: &GridFunction2D) -> Result<f64> {
        Ok(relative_error_percent(approx, &self.truth)?)
    }

    pub fn solver(&self) -> &StabilizedSolver {
        &self.solver
    }
}

fn summarize(eps: f64, rows: &[MetricRow]) -> Summary {
    let values: Vec<f64> = rows
        .iter()
        .filter(|r| r.eps == eps)
        .map(|r| r.e_percent)
        .collect();
    let n = values.len();
    let mean = if n == 0 {
        f64::NAN
    } else {
        values.iter().sum::<f64>() / n as f64
    };
    let stddev = if n < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    Summary {
        eps,
        seeds: n,
        mean,
        stddev,
    }
}

fn constraint_warnings(config: &ExperimentConfig) -> Vec<String> {
    let mut out = Vec::new();
    for &eps in &config.eps {
        let r = check_grid_constraint(config.n, eps, config.k, config.beta);
        if !r.passed() {
            out.push(format!(
                "grid constraint fails for eps={eps}: N={} exceeds eps^-beta={:.4} and k^beta={:.4} (beta={})",
                config.n, r.eps_limit, r.k_limit, config.beta
            ));
        }
    }
    out
}

fn file_label(eps: f64, seed: u64) -> String {
    format!("recon_eps{eps}_seed{seed}")
}

fn path_string(dir: &Path, name: &str) -> (PathBuf, String) {
    let p = dir.join(name);
    let s = p.to_string_lossy().into_owned();
    (p, s)
}

/// Runs every `(eps, seed)` pair, writing grids, heatmaps and metrics when an
/// output directory is configured.
pub fn run_example(config: &ExperimentConfig) -> Result<RunRecord> {
    let prepared = prepare(config)?;
    let out = config.out_dir.as_deref();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }

    let truth_file = match out {
        Some(dir) => {
            let (p, s) = path_string(dir, "truth.csv");
            io::write_grid_csv(&prepared.truth, &p)?;
            if config.heatmaps {
                io::write_heatmap(&prepared.truth, &dir.join("truth.ppm"))?;
            }
            Some(s)
        }
        None => None,
    };

    let mut metrics = Vec::new();
    for &eps in &config.eps {
        for &seed in &config.seeds {
            let start = Instant::now();
            let recon = prepared.reconstruct(eps, seed)?;
            let e_percent = prepared.relative_error(&recon)?;
            let wall_time = start.elapsed().as_secs_f64();
            let grid_file = match out {
                Some(dir) => {
                    let label = file_label(eps, seed);
                    let (p, s) = path_string(dir, &format!("{label}.csv"));
                    io::write_grid_csv(&recon, &p)?;
                    if config.heatmaps {
                        io::write_heatmap(&recon, &dir.join(format!("{label}.ppm")))?;
                    }
                    Some(s)
                }
                None => None,
            };
            metrics.push(MetricRow {
                eps,
                seed,
                e_percent,
                grid_file,
                wall_time,
            });
        }
    }

    let summary = config.eps.iter().map(|&e| summarize(e, &metrics)).collect();
    let record = RunRecord {
        config: config.clone(),
        truth_file,
        metrics,
        summary,
        warnings: constraint_warnings(config),
    };
    if let Some(dir) = out {
        io::write_json(&record, &dir.join("metrics.json"))?;
        let timings: Vec<Timing> = record
            .metrics
            .iter()
            .map(|r| Timing {
                eps: r.eps,
                seed: r.seed,
                wall_time: r.wall_time,
            })
            .collect();
        io::write_json(&timings, &dir.join("timings.json"))?;
    }
    Ok(record)
}

/// [`run_example`] over an evenly spaced noise range; also writes
/// `sweep.csv` (`eps,mean,stddev`).
pub fn run_sweep(config: &ExperimentConfig, range: EpsRange) -> Result<RunRecord> {
    let mut c = config.clone();
    c.eps = range.values();
    let record = run_example(&c)?;
    if let Some(dir) = &c.out_dir {
        use std::io::Write;
        let mut f = std::fs::File::create(dir.join("sweep.csv"))?;
        writeln!(f, "eps,mean,stddev")?;
        for s in &record.summary {
            writeln!(f, "{:.16e},{:.16e},{:.16e}", s.eps, s.mean, s.stddev)?;
        }
    }
    Ok(record)
}
