//! Runtime self-check of the solvers against the closed-form mode solutions.

use anyhow::Result;
use helmstab_core::marching::{CauchySlice, StabilizationParams, StabilizedSolver};
use helmstab_core::oracle::{
    error_bound_rhs, regularity_norm, relation_sides, synthesize_stabilized_solution,
    synthesize_true_solution, ErrorBoundParams,
};
use helmstab_core::spectral::{classify_mode, FrequencyClass, SineBasis, SpectralCoeffs};
use helmstab_core::{GridFunction2D, GridSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn direct_solution(j: usize, k: f64, m: usize, n: usize) -> Result<GridFunction2D> {
    let grid = GridSpec::new(m, n)?;
    let solver = StabilizedSolver::new(StabilizationParams::new(k, k, 1, grid)?)?;
    let data = CauchySlice::new(SineBasis::new(n)?.mode_slice(j))?;
    Ok(solver.solve_direct(&data)?)
}

fn rel_l2(a: &GridFunction2D, b: &GridFunction2D) -> Result<f64> {
    Ok(a.difference(b)?.l2_sum_norm() / b.l2_sum_norm())
}

/// Worst relative residual of the exponential relation over `A1 ∩ [1, 79]`.
pub fn relation_identity() -> Result<Check> {
    let mut worst = 0.0f64;
    for k in [5.0, 50.0] {
        for j in (1..=79).filter(|&j| classify_mode(j, k).class == FrequencyClass::A1) {
            for i in 0..=100 {
                let (lhs, rhs) = relation_sides(j, i as f64 / 100.0, k, 1.0)?;
                worst = worst.max((lhs - rhs).abs() / rhs.abs());
            }
        }
    }
    Ok(check(
        "growing-mode relation",
        worst <= 1e-10,
        format!("max relative residual {worst:.3e} (limit 1e-10)"),
    ))
}

/// Marched single modes against the stabilized closed form at `M = 400` and
/// `M = 800`.
pub fn mode_equivalence() -> Result<Vec<Check>> {
    let k = 5.0;
    let mut out = Vec::new();
    for j in [1usize, 2, 3, 5] {
        let mut errs = [0.0; 2];
        for (e, m) in errs.iter_mut().zip([400usize, 800]) {
            let u = direct_solution(j, k, m, 80)?;
            let o = synthesize_stabilized_solution(&SpectralCoeffs::unit(j, 79), k, k, u.grid())?;
            *e = rel_l2(&u, &o)?;
        }
        let ratio = errs[0] / errs[1];
        out.push(check(
            &format!("mode {j} marching"),
            errs[0] <= 1e-3 && (3.5..=4.5).contains(&ratio),
            format!(
                "error {:.3e} at M=400, ratio {ratio:.3} on doubling M",
                errs[0]
            ),
        ));
    }
    Ok(out)
}

/// Squared slice error of noiseless single-mode runs against the L² bound.
pub fn error_bound() -> Result<Vec<Check>> {
    let k = 5.0;
    let (m, n) = (400usize, 80usize);
    let mut out = Vec::new();
    for j in [1usize, 2, 3] {
        let coeffs = SpectralCoeffs::unit(j, n - 1);
        let u = direct_solution(j, k, m, n)?;
        let truth = synthesize_true_solution(&coeffs, k, u.grid())?;
        let params = ErrorBoundParams {
            k,
            eta: k,
            eps: 0.0,
            m_norm: regularity_norm(&coeffs, k, m + 1)?,
        };
        let dy = u.grid().dy();
        let mut passed = true;
        let mut parts = Vec::new();
        for x in [0.25, 0.5, 0.75, 1.0] {
            let row = (x * m as f64).round() as usize;
            let err: f64 = u
                .slice(row)
                .iter()
                .zip(truth.slice(row))
                .map(|(a, b)| dy * (a - b) * (a - b))
                .sum();
            let bound = error_bound_rhs(x, &params);
            passed &= err <= bound;
            parts.push(format!("x={x}: {err:.3e} <= {bound:.3e}"));
        }
        out.push(check(
            &format!("mode {j} error bound"),
            passed,
            parts.join(", "),
        ));
    }
    Ok(out)
}

/// The synthesized solution starts from the sampled datum.
pub fn synthesis_start() -> Result<Check> {
    let grid = GridSpec::new(20, 40)?;
    let basis = SineBasis::new(40)?;
    let coeffs = SpectralCoeffs::from_values((1..40).map(|j| 1.0 / (j * j) as f64).collect());
    let datum = basis.inverse(&coeffs)?;
    let u = synthesize_true_solution(&coeffs, 5.0, grid)?;
    let worst = u
        .slice(0)
        .iter()
        .zip(&datum)
        .fold(0.0f64, |w, (a, b)| w.max((a - b).abs()));
    Ok(check(
        "synthesis at x = 0",
        worst <= 1e-12,
        format!("max deviation {worst:.3e}"),
    ))
}

pub fn run_all() -> Result<Vec<Check>> {
    let mut out = vec![relation_identity()?, synthesis_start()?];
    out.extend(mode_equivalence()?);
    out.extend(error_bound()?);
    Ok(out)
}
