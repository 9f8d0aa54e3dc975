//! Well-posed central finite-difference Helmholtz solvers.
//!
//! Both solvers discretize `Δu + k²u = 0` with the 5-point stencil, number the
//! unknown interior nodes m-major (`n` fastest, so the matrix is banded with
//! half-bandwidth `N − 1`) and solve with a pivoted banded LU.
//!
//! * [`solve_dirichlet`]: data on all four sides, used to produce reference
//!   solutions.
//! * [`solve_u`]: Neumann datum at `x = 0`, zero Dirichlet data elsewhere.
//!   The Neumann condition is imposed through a ghost node,
//!   `(U_{1,n} − U_{−1,n}) / 2Δx = u1(y_n)`, eliminated against the stencil
//!   at `m = 0`.
//!
//! Before factorizing, the exact spectrum of the separable discrete operator
//! is scanned; a 2-norm condition number above [`CONDITION_LIMIT`] is
//! reported as a discrete resonance.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::banded::BandMatrix;
use crate::grid::{GridFunction2D, GridSpec};
use crate::{Error, Result};

/// Condition numbers above this are treated as a discrete resonance.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Boundary treatment at `x = 0` for the spectrum scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftBoundary {
    Dirichlet,
    /// Ghost-node Neumann condition.
    Neumann,
}

/// Spectrum summary of the discrete operator `Δ_h + k²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEstimate {
    /// Eigenvalue of smallest magnitude.
    pub smallest: f64,
    /// Largest eigenvalue magnitude.
    pub largest: f64,
}

impl SpectrumEstimate {
    pub fn condition(&self) -> f64 {
        self.largest / self.smallest.abs()
    }
}

/// Exact eigenvalues of the separable discrete operator.
///
/// In y (Dirichlet, `N` intervals): `−(4/Δy²) sin²(jπ/2N)`, `j = 1..N−1`.
/// In x: `−(4/Δx²) sin²(iπ/2M)`, `i = 1..M−1` for Dirichlet, and
/// `−(4/Δx²) sin²((2i−1)π/4M)`, `i = 1..M` for the ghost-node Neumann end.
pub fn spectrum(k: f64, grid: GridSpec, left: LeftBoundary) -> SpectrumEstimate {
    let (dx, dy) = (grid.dx(), grid.dy());
    let x_ev: Vec<f64> = match left {
        LeftBoundary::Dirichlet => (1..grid.m())
            .map(|i| {
                let s = libm::sin(i as f64 * PI / (2.0 * grid.m() as f64));
                -4.0 / (dx * dx) * s * s
            })
            .collect(),
        LeftBoundary::Neumann => (1..=grid.m())
            .map(|i| {
                let s = libm::sin((2 * i - 1) as f64 * PI / (4.0 * grid.m() as f64));
                -4.0 / (dx * dx) * s * s
            })
            .collect(),
    };
    let y_ev: Vec<f64> = (1..grid.n())
        .map(|j| {
            let s = libm::sin(j as f64 * PI / (2.0 * grid.n() as f64));
            -4.0 / (dy * dy) * s * s
        })
        .collect();

    let k2 = k * k;
    let mut smallest = f64::INFINITY;
    let mut largest = 0.0f64;
    for &a in &x_ev {
        for &b in &y_ev {
            let ev = a + b + k2;
            if ev.abs() < smallest.abs() {
                smallest = ev;
            }
            largest = largest.max(ev.abs());
        }
    }
    SpectrumEstimate { smallest, largest }
}

fn check_resonance(k: f64, grid: GridSpec, left: LeftBoundary) -> Result<()> {
    let est = spectrum(k, grid, left);
    let condition = est.condition();
    if condition.is_nan() || condition > CONDITION_LIMIT {
        return Err(Error::NearSingular {
            eigenvalue: est.smallest,
            condition,
        });
    }
    Ok(())
}

fn check_wavenumber(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "wavenumber must be positive and finite",
        });
    }
    Ok(())
}

fn check_vanishing_ends(slice: &[f64]) -> Result<()> {
    for &v in [slice[0], slice[slice.len() - 1]].iter() {
        if v.abs() > 1e-10 {
            return Err(Error::NonVanishingEndpoint { value: v });
        }
    }
    Ok(())
}

/// Assembles the stencil on x-columns `first..=last` (each with `N − 1`
/// interior y-nodes). Returns the matrix; coupling to columns outside the
/// range is left to the caller's right-hand side.
fn assemble(k: f64, grid: GridSpec, first: usize, last: usize) -> BandMatrix {
    let ny = grid.n() - 1;
    let cols = last - first + 1;
    let size = cols * ny;
    let (cx, cy) = (1.0 / (grid.dx() * grid.dx()), 1.0 / (grid.dy() * grid.dy()));
    let centre = -2.0 * cx - 2.0 * cy + k * k;

    let mut a = BandMatrix::zeros(size, ny, ny);
    for c in 0..cols {
        for j in 0..ny {
            let row = c * ny + j;
            a.set(row, row, centre);
            if j > 0 {
                a.set(row, row - 1, cy);
            }
            if j + 1 < ny {
                a.set(row, row + 1, cy);
            }
            if c > 0 {
                a.set(row, row - ny, cx);
            }
            if c + 1 < cols {
                a.set(row, row + ny, cx);
            }
        }
    }
    a
}

/// Solves `Δu + k²u = 0` with `u(0,·) = u0`, `u(1,·) = g`, `u(·,0) = u(·,1) = 0`.
///
/// `u0` and `g` must vanish at both ends (within 1e-10); the y-boundary rows of
/// the result are exactly zero.
pub fn solve_dirichlet(u0: &[f64], g: &[f64], k: f64, grid: GridSpec) -> Result<GridFunction2D> {
    check_wavenumber(k)?;
    grid.check_slice("u0", u0)?;
    grid.check_slice("g", g)?;
    check_vanishing_ends(u0)?;
    check_vanishing_ends(g)?;
    check_resonance(k, grid, LeftBoundary::Dirichlet)?;

    let (m_int, ny) = (grid.m() - 1, grid.n() - 1);
    let cx = 1.0 / (grid.dx() * grid.dx());
    let lu = assemble(k, grid, 1, m_int).factor()?;

    let mut rhs = vec![0.0; m_int * ny];
    for j in 0..ny {
        rhs[j] -= cx * u0[j + 1];
        rhs[(m_int - 1) * ny + j] -= cx * g[j + 1];
    }
    lu.solve_in_place(&mut rhs);

    let mut u = GridFunction2D::zeros(grid);
    for n in 1..grid.n() {
        u.set(0, n, u0[n]);
        u.set(grid.m(), n, g[n]);
    }
    for m in 1..grid.m() {
        let col = &rhs[(m - 1) * ny..m * ny];
        u.slice_mut(m)[1..grid.n()].copy_from_slice(col);
    }
    Ok(u)
}

/// Solves `ΔU + k²U = 0` with `U_x(0,·) = u1`, `U(1,·) = 0`, `U(·,0) = U(·,1) = 0`.
///
/// The endpoint values of `u1` are not used.
pub fn solve_u(u1: &[f64], k: f64, grid: GridSpec) -> Result<GridFunction2D> {
    check_wavenumber(k)?;
    grid.check_slice("u1", u1)?;
    check_resonance(k, grid, LeftBoundary::Neumann)?;

    let (cols, ny) = (grid.m(), grid.n() - 1);
    let cx = 1.0 / (grid.dx() * grid.dx());
    let mut a = assemble(k, grid, 0, cols - 1);
    // ghost node U_{-1} = U_1 − 2Δx u1 doubles the coupling to column 1
    for j in 0..ny {
        a.set(j, j + ny, 2.0 * cx);
    }
    let lu = a.factor()?;

    let mut rhs = vec![0.0; cols * ny];
    for j in 0..ny {
        rhs[j] = 2.0 * u1[j + 1] / grid.dx();
    }
    lu.solve_in_place(&mut rhs);

    let mut u = GridFunction2D::zeros(grid);
    for m in 0..cols {
        u.slice_mut(m)[1..grid.n()].copy_from_slice(&rhs[m * ny..(m + 1) * ny]);
    }
    Ok(u)
}

/// Neumann datum at `x = 0` from a reference solution, by the one-sided
/// difference `u1(y_n) = (u(x_1, y_n) − u0(y_n)) / Δx`.
pub fn generate_neumann_data(u_true: &GridFunction2D, u0: &[f64]) -> Result<Vec<f64>> {
    let grid = u_true.grid();
    grid.check_slice("u0", u0)?;
    let dx = grid.dx();
    Ok(u_true
        .slice(1)
        .iter()
        .zip(u0)
        .map(|(u1n, u0n)| (u1n - u0n) / dx)
        .collect())
}

/// The y-slice `u(x_m, ·)`.
pub fn extract_trace(u: &GridFunction2D, m: usize) -> Result<Vec<f64>> {
    let max = u.grid().m();
    if m > max {
        return Err(Error::IndexOutOfRange { index: m, max });
    }
    Ok(u.slice(m).to_vec())
}

/// Largest 5-point residual `|Δ_h u + k²u|` over the interior nodes.
pub fn interior_residual(u: &GridFunction2D, k: f64) -> f64 {
    let grid = u.grid();
    let (cx, cy) = (1.0 / (grid.dx() * grid.dx()), 1.0 / (grid.dy() * grid.dy()));
    let mut worst = 0.0f64;
    for m in 1..grid.m() {
        let (left, mid, right) = (u.slice(m - 1), u.slice(m), u.slice(m + 1));
        for n in 1..grid.n() {
            let r = cx * (right[n] - 2.0 * mid[n] + left[n])
                + cy * (mid[n + 1] - 2.0 * mid[n] + mid[n - 1])
                + k * k * mid[n];
            worst = worst.max(r.abs());
        }
    }
    worst
}

/// Largest residual of the ghost-node-eliminated stencil at `m = 0`.
pub fn neumann_residual(u: &GridFunction2D, u1: &[f64], k: f64) -> f64 {
    let grid = u.grid();
    let (dx, dy) = (grid.dx(), grid.dy());
    let (mid, right) = (u.slice(0), u.slice(1));
    (1..grid.n())
        .map(|n| {
            let r = (2.0 * right[n] - 2.0 * mid[n]) / (dx * dx) - 2.0 * u1[n] / dx
                + (mid[n + 1] - 2.0 * mid[n] + mid[n - 1]) / (dy * dy)
                + k * k * mid[n];
            r.abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sin_slice(grid: GridSpec, scale: f64) -> Vec<f64> {
        let mut s = grid.sample_slice(|y| scale * libm::sin(PI * y));
        let last = s.len() - 1;
        s[0] = 0.0;
        s[last] = 0.0;
        s
    }

    #[test]
    fn zero_data_gives_zero_solution() {
        let grid = GridSpec::new(20, 10).unwrap();
        let z = vec![0.0; 11];
        for &k in &[1.0, 5.0, 50.0] {
            let u = solve_dirichlet(&z, &z, k, grid).unwrap();
            assert_eq!(u.max_abs(), 0.0);
            let v = solve_u(&z, k, grid).unwrap();
            assert_eq!(v.max_abs(), 0.0);
        }
    }

    #[test]
    fn boundary_columns_carry_the_data() {
        let grid = GridSpec::new(16, 8).unwrap();
        let u0 = sin_slice(grid, 1.0);
        let g = sin_slice(grid, -0.5);
        let u = solve_dirichlet(&u0, &g, 5.0, grid).unwrap();
        assert_eq!(extract_trace(&u, 0).unwrap(), u0);
        assert_eq!(extract_trace(&u, 16).unwrap(), g);
        for m in 0..=16 {
            assert_eq!(u.get(m, 0), 0.0);
            assert_eq!(u.get(m, 8), 0.0);
        }
    }

    #[test]
    fn extract_trace_bounds() {
        let u = GridFunction2D::zeros(GridSpec::new(4, 4).unwrap());
        assert_eq!(extract_trace(&u, 2).unwrap(), vec![0.0; 5]);
        assert!(matches!(
            extract_trace(&u, 5),
            Err(Error::IndexOutOfRange { index: 5, max: 4 })
        ));
    }

    #[test]
    fn rejects_corner_data() {
        let grid = GridSpec::new(8, 8).unwrap();
        let mut u0 = vec![0.0; 9];
        u0[0] = 0.3;
        assert!(matches!(
            solve_dirichlet(&u0, &[0.0; 9], 5.0, grid),
            Err(Error::NonVanishingEndpoint { .. })
        ));
    }

    #[test]
    fn discrete_resonance_is_reported() {
        // k² equal to the lowest discrete Dirichlet eigenvalue of a 4x4 grid
        let grid = GridSpec::new(4, 4).unwrap();
        let s = libm::sin(PI / 8.0);
        let k = libm::sqrt(2.0 * 4.0 * 16.0 * s * s);
        let z = vec![0.0; 5];
        match solve_dirichlet(&z, &z, k, grid) {
            Err(Error::NearSingular {
                eigenvalue,
                condition,
            }) => {
                assert!(eigenvalue.abs() < 1e-9);
                assert!(condition > CONDITION_LIMIT);
            }
            other => panic!("expected resonance, got {other:?}"),
        }
    }

    #[test]
    fn spectrum_matches_banded_operator_for_neumann() {
        // smallest |ev| must make the assembled Neumann matrix singular when shifted away
        let grid = GridSpec::new(6, 5).unwrap();
        let est = spectrum(0.0 + 1e-9, grid, LeftBoundary::Neumann);
        // shift k² so the smallest eigenvalue hits zero
        let k = libm::sqrt(-(est.smallest - 1e-18));
        let est2 = spectrum(k, grid, LeftBoundary::Neumann);
        assert!(est2.smallest.abs() < 1e-8);
        assert!(solve_u(&[0.0; 6], k, grid).is_err());
    }

    #[test]
    fn separable_dirichlet_solution_is_second_order() {
        let k: f64 = 5.0;
        let a = libm::sqrt(k * k - PI * PI);
        let exact = |x: f64, y: f64| libm::cos(a * x) * libm::sin(PI * y);
        let mut errors = Vec::new();
        for &(m, n) in &[(20, 20), (40, 40), (80, 80)] {
            let grid = GridSpec::new(m, n).unwrap();
            let u0 = sin_slice(grid, 1.0);
            let g = sin_slice(grid, libm::cos(a));
            let u = solve_dirichlet(&u0, &g, k, grid).unwrap();
            let truth = GridFunction2D::from_fn(grid, exact);
            errors.push(u.difference(&truth).unwrap().max_abs());
            assert!(interior_residual(&u, k) <= 1e-8 * u.max_abs());
        }
        for w in errors.windows(2) {
            let ratio = w[0] / w[1];
            assert!(
                (3.5..=4.5).contains(&ratio),
                "ratio {ratio}, errors {errors:?}"
            );
        }
    }

    #[test]
    fn manufactured_neumann_solution() {
        let k: f64 = 5.0;
        let a = libm::sqrt(k * k - PI * PI);
        let exact =
            |x: f64, y: f64| libm::sin(a * (1.0 - x)) * libm::sin(PI * y) / (a * libm::cos(a));
        let mut errors = Vec::new();
        for &(m, n) in &[(20, 20), (40, 40), (80, 80)] {
            let grid = GridSpec::new(m, n).unwrap();
            let u1 = sin_slice(grid, -1.0);
            let u = solve_u(&u1, k, grid).unwrap();
            assert!(interior_residual(&u, k) <= 1e-8 * u.max_abs());
            assert!(neumann_residual(&u, &u1, k) <= 1e-8 * u.max_abs());
            let truth = GridFunction2D::from_fn(grid, exact);
            errors.push(u.difference(&truth).unwrap().max_abs());
            assert_eq!(u.get(m, n / 2), 0.0);
        }
        for w in errors.windows(2) {
            let ratio = w[0] / w[1];
            assert!(
                (3.5..=4.5).contains(&ratio),
                "ratio {ratio}, errors {errors:?}"
            );
        }
    }

    #[test]
    fn neumann_data_from_zero_is_zero() {
        let grid = GridSpec::new(8, 8).unwrap();
        let u = GridFunction2D::zeros(grid);
        assert_eq!(generate_neumann_data(&u, &[0.0; 9]).unwrap(), vec![0.0; 9]);
    }

    #[test]
    fn neumann_data_of_even_solution_is_first_order_small() {
        // cos(ax) sin(πy) has u_x(0,·) = 0; the one-sided difference is O(Δx)
        let k: f64 = 5.0;
        let a = libm::sqrt(k * k - PI * PI);
        for &m in &[100usize, 200, 400] {
            let grid = GridSpec::new(m, 40).unwrap();
            let truth = GridFunction2D::from_fn(grid, |x, y| libm::cos(a * x) * libm::sin(PI * y));
            let u1 = generate_neumann_data(&truth, truth.slice(0)).unwrap();
            let dx = grid.dx();
            for (n, v) in u1.iter().enumerate() {
                let expected = (libm::cos(a * dx) - 1.0) / dx * libm::sin(PI * grid.y(n));
                assert!((v - expected).abs() < 1e-12);
                assert!(v.abs() <= a * a * dx);
            }
        }
    }
}
