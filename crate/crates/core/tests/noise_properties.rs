use helmstab_core::marching::{CauchySlice, StabilizationParams, StabilizedSolver};
use helmstab_core::noise::{
    add_noise, discrete_h1_norm, noise_direction, relative_error_percent, NoiseModel,
};
use helmstab_core::problems::Example;
use helmstab_core::{GridFunction2D, GridSpec};
use proptest::prelude::*;

fn grid_fn(values: Vec<f64>) -> GridFunction2D {
    GridFunction2D::from_values(GridSpec::new(3, 3).unwrap(), values).unwrap()
}

fn grid_values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 16)
}

#[test]
fn stream_is_pinned() {
    // guards the documented seed -> sample mapping against dependency drift
    let a = noise_direction(4, 0);
    let b = noise_direction(4, 0);
    assert_eq!(a, b);
    assert_eq!((a[0], a[4]), (0.0, 0.0));
    let bits: Vec<u64> = a.iter().map(|v| v.to_bits()).collect();
    let again: Vec<u64> = noise_direction(4, 0).iter().map(|v| v.to_bits()).collect();
    assert_eq!(bits, again);
    assert_ne!(noise_direction(4, 1), a);
}

#[test]
fn noise_h1_size_at_default_mesh() {
    // measured, not asserted: the gradient of white noise scales like εN
    let dy = 1.0 / 80.0;
    let norms: Vec<f64> = (0..100)
        .map(|seed| {
            let m = NoiseModel::new(0.1, seed, 0.99).unwrap();
            discrete_h1_norm(&m.noise_vector(80), dy)
        })
        .collect();
    let mean = norms.iter().sum::<f64>() / norms.len() as f64;
    println!("mean H1 norm of eps=0.1 noise at N=80 over 100 seeds: {mean:.3}");
    assert!(mean.is_finite());
}

#[test]
fn direct_solver_is_affine_in_the_datum() {
    let grid = GridSpec::new(400, 80).unwrap();
    let solver =
        StabilizedSolver::new(StabilizationParams::new(5.0, 5.0, 1, grid).unwrap()).unwrap();
    let (u0, _) = Example::One.boundary_slices(grid);
    let base = solver
        .solve_direct(&CauchySlice::new(u0.clone()).unwrap())
        .unwrap();
    let dir = noise_direction(80, 11);
    let ratios: Vec<f64> = [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&eps| {
            let data: Vec<f64> = u0.iter().zip(&dir).map(|(a, r)| a + eps * r).collect();
            let u = solver
                .solve_direct(&CauchySlice::new(data).unwrap())
                .unwrap();
            u.difference(&base).unwrap().l2_sum_norm() / eps
        })
        .collect();
    for r in &ratios[1..] {
        assert!((r - ratios[0]).abs() <= 1e-8 * ratios[0], "{ratios:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn noise_is_bounded_and_deterministic(
        eps in 0.0f64..0.999,
        seed in any::<u64>(),
        base in prop::collection::vec(-1.0f64..1.0, 81),
    ) {
        let mut u0 = base;
        u0[0] = 0.0;
        u0[80] = 0.0;
        let m = NoiseModel::new(eps, seed, 0.5).unwrap();
        let a = add_noise(&u0, &m);
        prop_assert_eq!(&a, &add_noise(&u0, &m));
        prop_assert_eq!((a[0], a[80]), (0.0, 0.0));
        let dy = 1.0 / 80.0;
        let mut l2 = 0.0;
        for (x, y) in a.iter().zip(&u0) {
            prop_assert!((x - y).abs() <= eps);
            l2 += dy * (x - y) * (x - y);
        }
        prop_assert!(l2.sqrt() <= eps);
    }

    #[test]
    fn relative_error_is_a_scaled_distance(
        a in grid_values(),
        b in grid_values(),
        s in -5.0f64..5.0,
    ) {
        let (ga, gb) = (grid_fn(a.clone()), grid_fn(b.clone()));
        prop_assume!(gb.l2_sum_norm() > 1e-6);
        let e = relative_error_percent(&ga, &gb).unwrap();
        prop_assert!(e >= 0.0);
        prop_assert_eq!(relative_error_percent(&gb, &gb).unwrap(), 0.0);
        // homogeneous in the difference
        let scaled: Vec<f64> = a.iter().zip(&b).map(|(x, y)| y + s * (x - y)).collect();
        let es = relative_error_percent(&grid_fn(scaled), &gb).unwrap();
        prop_assert!((es - s.abs() * e).abs() <= 1e-9 * (1.0 + e * s.abs()));
    }
}
