use helmstab_core::spectral::{
    classify_mode, FrequencyClass, FrequencyPartition, SineBasis, SpectralCoeffs,
    StabilizedOperators,
};
use proptest::prelude::*;

/// Independent reference: plain `sin` without argument reduction.
fn phi_ref(j: usize, y: f64) -> f64 {
    std::f64::consts::SQRT_2 * (j as f64 * std::f64::consts::PI * y).sin()
}

fn slice_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n - 1).prop_map(|mut v| {
        v.insert(0, 0.0);
        v.push(0.0);
        v
    })
}

#[test]
fn basis_table_matches_direct_evaluation() {
    let b = SineBasis::new(80).unwrap();
    for j in [1, 2, 17, 40, 79] {
        for i in 0..=80 {
            let y = i as f64 / 80.0;
            let r = if i == 0 || i == 80 {
                0.0
            } else {
                phi_ref(j, y)
            };
            assert!((b.phi(j, i) - r).abs() < 1e-13, "j={j} i={i}");
        }
    }
}

#[test]
fn partition_examples() {
    let p = FrequencyPartition::new(50.0, 50.0, 79).unwrap();
    let a3: Vec<usize> = p.a3_modes().collect();
    let band: Vec<usize> = p.band_modes().collect();
    let b: Vec<usize> = p.truncated_modes().collect();
    assert_eq!(a3, (1..=15).collect::<Vec<_>>());
    assert_eq!(band, (16..=22).collect::<Vec<_>>());
    assert_eq!(b, (23..=79).collect::<Vec<_>>());

    // thresholds by brute force: μ_j vs k² and 2k²
    for j in 1..=79 {
        let mu = (j as f64 * std::f64::consts::PI).powi(2);
        let rec = p.mode(j);
        assert_eq!(rec.class == FrequencyClass::A3, mu < 2500.0);
        assert_eq!(rec.in_b, mu > 5000.0);
    }
}

#[test]
fn a2_mode_at_integer_multiple() {
    let k = 3.0 * std::f64::consts::PI;
    let m = classify_mode(3, k);
    assert_eq!(m.class, FrequencyClass::A2);
    assert_eq!(m.lambda, 0.0);
    let p = FrequencyPartition::new(k, k, 10).unwrap();
    assert!(p.mode(3).is_band());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn dst_round_trip_and_parseval(f in slice_strategy(80)) {
        let b = SineBasis::new(80).unwrap();
        let c = b.forward(&f).unwrap();
        let back = b.inverse(&c).unwrap();
        for (x, y) in back.iter().zip(&f) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()));
        }
        let e = c.energy();
        let r = b.riemann_norm_sq(&f);
        prop_assert!((e - r).abs() <= 1e-12 * r.max(1e-300));
    }

    #[test]
    fn coefficient_round_trip(c in prop::collection::vec(-1.0f64..1.0, 39)) {
        let b = SineBasis::new(40).unwrap();
        let coeffs = SpectralCoeffs::from_values(c.clone());
        let back = b.forward(&b.inverse(&coeffs).unwrap()).unwrap();
        for (x, y) in back.values().iter().zip(&c) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn operator_identity(f in slice_strategy(80), k in 1.0f64..60.0, frac in 0.05f64..1.0) {
        let ops = StabilizedOperators::for_grid(80, k, frac * k).unwrap();
        let p = ops.apply_p(&f).unwrap();
        let q = ops.apply_q(&f).unwrap();
        let d = ops.second_derivative(&f).unwrap();
        let lhs: Vec<f64> = p.iter().zip(&d).map(|(p, d)| p - 2.0 * d).collect();
        let scale = q.iter().chain(&p).fold(0.0f64, |a, v| a.max(v.abs()));
        for (l, r) in lhs.iter().zip(&q) {
            prop_assert!((l - r).abs() <= 1e-10 * scale.max(1.0));
        }
        // P = P₁ − 2k² f and Q = Q₁ + Q₂
        let p1 = ops.apply_p1(&f).unwrap();
        let (q1, q2) = (ops.apply_q1(&f).unwrap(), ops.apply_q2(&f).unwrap());
        for i in 0..f.len() {
            prop_assert!((p[i] - (p1[i] - 2.0 * k * k * f[i])).abs() <= 1e-10 * scale.max(1.0));
            prop_assert!((q[i] - (q1[i] + q2[i])).abs() <= 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn operators_are_linear(
        f in slice_strategy(40),
        g in slice_strategy(40),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let ops = StabilizedOperators::for_grid(40, 5.0, 5.0).unwrap();
        let comb: Vec<f64> = f.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
        type Op = fn(&StabilizedOperators, &[f64]) -> helmstab_core::Result<Vec<f64>>;
        let ops_list: [Op; 4] = [
            StabilizedOperators::apply_q,
            StabilizedOperators::apply_p,
            StabilizedOperators::apply_p1,
            StabilizedOperators::second_derivative,
        ];
        for op in ops_list {
            let lhs = op(&ops, &comb).unwrap();
            let (of, og) = (op(&ops, &f).unwrap(), op(&ops, &g).unwrap());
            let scale = lhs.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for i in 0..lhs.len() {
                prop_assert!((lhs[i] - (a * of[i] + b * og[i])).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn partition_invariants(k in 0.5f64..80.0, frac in 0.01f64..1.0) {
        let eta = frac * k;
        let p = FrequencyPartition::new(k, eta, 120).unwrap();
        prop_assert!(p.log_gamma() >= k - 1e-12);
        let b_min = p.truncated_modes().map(|j| p.mode(j).lambda).fold(f64::INFINITY, f64::min);
        for rec in p.modes() {
            if rec.in_b {
                prop_assert_eq!(rec.class, FrequencyClass::A1);
                prop_assert!(rec.lambda > p.log_gamma() * p.log_gamma());
            }
            if rec.class == FrequencyClass::A3 && b_min.is_finite() {
                prop_assert!(rec.lambda.abs() <= b_min);
            }
        }
    }

    #[test]
    fn truncated_mode_norms(j in 3usize..80) {
        let ops = StabilizedOperators::for_grid(80, 5.0, 5.0).unwrap();
        let rec = *ops.partition().mode(j);
        prop_assume!(rec.in_b);
        let phi = ops.basis().mode_slice(j);
        let q1 = ops.apply_q1(&phi).unwrap();
        let norm = ops.basis().riemann_norm_sq(&q1).sqrt();
        prop_assert!((norm - 2.0 * rec.lambda).abs() <= 1e-10 * norm);
        let s = rec.lambda.sqrt();
        prop_assert!(2.0 * rec.lambda * (-s).exp() <= 2.0 * rec.lambda / ops.partition().gamma());
    }
}
