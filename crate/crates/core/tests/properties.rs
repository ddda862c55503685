use fkpp_core::exact::{
    az_profile, az_speed, hj_residual_analytic, momentum_roots, traveling_ode_residual,
};
use fkpp_core::front::{decay_rate, front_position, front_speed};
use fkpp_core::{
    make_grid, ActionFunctionalSpec, ActionVariant, Branch, DimensionlessMap, FrontTrace,
    PhysicalParams, ScalarField, ScalingParam,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = PhysicalParams> {
    (0.05f64..20.0, 0.05f64..20.0).prop_map(|(d, u)| PhysicalParams::new(d, u).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn grid_spacing_is_uniform(x_min in -1e3f64..1e3, len in 1e-3f64..1e3, n in 3usize..5000) {
        let grid = make_grid(x_min, x_min + len, n).unwrap();
        let dx = grid.dx();
        let x_abs = x_min.abs().max((x_min + len).abs());
        let tol = if x_abs <= 1e3 * dx { 1e-12 * dx } else { 4.0 * f64::EPSILON * x_abs };
        for i in 0..n - 1 {
            prop_assert!((grid.x(i + 1) - grid.x(i) - dx).abs() <= tol);
        }
        prop_assert!((grid.x(n - 1) - (x_min + len)).abs() <= 1e-12 * (x_min.abs() + len));
    }

    #[test]
    fn dimensionless_round_trip(p in params(), eps in 0.01f64..=1.0, x in -1e4f64..1e4, t in 0.0f64..1e4) {
        let map = DimensionlessMap::new(ScalingParam::new(eps).unwrap(), p).unwrap();
        let (xt, tt) = map.to_dimensionless(x, t);
        let (x2, t2) = map.from_dimensionless(xt, tt);
        prop_assert!((x2 - x).abs() <= 1e-14 * x.abs().max(1e-300) * 2.0);
        prop_assert!((t2 - t).abs() <= 1e-14 * t.abs().max(1e-300) * 2.0);
    }

    #[test]
    fn momentum_roots_satisfy_vieta(p in params(), k in 1.0f64..5.0) {
        let (d, u) = (p.d(), p.u());
        let v = k * 2.0 * (d * u).sqrt();
        let r = momentum_roots(v, p).unwrap();
        prop_assert!(r.p_minus <= r.p_plus);
        prop_assert!(rel(r.p_minus + r.p_plus, v / d) <= 1e-12);
        prop_assert!(rel(r.p_minus * r.p_plus, u / d) <= 1e-12);
    }

    #[test]
    fn kink_is_decreasing_and_bounded(a in -30.0f64..30.0, gap in 1e-3f64..10.0) {
        let b = (a + gap).min(30.0);
        prop_assume!(b > a);
        prop_assert!(az_profile(a) > az_profile(b));
        prop_assert!(az_profile(a) > 0.0 && az_profile(a) < 1.0);
        prop_assert!(traveling_ode_residual(az_speed(), a).abs() <= 1e-12);
    }

    #[test]
    fn closed_form_actions_solve_hamilton_jacobi(
        p in params(),
        x in -10.0f64..10.0,
        t in 0.1f64..10.0,
        beta_k in 1.0001f64..=10.0,
        v_k in 1.0f64..=2.5,
    ) {
        let v = v_k * 2.0 * (p.d() * p.u()).sqrt();
        let variants = [
            ActionVariant::G1,
            ActionVariant::G2 { beta: beta_k * p.u() },
            ActionVariant::G3 { v, branch: Branch::Plus },
            ActionVariant::G3 { v, branch: Branch::Minus },
        ];
        for variant in variants {
            let spec = ActionFunctionalSpec::new(variant, p).unwrap();
            let (gx, gt) = spec.partials(x, t).unwrap();
            let scale = 1.0 + gt.abs() + p.d() * gx * gx + p.u();
            let r = hj_residual_analytic(&spec, x, t).unwrap();
            prop_assert!(r.abs() <= 1e-12 * scale, "{:?}: {}", variant, r);

            let h = 1e-5;
            let f = |x: f64, t: f64| spec.value(x, t).unwrap();
            let gx_fd = (f(x + h, t) - f(x - h, t)) / (2.0 * h);
            let gt_fd = (f(x, t + h) - f(x, t - h)) / (2.0 * h);
            let size = 1.0 + f(x, t).abs();
            prop_assert!((gx_fd - gx).abs() <= 1e-7 * size, "{:?}: {} vs {}", variant, gx_fd, gx);
            prop_assert!((gt_fd - gt).abs() <= 1e-7 * size, "{:?}: {} vs {}", variant, gt_fd, gt);
        }
    }

    #[test]
    fn front_position_translates_with_the_field(shift in 0usize..200, z0 in -5.0f64..5.0) {
        let grid = make_grid(-40.0, 60.0, 1001).unwrap();
        let base = ScalarField::from_fn(grid, 0.0, |x| az_profile(x - z0));
        let mut values = vec![1.0; shift];
        values.extend_from_slice(&base.values[..base.values.len() - shift]);
        let moved = ScalarField::new(grid, values, 0.0).unwrap();
        let expected = front_position(&base, 0.5).unwrap() + shift as f64 * grid.dx();
        prop_assert!((front_position(&moved, 0.5).unwrap() - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn front_position_is_nonincreasing_in_level(lo in 0.01f64..0.98, gap in 1e-4f64..0.5, width in 0.1f64..5.0) {
        let hi = (lo + gap).min(0.99);
        prop_assume!(hi > lo);
        let grid = make_grid(-20.0, 20.0, 801).unwrap();
        let field = ScalarField::from_fn(grid, 0.0, |x| 0.5 * (1.0 - (x / width).tanh()));
        prop_assert!(front_position(&field, hi).unwrap() <= front_position(&field, lo).unwrap());
    }

    #[test]
    fn decay_rate_ignores_amplitude(c in 1e-3f64..1.0, lambda in 0.2f64..3.0) {
        let grid = make_grid(0.0, 40.0, 801).unwrap();
        let field = ScalarField::from_fn(grid, 0.0, |x| (-lambda * x).exp());
        let mut scaled = field.clone();
        scaled.values.iter_mut().for_each(|v| *v *= c);
        let a = decay_rate(&field, 1e-300, 1.0).unwrap();
        let b = decay_rate(&scaled, 1e-300, 1.0).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }
}

#[test]
fn speed_estimator_on_the_exact_kink() {
    // exact traveling solution sampled like a solver run with dx = 0.05 and output every 0.5
    let grid = make_grid(-20.0, 120.0, 2801).unwrap();
    let samples = (0..=80)
        .map(|k| {
            let t = 0.5 * k as f64;
            let f = ScalarField::from_fn(grid, t, |x| az_profile(x - az_speed() * t));
            (t, front_position(&f, 0.5).unwrap())
        })
        .collect();
    let trace = FrontTrace::new(0.5, samples).unwrap();
    let (v, _) = front_speed(&trace, 0.5).unwrap();
    assert!((v - az_speed()).abs() <= 0.01 * az_speed(), "{v}");
}
