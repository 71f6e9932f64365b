use fpvac::acceptance::residue_series_rate;
use fpvac::detector::{
    default_epsilon_ladder, extrapolated_rate, integrand_identity_check, regulated_kernel, thermal_rate,
    windowed_response, wightman, ResponseConfig, TrajectoryKind, WindowConfig,
};
use fpvac::Error;
use proptest::prelude::*;

proptest! {
    #[test]
    fn scaled_inertial_matches_accelerated(
        s in -8.0f64..8.0,
        gap in prop_oneof![-6.0f64..-1e-3, 1e-3f64..6.0],
        a in 0.25f64..4.0,
    ) {
        let worst = integrand_identity_check(a, &[(s / a, (s + gap) / a)]).unwrap();
        prop_assert!(worst < 1e-10, "{worst:e}");
    }

    #[test]
    fn regulated_kernels_agree(s in -4.0f64..4.0, gap in -4.0f64..4.0, eps in 1e-4f64..1e-1) {
        let i = regulated_kernel(TrajectoryKind::InertialScaled, s, s + gap, 1.0, eps);
        let acc = regulated_kernel(TrajectoryKind::Accelerated, s, s + gap, 1.0, eps);
        prop_assert!((i - acc).norm() <= 1e-10 * acc.norm());
    }
}

#[test]
fn coincident_points_are_singular_without_regulator() {
    for kind in TrajectoryKind::ALL {
        assert!(matches!(wightman(kind, 0.3, 0.3, 1.0, 0.0), Err(Error::Singular)));
        assert!(wightman(kind, 0.3, 0.3, 1.0, 1e-3).is_ok());
    }
}

#[test]
fn rate_limit_matches_independent_series() {
    for a in [0.5, 1.0, 2.0] {
        for e in [-2.0, -0.5, 0.5, 1.0, 2.0] {
            let base = ResponseConfig::new(e * a, a, 1e-3 / a, 200.0 / a);
            let limit = extrapolated_rate(&base, &default_epsilon_ladder(a)).unwrap();
            let series = residue_series_rate(e * a, a);
            assert!((limit.value - series).abs() < 1e-4 * series, "a={a} E/a={e}");
            assert!((series - thermal_rate(e * a, a)).abs() < 1e-10 * series);
            assert!(limit.value > 0.0);
        }
    }
}

#[test]
fn epsilon_corrections_shrink() {
    let base = ResponseConfig::new(1.0, 1.0, 1e-3, 200.0);
    let limit = extrapolated_rate(&base, &default_epsilon_ladder(1.0)).unwrap();
    let levels: Vec<f64> = limit.levels.iter().map(|r| r.value).collect();
    let gaps: Vec<f64> = levels.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    assert!(gaps[1] < gaps[0]);
    for pair in limit.corrections.windows(2) {
        assert!(pair[1].abs() <= pair[0].abs(), "{:?}", limit.corrections);
    }
}

#[test]
fn rate_obeys_detailed_balance() {
    let a = 1.0;
    for e in [0.25, 1.0, 2.0] {
        let up = extrapolated_rate(&ResponseConfig::new(e, a, 1e-3, 200.0), &default_epsilon_ladder(a)).unwrap();
        let down = extrapolated_rate(&ResponseConfig::new(-e, a, 1e-3, 200.0), &default_epsilon_ladder(a)).unwrap();
        let ratio = down.value / up.value;
        assert!((ratio / (2.0 * std::f64::consts::PI * e / a).exp() - 1.0).abs() < 1e-4, "E={e}");
    }
}

#[test]
fn rate_sweep_decreases_with_gap() {
    let a = 1.0;
    let rates: Vec<f64> = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0]
        .iter()
        .map(|&e| extrapolated_rate(&ResponseConfig::new(e, a, 1e-3, 200.0), &default_epsilon_ladder(a)).unwrap().value)
        .collect();
    assert!(rates.windows(2).all(|w| w[1] < w[0]), "{rates:?}");
}

#[test]
fn windowed_responses_coincide() {
    let cfg = WindowConfig::new(1.0, 1.0, 1e-3, -5.0, 5.0);
    let i = windowed_response(TrajectoryKind::InertialScaled, &cfg).unwrap();
    let acc = windowed_response(TrajectoryKind::Accelerated, &cfg).unwrap();
    assert!((i.value - acc.value).abs() <= 1e-8 * acc.value.abs());
    assert!(i.value > 0.0);
    assert!(windowed_response(TrajectoryKind::Accelerated, &WindowConfig::new(1.0, 1.0, 1e-3, 2.0, 1.0)).is_err());
    let empty = windowed_response(TrajectoryKind::Accelerated, &WindowConfig::new(1.0, 1.0, 1e-3, 1.0, 1.0)).unwrap();
    assert_eq!(empty.value, 0.0);
}
