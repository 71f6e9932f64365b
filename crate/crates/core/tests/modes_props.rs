use std::f64::consts::PI;

use fpvac::modes::{mode_big_g, mode_g, mode_g_of_v, wave_equation_residual, GVariant, ModeSpec};
use fpvac::spacetime::Quadrant;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn composed_modes_agree_across_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let a = 10f64.powf(rng.random_range(-1.0..1.0));
        let omega = a * rng.random_range(0.05..4.0);
        let v = 10f64.powf(rng.random_range(-8.0..8.0));
        let f = ModeSpec::new(Quadrant::F, omega, a).unwrap();
        let r = ModeSpec::new(Quadrant::R, omega, a).unwrap();
        let p = ModeSpec::new(Quadrant::P, omega, a).unwrap();
        let l = ModeSpec::new(Quadrant::L, omega, a).unwrap();
        assert!((mode_g_of_v(&f, v) - mode_g_of_v(&r, v)).norm() < 1e-14);
        assert!((mode_g_of_v(&p, -v) - mode_g_of_v(&l, -v)).norm() < 1e-14);
        assert_eq!(mode_g_of_v(&f, -v).norm(), 0.0);
        assert_eq!(mode_g_of_v(&p, v).norm(), 0.0);
    }
}

#[test]
fn wave_equation_residual_is_small() {
    for q in Quadrant::ALL {
        let spec = ModeSpec::new(q, 0.8, 1.3).unwrap();
        for h in [1e-2, 1e-3] {
            let r = wave_equation_residual(&spec, 0.2, -0.4, h).unwrap();
            assert!(r < 1e-6, "{q} h={h}: {r}");
        }
    }
}

#[test]
fn g_branch_weights() {
    let a = 1.0;
    let omega = a * 2f64.ln() / PI;
    let p = ModeSpec::new(Quadrant::P, omega, a).unwrap();
    let f = ModeSpec::new(Quadrant::F, omega, a).unwrap();
    let g = mode_big_g(omega, a, -1.0, GVariant::G).unwrap();
    assert!((g - 0.5 * mode_g_of_v(&p, -1.0).conj()).norm() < 1e-15);
    assert_eq!(mode_big_g(omega, a, 1.0, GVariant::G).unwrap(), mode_g_of_v(&f, 1.0));
    let gbar = mode_big_g(omega, a, 1.0, GVariant::GBar).unwrap();
    assert!((gbar - 0.5 * mode_g_of_v(&f, 1.0).conj()).norm() < 1e-15);
}

proptest! {
    #[test]
    fn modulus_is_constant(omega in 0.01f64..20.0, x in -1e3f64..1e3, qi in 0usize..4) {
        let spec = ModeSpec::new(Quadrant::ALL[qi], omega, 1.0).unwrap();
        let expect = (4.0 * PI * omega).sqrt().recip();
        prop_assert!((mode_g(&spec, x).norm() - expect).abs() < 1e-15 * expect.max(1.0));
    }
}
