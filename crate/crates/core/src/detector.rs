//! Detector response along the inertial-scaled and accelerated trajectories.
//!
//! Both trajectories are written in null coordinates V = t + z, U = t − z:
//!
//! ```text
//! inertial-scaled  V = U = a⁻¹ e^{as}
//! accelerated      V = a⁻¹ e^{as},  U = −a⁻¹ e^{−as}
//! ```
//!
//! The regularized Wightman function factorizes as
//! (Δt − iε)² − Δz² = (ΔU − iε)(ΔV − iε), and each difference of exponentials
//! is evaluated through expm1, which keeps full relative precision for nearly
//! coincident points.
//!
//! At ε = 0 the inertial function times e^{a(s+s′)} and the accelerated
//! function both reduce to
//!
//! ```text
//! W(Δ) = −a² / (16π² sinh²(aΔ/2)),   Δ = s − s′.
//! ```
//!
//! For regulated double integrals both trajectories are evaluated at the
//! complex parameters s − iε/2 and s′ + iε/2. This turns each of them into
//! W(Δ − iε), so matched windows are compared with one regulator.
//!
//! The stationary rate ∫ e^{−iEΔ} W(Δ − iε) dΔ is analytic in the strip
//! between the poles Δ = iε and Δ = iε − 2πi/a. By default it is integrated
//! along the line Im Δ = −π/a, where the integrand is a smooth, exponentially
//! decaying function. The real-axis route is kept for cross-checks at
//! moderate ε.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadConfig};
use crate::richardson;
use crate::special::cexpm1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryKind {
    /// t = a⁻¹e^{as}, z = 0, parametrized by conformal time.
    InertialScaled,
    /// t = a⁻¹sinh(as), z = a⁻¹cosh(as), parametrized by proper time.
    Accelerated,
}

impl TrajectoryKind {
    pub const ALL: [TrajectoryKind; 2] = [TrajectoryKind::InertialScaled, TrajectoryKind::Accelerated];
}

impl fmt::Display for TrajectoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrajectoryKind::InertialScaled => "inertial",
            TrajectoryKind::Accelerated => "accelerated",
        })
    }
}

impl FromStr for TrajectoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "inertial" | "inertial_scaled" | "inertial-scaled" => Ok(TrajectoryKind::InertialScaled),
            "accelerated" => Ok(TrajectoryKind::Accelerated),
            other => Err(Error::Parse(format!("unknown trajectory `{other}`"))),
        }
    }
}

const INV_FOUR_PI_SQ: f64 = 1.0 / (4.0 * PI * PI);

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::Domain(format!("regulator must be non-negative, got {epsilon}")));
    }
    Ok(())
}

/// Null separations (ΔV, ΔU) between trajectory points at parameters s and s′.
/// Complex parameters are allowed.
fn null_separation(kind: TrajectoryKind, s: Complex64, s_prime: Complex64, a: f64) -> (Complex64, Complex64) {
    let delta = s - s_prime;
    let dv = (s_prime * a).exp() * cexpm1(delta * a) / a;
    let du = match kind {
        TrajectoryKind::InertialScaled => dv,
        TrajectoryKind::Accelerated => -(-s_prime * a).exp() * cexpm1(-delta * a) / a,
    };
    (dv, du)
}

/// The regularized 3+1 Wightman function
/// D⁺ = −(1/4π²)[(Δt − iε)² − Δz²]⁻¹ on the chosen trajectory. For the
/// inertial-scaled trajectory the result carries the factor e^{a(s+s′)}.
pub fn wightman(kind: TrajectoryKind, s: f64, s_prime: f64, a: f64, epsilon: f64) -> Result<Complex64> {
    crate::spacetime::check_scale(a)?;
    check_epsilon(epsilon)?;
    if !(s.is_finite() && s_prime.is_finite()) {
        return Err(Error::Domain("trajectory parameters must be finite".into()));
    }
    if s == s_prime && epsilon == 0.0 {
        return Err(Error::Singular);
    }
    let (dv, du) = null_separation(kind, s.into(), s_prime.into(), a);
    let ie = Complex64::new(0.0, epsilon);
    let mut d = -INV_FOUR_PI_SQ / ((du - ie) * (dv - ie));
    if kind == TrajectoryKind::InertialScaled {
        d *= (a * (s + s_prime)).exp();
    }
    if !(d.re.is_finite() && d.im.is_finite()) {
        return Err(Error::Domain(format!(
            "Wightman function overflows at s = {s}, s' = {s_prime}"
        )));
    }
    Ok(d)
}

/// The trajectory kernel at s − iε/2 and s′ + iε/2, which equals W(s − s′ − iε)
/// on both trajectories.
pub fn regulated_kernel(kind: TrajectoryKind, s: f64, s_prime: f64, a: f64, epsilon: f64) -> Complex64 {
    let sc = Complex64::new(s, -0.5 * epsilon);
    let spc = Complex64::new(s_prime, 0.5 * epsilon);
    let (dv, du) = null_separation(kind, sc, spc, a);
    let d = -INV_FOUR_PI_SQ / (du * dv);
    match kind {
        TrajectoryKind::InertialScaled => d * (a * (s + s_prime)).exp(),
        TrajectoryKind::Accelerated => d,
    }
}

/// −a²/(16π² sinh²(aζ/2)) for complex ζ, written as −a²e^{−w}/(4π²(1 − e^{−w})²)
/// with w = ±aζ chosen so that Re w ≥ 0.
pub fn sinh_wightman(zeta: Complex64, a: f64) -> Complex64 {
    let mut w = zeta * a;
    if w.re < 0.0 {
        w = -w;
    }
    let em = cexpm1(-w);
    -a * a * INV_FOUR_PI_SQ * (-w).exp() / (em * em)
}

/// Largest relative deviation between the ε = 0 inertial-scaled (times
/// e^{a(s+s′)}) and accelerated Wightman functions over the samples.
pub fn integrand_identity_check(a: f64, samples: &[(f64, f64)]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &(s, sp) in samples {
        let inertial = wightman(TrajectoryKind::InertialScaled, s, sp, a, 0.0)?;
        let accelerated = wightman(TrajectoryKind::Accelerated, s, sp, a, 0.0)?;
        worst = worst.max((inertial - accelerated).norm() / accelerated.norm());
    }
    Ok(worst)
}

/// (E/2π)/(e^{2πE/a} − 1), continued to a/4π² at E = 0.
pub fn thermal_rate(energy: f64, a: f64) -> f64 {
    if energy == 0.0 {
        return a * INV_FOUR_PI_SQ;
    }
    energy / (2.0 * PI) / (2.0 * PI * energy / a).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateContour {
    /// Integrate along Im Δ = −π/a.
    #[default]
    Shifted,
    /// Integrate along the real Δ axis.
    RealAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseConfig {
    pub energy: f64,
    pub a: f64,
    pub epsilon: f64,
    /// Integration runs over [−delta_range, delta_range].
    pub delta_range: f64,
    #[serde(default)]
    pub contour: RateContour,
    #[serde(default)]
    pub quad: QuadConfig,
}

impl ResponseConfig {
    pub fn new(energy: f64, a: f64, epsilon: f64, delta_range: f64) -> Self {
        ResponseConfig {
            energy,
            a,
            epsilon,
            delta_range,
            contour: RateContour::Shifted,
            quad: rate_quad_config(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        crate::spacetime::check_scale(self.a)?;
        if !self.energy.is_finite() {
            return Err(Error::Config("energy gap must be finite".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.contour == RateContour::Shifted && self.epsilon * self.a >= PI {
            return Err(Error::Config("epsilon must be below π/a for the shifted contour".into()));
        }
        if !(self.delta_range > 0.0 && self.delta_range.is_finite()) {
            return Err(Error::Config(format!(
                "delta_range must be positive and finite, got {}",
                self.delta_range
            )));
        }
        self.quad.validate()
    }
}

pub fn rate_quad_config() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-17,
        rel_tol: 1e-11,
        max_panels: 200_000,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseResult {
    pub value: f64,
    /// Imaginary part of the computed integral, which vanishes analytically.
    pub imaginary: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub energy: f64,
    pub a: f64,
    pub epsilon: f64,
    pub window: (f64, f64),
    pub trajectory: Option<TrajectoryKind>,
}

/// Breakpoints on [0, reach] that refine geometrically toward 0 from `finest`
/// up to `coarse`, then step by `coarse`.
fn graded_breakpoints(finest: f64, coarse: f64, reach: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut x = finest;
    while x < coarse.min(reach) {
        pts.push(x);
        x *= 2.0;
    }
    let mut x = coarse;
    while x < reach {
        pts.push(x);
        x += coarse;
    }
    pts.push(reach);
    pts
}

/// The stationary response ∫ e^{−iEΔ} W(Δ − iε) dΔ over [−range, range].
pub fn response_rate(cfg: &ResponseConfig) -> Result<ResponseResult> {
    cfg.validate()?;
    let (e, a, eps) = (cfg.energy, cfg.a, cfg.epsilon);
    let step = if e == 0.0 { 1.0 / a } else { (1.0 / a).min(PI / e.abs()) };
    // Beyond 80/a the integrand is below e^{−80} of its peak.
    let dense = cfg.delta_range.min(80.0 / a);

    let integral = match cfg.contour {
        RateContour::Shifted => {
            let shift = Complex64::new(0.0, -PI / a - eps);
            let f = |x: f64| {
                let z = shift + x;
                (Complex64::new(0.0, -e) * (z + Complex64::new(0.0, eps))).exp() * sinh_wightman(z, a)
            };
            let half = graded_breakpoints(step, step, dense);
            let mut pts: Vec<f64> = half.iter().rev().map(|x| -x).collect();
            pts.extend_from_slice(&half[1..]);
            if cfg.delta_range > dense {
                pts.insert(0, -cfg.delta_range);
                pts.push(cfg.delta_range);
            }
            quad::integrate_partitioned(f, &pts, &cfg.quad)?
        }
        RateContour::RealAxis => {
            let f = |x: f64| {
                let z = Complex64::new(x, -eps);
                Complex64::from_polar(1.0, -e * x) * sinh_wightman(z, a)
            };
            let mut pts = graded_breakpoints(eps, step, dense);
            if cfg.delta_range > dense {
                pts.push(cfg.delta_range);
            }
            let half = quad::integrate_partitioned(f, &pts, &cfg.quad)?;
            // The integrand is Hermitian in Δ, so the full line gives twice the real part.
            quad::Integral {
                value: Complex64::new(2.0 * half.value.re, 0.0),
                error: 2.0 * half.error,
                evaluations: half.evaluations,
            }
        }
    };

    Ok(ResponseResult {
        value: integral.value.re,
        imaginary: integral.value.im,
        error_estimate: integral.error,
        evaluations: integral.evaluations,
        energy: e,
        a,
        epsilon: eps,
        window: (-cfg.delta_range, cfg.delta_range),
        trajectory: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateLimit {
    pub energy: f64,
    pub a: f64,
    pub value: f64,
    /// Size of the last Richardson correction plus the finest quadrature error.
    pub error_estimate: f64,
    pub corrections: Vec<f64>,
    pub levels: Vec<ResponseResult>,
}

/// Rates on a geometric ε ladder, Richardson-extrapolated to ε → 0.
pub fn extrapolated_rate(base: &ResponseConfig, epsilons: &[f64]) -> Result<RateLimit> {
    let ratio = richardson::ladder_ratio(epsilons)?;
    let levels = epsilons
        .iter()
        .map(|&eps| response_rate(&ResponseConfig { epsilon: eps, ..*base }))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = levels.iter().map(|r| r.value).collect();
    let ex = richardson::extrapolate(&values, ratio)?;
    let quad_error = levels.iter().map(|r| r.error_estimate).fold(0.0, f64::max);
    Ok(RateLimit {
        energy: base.energy,
        a: base.a,
        value: ex.value,
        error_estimate: ex.error + quad_error,
        corrections: ex.corrections,
        levels,
    })
}

/// The ε ladder {1e−2, 1e−3, 1e−4}/a.
pub fn default_epsilon_ladder(a: f64) -> Vec<f64> {
    vec![1e-2 / a, 1e-3 / a, 1e-4 / a]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowConfig {
    pub energy: f64,
    pub a: f64,
    pub epsilon: f64,
    pub start: f64,
    pub end: f64,
    /// Gauss–Legendre order for the inner integral along the window.
    pub inner_points: usize,
    pub quad: QuadConfig,
}

impl WindowConfig {
    pub fn new(energy: f64, a: f64, epsilon: f64, start: f64, end: f64) -> Self {
        WindowConfig {
            energy,
            a,
            epsilon,
            start,
            end,
            inner_points: 6,
            quad: QuadConfig {
                abs_tol: 1e-13,
                rel_tol: 1e-9,
                max_panels: 200_000,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        crate::spacetime::check_scale(self.a)?;
        if !self.energy.is_finite() {
            return Err(Error::Config("energy gap must be finite".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.start.is_finite() && self.end.is_finite()) {
            return Err(Error::Config("window must be finite".into()));
        }
        if self.start > self.end {
            return Err(Error::Config(format!(
                "window start {} lies after its end {}",
                self.start, self.end
            )));
        }
        if self.inner_points == 0 {
            return Err(Error::Config("inner_points must be positive".into()));
        }
        self.quad.validate()
    }
}

/// ∫∫ ds ds′ e^{−iE(s−s′)} K(s, s′) over the window, with K the regulated
/// trajectory kernel.
///
/// The integral is taken in Δ = s − s′ adaptively and along the window at
/// fixed Δ by Gauss–Legendre.
pub fn windowed_response(kind: TrajectoryKind, cfg: &WindowConfig) -> Result<ResponseResult> {
    cfg.validate()?;
    let (e, a, eps) = (cfg.energy, cfg.a, cfg.epsilon);
    let (s1, s2) = (cfg.start, cfg.end);
    let length = s2 - s1;
    let echo = |value: f64, imaginary: f64, error: f64, evaluations: usize| ResponseResult {
        value,
        imaginary,
        error_estimate: error,
        evaluations,
        energy: e,
        a,
        epsilon: eps,
        window: (s1, s2),
        trajectory: Some(kind),
    };
    if length == 0.0 {
        return Ok(echo(0.0, 0.0, 0.0, 0));
    }

    let nodes = quad::gauss_legendre(cfg.inner_points);
    let f = |delta: f64| {
        let lo = s1.max(s1 - delta);
        let hi = s2.min(s2 - delta);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let along: Complex64 = nodes
            .iter()
            .map(|&(x, w)| {
                let sp = mid + half * x;
                regulated_kernel(kind, sp + delta, sp, a, eps) * w
            })
            .sum::<Complex64>()
            * half;
        Complex64::from_polar(1.0, -e * delta) * along
    };

    let step = if e == 0.0 { 1.0 / a } else { (1.0 / a).min(PI / e.abs()) };
    let half = graded_breakpoints(eps.min(length), step, length);
    let mut pts: Vec<f64> = half.iter().rev().map(|x| -x).collect();
    pts.extend_from_slice(&half[1..]);
    let integral = quad::integrate_partitioned(f, &pts, &cfg.quad)?;
    Ok(echo(
        integral.value.re,
        integral.value.im,
        integral.error,
        integral.evaluations,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(delta: f64, a: f64) -> f64 {
        -a * a / (16.0 * PI * PI * (0.5 * a * delta).sinh().powi(2))
    }

    #[test]
    fn wightman_matches_sinh_form() {
        for a in [0.5, 1.0, 3.0] {
            for (s, sp) in [(0.3, -0.4), (2.0, 1.0), (-3.0, 1.5), (0.1, 0.1 + 1e-9)] {
                let expect = closed(s - sp, a);
                for kind in TrajectoryKind::ALL {
                    let d = wightman(kind, s, sp, a, 0.0).unwrap();
                    assert!(((d.re - expect) / expect).abs() < 1e-13, "{kind} a={a} s={s} s'={sp}");
                    assert!(d.im.abs() < 1e-13 * expect.abs());
                }
            }
        }
    }

    #[test]
    fn sum_coordinate_independence() {
        let a = 1.3;
        let samples: Vec<(f64, f64)> = (0..=40)
            .map(|j| {
                let centre = -10.0 / a + j as f64 * 0.5 / a;
                (centre + 0.5 / a, centre - 0.5 / a)
            })
            .collect();
        assert!(integrand_identity_check(a, &samples).unwrap() < 1e-12);
        assert_eq!(integrand_identity_check(a, &[]).unwrap(), 0.0);
    }

    #[test]
    fn wightman_decays_and_rejects_coincidence() {
        let far = wightman(TrajectoryKind::Accelerated, 40.0, 0.0, 1.0, 0.0).unwrap();
        assert!(far.norm() < 1e-18);
        assert!(matches!(
            wightman(TrajectoryKind::InertialScaled, 1.0, 1.0, 1.0, 0.0),
            Err(Error::Singular)
        ));
        assert!(wightman(TrajectoryKind::InertialScaled, 1.0, 1.0, 1.0, 1e-3).is_ok());
        assert!(wightman(TrajectoryKind::Accelerated, 1.0, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn regulated_kernel_is_shifted_sinh_form() {
        let a = 0.8;
        let eps = 1e-3;
        for (s, sp) in [(0.0, 0.0), (1.0, -2.0), (3.0, 3.0005), (-4.0, 2.0)] {
            let expect = sinh_wightman(Complex64::new(s - sp, -eps), a);
            for kind in TrajectoryKind::ALL {
                let k = regulated_kernel(kind, s, sp, a, eps);
                assert!((k - expect).norm() < 1e-11 * expect.norm(), "{kind} s={s} s'={sp}");
            }
        }
    }

    #[test]
    fn sinh_wightman_is_even() {
        let z = Complex64::new(0.7, -0.2);
        assert!((sinh_wightman(z, 1.5) - sinh_wightman(-z, 1.5)).norm() < 1e-14);
        let direct = -1.5f64.powi(2) / (16.0 * PI * PI * (z * 0.75).sinh().powi(2));
        assert!((sinh_wightman(z, 1.5) - direct).norm() < 1e-13 * direct.norm());
    }

    #[test]
    fn shifted_rate_equals_regulated_thermal_rate() {
        // At finite ε the rate is exactly e^{Eε} times the thermal value.
        for a in [1.0, 2.0] {
            for ratio in [-2.0, -0.5, 0.5, 1.0, 2.0] {
                let e = ratio * a;
                let eps = 1e-2 / a;
                let r = response_rate(&ResponseConfig::new(e, a, eps, 200.0 / a)).unwrap();
                let expect = (e * eps).exp() * thermal_rate(e, a);
                assert!(((r.value - expect) / expect).abs() < 1e-9, "a={a} E/a={ratio}: {}", r.value);
                assert!(r.imaginary.abs() < 1e-9 * expect);
            }
        }
    }

    #[test]
    fn real_axis_agrees_with_shifted() {
        let a = 1.0;
        for e in [-1.0, 0.5, 1.0] {
            let mut cfg = ResponseConfig::new(e, a, 1e-2, 200.0);
            let shifted = response_rate(&cfg).unwrap().value;
            cfg.contour = RateContour::RealAxis;
            cfg.quad.rel_tol = 1e-12;
            let real = response_rate(&cfg).unwrap().value;
            assert!(((real - shifted) / shifted).abs() < 1e-6, "E={e}: {real} vs {shifted}");
        }
    }

    #[test]
    fn extrapolated_detailed_balance() {
        let a = 1.0;
        for ratio in [0.5, 1.0, 2.0] {
            let ladder = default_epsilon_ladder(a);
            let up = extrapolated_rate(&ResponseConfig::new(ratio * a, a, ladder[0], 200.0 / a), &ladder).unwrap();
            let down =
                extrapolated_rate(&ResponseConfig::new(-ratio * a, a, ladder[0], 200.0 / a), &ladder).unwrap();
            let balance = up.value / down.value;
            let expect = (-2.0 * PI * ratio).exp();
            assert!(((balance - expect) / expect).abs() < 1e-8, "E/a={ratio}");
            assert!(up.value > 0.0 && down.value > 0.0);
        }
    }

    #[test]
    fn zero_gap_limit() {
        let a = 1.7;
        let r = response_rate(&ResponseConfig::new(1e-9 * a, a, 1e-4 / a, 200.0 / a)).unwrap();
        let expect = a / (4.0 * PI * PI);
        assert!(((r.value - expect) / expect).abs() < 1e-6);
        assert_eq!(thermal_rate(0.0, a), expect);
    }

    #[test]
    fn rate_config_errors() {
        assert!(response_rate(&ResponseConfig::new(1.0, 1.0, 0.0, 10.0)).is_err());
        assert!(response_rate(&ResponseConfig::new(1.0, 1.0, 1e-3, 0.0)).is_err());
        assert!(response_rate(&ResponseConfig::new(1.0, -1.0, 1e-3, 10.0)).is_err());
    }

    #[test]
    fn matched_windows_agree() {
        let a = 1.0;
        let cfg = WindowConfig::new(a, a, 1e-3 / a, -5.0 / a, 5.0 / a);
        let inertial = windowed_response(TrajectoryKind::InertialScaled, &cfg).unwrap();
        let accel = windowed_response(TrajectoryKind::Accelerated, &cfg).unwrap();
        let combined = inertial.error_estimate + accel.error_estimate;
        assert!((inertial.value - accel.value).abs() < 2.0 * combined);
        assert!(inertial.value > 0.0);
        assert!(inertial.imaginary.abs() < 1e-6 * inertial.value);
    }

    #[test]
    fn window_growth_follows_rate() {
        // F(L) = L·rate + M(L), with M the switching transient, so the growth
        // per unit window length tends to the stationary rate.
        let a = 1.0;
        let eps = 1e-3 / a;
        let value = |l: f64| {
            let cfg = WindowConfig::new(a, a, eps, -0.5 * l, 0.5 * l);
            windowed_response(TrajectoryKind::Accelerated, &cfg).unwrap().value
        };
        let (f20, f40, f80) = (value(20.0 / a), value(40.0 / a), value(80.0 / a));
        let rate = response_rate(&ResponseConfig::new(a, a, eps, 200.0 / a)).unwrap().value;
        let slope = (f40 - f20) / (20.0 / a);
        assert!(((slope - rate) / rate).abs() < 0.01);
        let late = (f80 - f40) / (40.0 / a);
        assert!(((late - rate) / rate).abs() < 1e-6);
        assert!(f20 / 20.0 > f40 / 40.0 && f40 / 40.0 > f80 / 80.0);
    }

    #[test]
    fn window_edge_cases() {
        let cfg = WindowConfig::new(1.0, 1.0, 1e-3, 2.0, 2.0);
        assert_eq!(windowed_response(TrajectoryKind::Accelerated, &cfg).unwrap().value, 0.0);
        let cfg = WindowConfig::new(1.0, 1.0, 1e-3, 2.0, 1.0);
        assert!(matches!(
            windowed_response(TrajectoryKind::Accelerated, &cfg),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn trajectory_names_round_trip() {
        for kind in TrajectoryKind::ALL {
            assert_eq!(kind.to_string().parse::<TrajectoryKind>().unwrap(), kind);
        }
        assert!("geodesic".parse::<TrajectoryKind>().is_err());
    }
}
