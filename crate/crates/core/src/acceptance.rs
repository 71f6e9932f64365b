//! The acceptance suite: eight end-to-end checks with their tolerances.
//!
//! Reference values here are computed independently of the modules under
//! test. The Gamma function comes from a shifted Stirling series rather than
//! the Lanczos form in [`crate::special`], and the thermal rate is summed
//! residue by residue rather than taken from its closed form.

use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bogoliubov::{self, DeltaLadder};
use crate::detector::{self, ResponseConfig, TrajectoryKind, WindowConfig};
use crate::error::Result;
use crate::feasibility;
use crate::modes::{self, GVariant, ModeSpec};
use crate::quad::QuadConfig;
use crate::spacetime::{self, NullBranch, Quadrant};
use crate::vacuum::{self, OperatorCondition};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Allowed runtime.
    #[serde(skip)]
    pub limit: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {}: {} ({:.2} s, limit {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }

    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }
}

const SEED: u64 = 0x5eed_f00d;

/// ln Γ(z) by shifting to Re z ≥ 20 and summing the Stirling series.
pub fn stirling_ln_gamma(z: Complex64) -> Complex64 {
    // B_{2m} / (2m(2m−1)) for m = 1..8
    const TERMS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let mut shift = Complex64::new(0.0, 0.0);
    let mut x = z;
    while x.re < 20.0 {
        shift += x.ln();
        x += 1.0;
    }
    let inv = x.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for t in TERMS {
        series += power * t;
        power *= inv2;
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Reference (α, β) in the δ → 0 limit for the F/R (`future = true`) or P/L modes.
pub fn reference_coefficients(future: bool, omega: f64, a: f64, k: f64) -> (Complex64, Complex64) {
    let w = omega / a;
    let norm = (k / omega).sqrt() / (2.0 * PI);
    let s = if future { Complex64::new(1.0, -w) } else { Complex64::new(1.0, w) };
    // ±ik = k e^{±iπ/2}
    let log_plus = Complex64::new(k.ln(), PI / 2.0);
    let log_minus = Complex64::new(k.ln(), -PI / 2.0);
    let (log_alpha, log_beta) = if future { (log_minus, log_plus) } else { (log_plus, log_minus) };
    let log_scale = (s - 1.0) * a.ln() + stirling_ln_gamma(s) + norm.ln();
    ((log_scale - s * log_alpha).exp(), (log_scale - s * log_beta).exp())
}

/// Σ_{n≥1} (E/2π) e^{−2πnE/a} for E > 0 and its continuation Σ_{n≥0} for E < 0,
/// summed residue by residue.
pub fn residue_series_rate(energy: f64, a: f64) -> f64 {
    let x = (-2.0 * PI * energy.abs() / a).exp();
    let (mut term, prefactor) = if energy > 0.0 { (x, energy / (2.0 * PI)) } else { (1.0, -energy / (2.0 * PI)) };
    let mut sum = 0.0_f64;
    while term > 1e-18 * sum.max(f64::MIN_POSITIVE) {
        sum += term;
        term *= x;
    }
    prefactor * sum
}

fn outcome(id: u8, name: &'static str, limit_s: u64, start: Instant, passed: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_s),
    }
}

fn failed(id: u8, name: &'static str, limit_s: u64, start: Instant, err: crate::Error) -> CriterionOutcome {
    outcome(id, name, limit_s, start, false, format!("error: {err}"))
}

pub fn mode_identity() -> CriterionOutcome {
    const NAME: &str = "mode identity";
    let start = Instant::now();
    let run = || -> Result<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let (mut future, mut past) = (0.0_f64, 0.0_f64);
        for _ in 0..1000 {
            let a = 10f64.powf(rng.random_range(-1.0..1.0));
            let omega = a * rng.random_range(0.1..3.0);
            let v = 10f64.powf(rng.random_range(-6.0..6.0)) / a;
            for (pair, sign, dev) in [
                ((Quadrant::F, Quadrant::R), 1.0, &mut future),
                ((Quadrant::P, Quadrant::L), -1.0, &mut past),
            ] {
                let gv = sign * v;
                let lhs = modes::mode_g(
                    &ModeSpec::new(pair.0, omega, a)?,
                    spacetime::local_null(pair.0, gv, a, NullBranch::VLike)?,
                );
                let rhs = modes::mode_g(
                    &ModeSpec::new(pair.1, omega, a)?,
                    spacetime::local_null(pair.1, gv, a, NullBranch::VLike)?,
                );
                *dev = dev.max((lhs - rhs).norm());
            }
        }
        Ok((future, past))
    };
    match run() {
        Ok((f, p)) => outcome(
            1,
            NAME,
            1,
            start,
            f < 1e-14 && p < 1e-14,
            format!("max |g^F − g^R| = {f:.1e}, max |g^P − g^L| = {p:.1e} over 10³ V (tol 1e-14)"),
        ),
        Err(e) => failed(1, NAME, 1, start, e),
    }
}

pub fn bogoliubov_relation() -> CriterionOutcome {
    const NAME: &str = "Bogoliubov relation";
    let start = Instant::now();
    let run = || -> Result<(f64, f64, f64)> {
        let a = 1.0;
        let ks = [0.5, 1.0, 2.0];
        let (mut ratio_dev, mut oracle_dev, mut relation_dev) = (0.0_f64, 0.0_f64, 0.0_f64);
        for w in [0.5, 1.0, 2.0] {
            let omega = w * a;
            let q = (-PI * w).exp();
            let (table, _) =
                bogoliubov::verify_relations(omega, a, &ks, &DeltaLadder::default(), &QuadConfig::default())?;
            for &k in &ks {
                let f = table.get(Quadrant::F, k).expect("table covers its grid");
                let p = table.get(Quadrant::P, k).expect("table covers its grid");
                ratio_dev = ratio_dev.max((p.beta.norm() / f.alpha.norm() - q).abs() / q);
                let (fa, fb) = reference_coefficients(true, omega, a, k);
                let (pa, pb) = reference_coefficients(false, omega, a, k);
                for (got, want) in [(f.alpha, fa), (f.beta, fb), (p.alpha, pa), (p.beta, pb)] {
                    oracle_dev = oracle_dev.max((got - want).norm() / want.norm());
                }
                relation_dev = relation_dev.max((p.beta + q * f.alpha.conj()).norm() / p.beta.norm());
                relation_dev = relation_dev.max((pb + q * fa.conj()).norm() / pb.norm());
            }
        }
        Ok((ratio_dev, oracle_dev, relation_dev))
    };
    match run() {
        Ok((r, o, c)) => outcome(
            2,
            NAME,
            60,
            start,
            r < 1e-6 && o < 1e-6 && c < 1e-6,
            format!(
                "| |β^P|/|α^F| − e^(−πω/a) | rel {r:.1e}, vs Gamma oracle {o:.1e}, β^P + e^(−πω/a)α^F* rel {c:.1e} (tol 1e-6)"
            ),
        ),
        Err(e) => failed(2, NAME, 60, start, e),
    }
}

pub fn entangled_vacuum() -> CriterionOutcome {
    const NAME: &str = "entangled vacuum";
    let start = Instant::now();
    let run = || -> Result<(bool, f64, f64, f64)> {
        let mut edges_ok = true;
        let mut number = 0.0_f64;
        let mut gibbs = 0.0_f64;
        let mut entropy = 0.0_f64;
        for w in [0.1, 0.5, 1.0, 2.0, 5.0] {
            for n_trunc in [None, Some(3), Some(10), Some(40)] {
                let state = match n_trunc {
                    Some(n) => vacuum::build_state(w, 1.0, n)?,
                    None => vacuum::build_state_default(w, 1.0)?,
                };
                let bound = vacuum::edge_bound(&state) + vacuum::residual_floor(&state);
                edges_ok &= vacuum::annihilation_residual(&state, OperatorCondition::LowerF) <= bound;
                edges_ok &= vacuum::annihilation_residual(&state, OperatorCondition::LowerP) <= bound;
                number = number.max(vacuum::annihilation_residual(&state, OperatorCondition::NumberDifference));
                let thermal = vacuum::reduce_to_f(&state);
                let target = (-2.0 * PI * w).exp();
                // exp magnifies the rounding of its argument by the argument itself.
                let ulps = 1.0 + 2.0 * PI * w;
                for pair in thermal.probabilities.windows(2).filter(|p| p[1] >= f64::MIN_POSITIVE) {
                    gibbs = gibbs.max((pair[1] / pair[0] / target - 1.0).abs() / ulps);
                }
                if n_trunc.is_none() {
                    let x = target;
                    let direct: f64 = (0..10_000)
                        .map(|n| (1.0 - x) * x.powi(n))
                        .take_while(|&p| p > 0.0)
                        .map(|p| -p * p.ln())
                        .sum();
                    entropy = entropy.max((thermal.entropy() - direct).abs());
                }
            }
        }
        Ok((edges_ok, number, gibbs, entropy))
    };
    match run() {
        Ok((edges, number, gibbs, entropy)) => outcome(
            3,
            NAME,
            1,
            start,
            edges && number == 0.0 && gibbs < 8.0 * f64::EPSILON && entropy < 1e-10,
            format!(
                "ladder residuals within edge bound: {edges}, number residual {number:e}, Gibbs ratio rel {gibbs:.1e} per unit of 2πω/a, entropy vs direct sum {entropy:.1e}"
            ),
        ),
        Err(e) => failed(3, NAME, 1, start, e),
    }
}

pub fn integrand_identity() -> CriterionOutcome {
    const NAME: &str = "trajectory integrand identity";
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let a = 1.0;
    let samples: Vec<(f64, f64)> = (0..1000)
        .map(|_| loop {
            let s = rng.random_range(-10.0..10.0);
            let sp = rng.random_range(-10.0..10.0);
            if s != sp {
                break (s / a, sp / a);
            }
        })
        .collect();
    match detector::integrand_identity_check(a, &samples) {
        Ok(dev) => outcome(
            4,
            NAME,
            1,
            start,
            dev < 1e-12,
            format!("max relative deviation {dev:.1e} over 10³ samples (tol 1e-12)"),
        ),
        Err(e) => failed(4, NAME, 1, start, e),
    }
}

pub fn thermality() -> CriterionOutcome {
    const NAME: &str = "thermality";
    let start = Instant::now();
    let run = || -> Result<(f64, f64)> {
        let a = 1.0;
        let ladder = detector::default_epsilon_ladder(a);
        let (mut balance, mut oracle) = (0.0_f64, 0.0_f64);
        for ratio in [0.5, 1.0, 2.0] {
            let e = ratio * a;
            let up = detector::extrapolated_rate(&ResponseConfig::new(e, a, ladder[0], 200.0 / a), &ladder)?;
            let down = detector::extrapolated_rate(&ResponseConfig::new(-e, a, ladder[0], 200.0 / a), &ladder)?;
            let target = (-2.0 * PI * ratio).exp();
            balance = balance.max((up.value / down.value / target - 1.0).abs());
            for (got, energy) in [(up.value, e), (down.value, -e)] {
                let want = residue_series_rate(energy, a);
                oracle = oracle.max((got / want - 1.0).abs());
            }
        }
        Ok((balance, oracle))
    };
    match run() {
        Ok((b, o)) => outcome(
            5,
            NAME,
            120,
            start,
            b < 1e-4 && o < 1e-4,
            format!("detailed balance rel {b:.1e}, residue-series oracle rel {o:.1e} (tol 1e-4)"),
        ),
        Err(e) => failed(5, NAME, 120, start, e),
    }
}

pub fn windowed_equivalence() -> CriterionOutcome {
    const NAME: &str = "windowed equivalence";
    let start = Instant::now();
    let a = 1.0;
    let cfg = WindowConfig::new(a, a, 1e-3 / a, -5.0 / a, 5.0 / a);
    let run = || -> Result<(f64, f64, f64)> {
        let i = detector::windowed_response(TrajectoryKind::InertialScaled, &cfg)?;
        let c = detector::windowed_response(TrajectoryKind::Accelerated, &cfg)?;
        Ok((i.value, (i.value - c.value).abs(), i.error_estimate + c.error_estimate))
    };
    match run() {
        Ok((value, diff, err)) => outcome(
            6,
            NAME,
            120,
            start,
            diff < 2.0 * err,
            format!("F = {value:.10}, |inertial − accelerated| = {diff:.1e} vs 2× combined error {:.1e}", 2.0 * err),
        ),
        Err(e) => failed(6, NAME, 120, start, e),
    }
}

pub fn feasibility_numbers() -> CriterionOutcome {
    const NAME: &str = "feasibility numbers";
    let start = Instant::now();
    let run = || -> Result<(f64, f64, f64)> {
        Ok((
            feasibility::a_for_temperature(1.0)?,
            feasibility::unruh_acceleration_for(1.0)?,
            feasibility::thermalization_threshold(1.0)?,
        ))
    };
    match run() {
        Ok((a, g, threshold)) => outcome(
            7,
            NAME,
            1,
            start,
            (1e11..=1e12).contains(&a) && (1e20..=1e21).contains(&g) && (threshold - E).abs() <= f64::EPSILON * E,
            format!("a(1 K) = {a:.3e} rad/s, Unruh acceleration {g:.3e} m/s², threshold {threshold:.6}"),
        ),
        Err(e) => failed(7, NAME, 1, start, e),
    }
}

pub fn positive_frequency() -> CriterionOutcome {
    const NAME: &str = "positive-frequency G modes";
    let start = Instant::now();
    let run = || -> Result<(f64, bool)> {
        let a = 1.0;
        let (mut finest, mut monotone) = (0.0_f64, true);
        for w in [0.5, 1.0, 2.0] {
            let levels = modes::g_mode_positivity(w * a, a, GVariant::G, &modes::default_refinements(a))?;
            finest = finest.max(levels.last().map_or(f64::INFINITY, |l| l.fraction));
            monotone &= levels.windows(2).all(|p| p[1].fraction < p[0].fraction);
        }
        Ok((finest, monotone))
    };
    match run() {
        Ok((finest, monotone)) => outcome(
            8,
            NAME,
            60,
            start,
            finest < 1e-3 && monotone,
            format!("finest negative-frequency fraction {finest:.1e} (tol 1e-3), monotone under refinement: {monotone}"),
        ),
        Err(e) => failed(8, NAME, 60, start, e),
    }
}

/// Run all criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        mode_identity(),
        bogoliubov_relation(),
        entangled_vacuum(),
        integrand_identity(),
        thermality(),
        windowed_equivalence(),
        feasibility_numbers(),
        positive_frequency(),
    ]
}
