//! Bogoliubov coefficients between the quadrant modes and Minkowski plane waves.
//!
//! # Inversion formula
//!
//! A θ-supported mode is synthesized from plane waves as
//!
//! ```text
//! θ g(V) = ∫₀^∞ dk (4πk)^{−1/2} [ α_k e^{−ikV} + β_k e^{+ikV} ].
//! ```
//!
//! Multiplying by e^{+ik′V}, integrating over V and using
//! ∫ e^{i(k′−k)V} dV = 2π δ(k − k′) (the β term pairs with k = −k′ < 0 and
//! drops out) gives
//!
//! ```text
//! α_k = √(4πk)/(2π) ∫ e^{+ikV} θ g(V) dV,   β_k = √(4πk)/(2π) ∫ e^{−ikV} θ g(V) dV.
//! ```
//!
//! With g = (4πω)^{−1/2}e^{−iωλ(V)} the prefactor becomes (1/2π)√(k/ω), and
//! in F, λ = a⁻¹ln(aV) turns the integrand into e^{ikV}(aV)^{−iω/a}.
//!
//! The integrals are only conditionally convergent, so each is damped by
//! e^{−δ|V|} and the limit δ → 0 is taken by Richardson extrapolation over a
//! geometric δ ladder. At finite δ the F integral is a Gamma function:
//! ∫₀^∞ e^{(ik−δ)V}(aV)^{−iω/a} dV = a^{−iω/a} Γ(1−iω/a) (δ−ik)^{−(1−iω/a)};
//! [`closed_form`] evaluates these for all four quadrants.
//!
//! The quadrature runs in two pieces: near V = 0 on the log variable
//! |V| = a⁻¹e^{au}, where the log-phase of g becomes linear, and beyond a
//! few wavelengths directly in V with one panel per period of e^{ikV}.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::{mode_g_of_v, ModeSpec};
use crate::quad::{self, QuadConfig};
use crate::richardson;
use crate::spacetime::{null_exponent, NullBranch, Quadrant};
use crate::special::{cpow, gamma};

/// √(4πk)/(2π), the plane-wave inversion prefactor.
pub fn inversion_prefactor(k: f64) -> f64 {
    (4.0 * PI * k).sqrt() / (2.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovEntry {
    pub quadrant: Quadrant,
    pub omega: f64,
    pub a: f64,
    pub k: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Damping used for a raw projection; for an extrapolated entry, the
    /// finest damping of the ladder.
    pub regulator_delta: f64,
    pub extrapolated: bool,
    /// Quadrature error for raw entries; extrapolation plus quadrature error
    /// for extrapolated ones.
    pub error: f64,
}

impl BogoliubovEntry {
    pub fn spec(&self) -> ModeSpec {
        ModeSpec {
            quadrant: self.quadrant,
            omega: self.omega,
            a: self.a,
        }
    }

    /// |β| / |α|.
    pub fn modulus_ratio(&self) -> f64 {
        self.beta.norm() / self.alpha.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub alpha_error: f64,
    pub beta_error: f64,
}

fn check_projection_args(k: f64, delta: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("plane-wave momentum must be positive, got {k}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("damping δ must be positive, got {delta}")));
    }
    Ok(())
}

/// Damped projection ∫ e^{i·sign·kV} θ g(V) e^{−δ|V|} dV over the mode's
/// support, without the inversion prefactor.
fn damped_transform(spec: &ModeSpec, k: f64, delta: f64, sign: f64, cfg: &QuadConfig) -> Result<quad::Integral> {
    let (v_sign, _) = null_exponent(spec.quadrant, NullBranch::VLike);
    let a = spec.a;
    let w = spec.omega / a;

    // Integrand as a function of x = |V| ∈ (0, ∞); V = v_sign·x.
    let integrand = |x: f64| {
        let v = v_sign * x;
        Complex64::from_polar((-delta * x).exp(), sign * k * v) * mode_g_of_v(spec, v)
    };

    let x_split = 2.0 * PI * w.max(1.0) / k;
    let x_min = 1e-16 / k;
    let x_max = x_split + 40.0 / delta;

    // Head: x = a⁻¹e^{au}, dx = a·x du.
    let u_min = (a * x_min).ln() / a;
    let u_split = (a * x_split).ln() / a;
    let u_panel = 0.5 * PI / spec.omega.max(a);
    let head_panels = (((u_split - u_min) / u_panel).ceil() as usize).max(1);
    let head_bps: Vec<f64> = (0..=head_panels)
        .map(|i| u_min + (u_split - u_min) * i as f64 / head_panels as f64)
        .collect();
    let head = quad::integrate_partitioned(
        |u: f64| {
            let x = (a * u).exp() / a;
            integrand(x) * (a * x)
        },
        &head_bps,
        cfg,
    )?;

    let period = 2.0 * PI / k;
    let tail_panels = (((x_max - x_split) / period).ceil() as usize).max(1);
    if tail_panels > cfg.max_panels / 2 {
        return Err(Error::Config(format!(
            "δ = {delta} needs {tail_panels} tail panels, more than the quadrature budget allows"
        )));
    }
    let tail_bps: Vec<f64> = (0..=tail_panels)
        .map(|i| x_split + (x_max - x_split) * i as f64 / tail_panels as f64)
        .collect();
    let tail = quad::integrate_partitioned(integrand, &tail_bps, cfg)?;

    Ok(quad::Integral {
        value: head.value + tail.value,
        error: head.error + tail.error,
        evaluations: head.evaluations + tail.evaluations,
    })
}

/// α and β for one mode and momentum at damping δ, by quadrature.
pub fn project_coefficients(spec: &ModeSpec, k: f64, delta: f64, cfg: &QuadConfig) -> Result<Projection> {
    check_projection_args(k, delta)?;
    let pref = inversion_prefactor(k);
    let alpha = damped_transform(spec, k, delta, 1.0, cfg)?;
    let beta = damped_transform(spec, k, delta, -1.0, cfg)?;
    Ok(Projection {
        alpha: alpha.value * pref,
        beta: beta.value * pref,
        alpha_error: alpha.error * pref,
        beta_error: beta.error * pref,
    })
}

pub fn project_entry(spec: &ModeSpec, k: f64, delta: f64, cfg: &QuadConfig) -> Result<BogoliubovEntry> {
    let p = project_coefficients(spec, k, delta, cfg)?;
    Ok(BogoliubovEntry {
        quadrant: spec.quadrant,
        omega: spec.omega,
        a: spec.a,
        k,
        alpha: p.alpha,
        beta: p.beta,
        regulator_delta: delta,
        extrapolated: false,
        error: p.alpha_error.max(p.beta_error),
    })
}

/// Closed-form damped coefficients; `delta = 0` gives the undamped limit.
///
/// With w = ω/a and N = (1/2π)√(k/ω):
///
/// | quadrants | α | β |
/// |---|---|---|
/// | F, R | N a^{−iw} Γ(1−iw) (δ−ik)^{−(1−iw)} | N a^{−iw} Γ(1−iw) (δ+ik)^{−(1−iw)} |
/// | P, L | N a^{iw} Γ(1+iw) (δ+ik)^{−(1+iw)} | N a^{iw} Γ(1+iw) (δ−ik)^{−(1+iw)} |
pub fn closed_form(spec: &ModeSpec, k: f64, delta: f64) -> Result<(Complex64, Complex64)> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("plane-wave momentum must be positive, got {k}")));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("damping δ must be non-negative, got {delta}")));
    }
    let w = spec.omega / spec.a;
    let n = (k / spec.omega).sqrt() / (2.0 * PI);
    // s = 1 − iw for F/R, 1 + iw for P/L; the α integral carries e^{+ikV},
    // which becomes e^{−ik|V|} on the negative half-line.
    let (s, alpha_base, beta_base) = match spec.quadrant {
        Quadrant::F | Quadrant::R => (
            Complex64::new(1.0, -w),
            Complex64::new(delta, -k),
            Complex64::new(delta, k),
        ),
        Quadrant::P | Quadrant::L => (
            Complex64::new(1.0, w),
            Complex64::new(delta, k),
            Complex64::new(delta, -k),
        ),
    };
    let scale = cpow(Complex64::new(spec.a, 0.0), s - 1.0) * gamma(s) * n;
    Ok((scale * cpow(alpha_base, -s), scale * cpow(beta_base, -s)))
}

/// Geometric δ ladder, δ_j = first·k / ratio^j.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaLadder {
    /// Largest damping as a multiple of k.
    pub first: f64,
    pub ratio: f64,
    pub levels: usize,
}

impl Default for DeltaLadder {
    fn default() -> Self {
        DeltaLadder {
            first: 0.1,
            ratio: 2.0,
            levels: 6,
        }
    }
}

impl DeltaLadder {
    pub fn deltas(&self, k: f64) -> Vec<f64> {
        (0..self.levels)
            .map(|j| self.first * k / self.ratio.powi(j as i32))
            .collect()
    }
}

/// Richardson-extrapolate a δ ladder of raw entries for the same mode and k.
pub fn extrapolate_delta(entries: &[BogoliubovEntry]) -> Result<BogoliubovEntry> {
    let Some(first) = entries.first() else {
        return Err(Error::Config("no entries to extrapolate".into()));
    };
    if entries.len() < 3 {
        return Err(Error::Config(format!(
            "δ extrapolation needs at least 3 levels, got {}",
            entries.len()
        )));
    }
    if entries.iter().any(|e| {
        e.extrapolated || e.quadrant != first.quadrant || e.omega != first.omega || e.a != first.a || e.k != first.k
    }) {
        return Err(Error::Config(
            "entries must be raw projections of a single mode at a single k".into(),
        ));
    }
    let deltas: Vec<f64> = entries.iter().map(|e| e.regulator_delta).collect();
    let ratio = richardson::ladder_ratio(&deltas)?;
    let alphas: Vec<Complex64> = entries.iter().map(|e| e.alpha).collect();
    let betas: Vec<Complex64> = entries.iter().map(|e| e.beta).collect();
    let alpha = richardson::extrapolate(&alphas, ratio)?;
    let beta = richardson::extrapolate(&betas, ratio)?;
    let last = entries[entries.len() - 1];
    Ok(BogoliubovEntry {
        alpha: alpha.value,
        beta: beta.value,
        regulator_delta: last.regulator_delta,
        extrapolated: true,
        error: alpha.error.max(beta.error) + last.error,
        ..last
    })
}

/// Project at every δ of the ladder and extrapolate. Returns the raw ladder
/// and the extrapolated entry.
pub fn extrapolated_entry(
    spec: &ModeSpec,
    k: f64,
    ladder: &DeltaLadder,
    cfg: &QuadConfig,
) -> Result<(Vec<BogoliubovEntry>, BogoliubovEntry)> {
    let raw = ladder
        .deltas(k)
        .into_iter()
        .map(|d| project_entry(spec, k, d, cfg))
        .collect::<Result<Vec<_>>>()?;
    let limit = extrapolate_delta(&raw)?;
    Ok((raw, limit))
}

/// Coefficients of all four quadrants on a k grid, for one ω.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub omega: f64,
    pub a: f64,
    pub k_grid: Vec<f64>,
    pub raw: Vec<BogoliubovEntry>,
    pub extrapolated: Vec<BogoliubovEntry>,
}

impl CoefficientTable {
    pub fn compute(omega: f64, a: f64, k_grid: &[f64], ladder: &DeltaLadder, cfg: &QuadConfig) -> Result<Self> {
        let jobs: Vec<(Quadrant, f64)> = k_grid
            .iter()
            .flat_map(|&k| Quadrant::ALL.into_iter().map(move |q| (q, k)))
            .collect();
        let results = jobs
            .iter()
            .map(|&(q, k)| extrapolated_entry(&ModeSpec::new(q, omega, a)?, k, ladder, cfg))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(omega, a, k_grid, results)
    }

    /// Build a table from per-(quadrant, k) results produced elsewhere, for
    /// example by a parallel sweep.
    pub fn assemble(
        omega: f64,
        a: f64,
        k_grid: &[f64],
        results: Vec<(Vec<BogoliubovEntry>, BogoliubovEntry)>,
    ) -> Result<Self> {
        if k_grid.is_empty() {
            return Err(Error::Config("k grid is empty".into()));
        }
        let mut raw = Vec::new();
        let mut extrapolated = Vec::new();
        for (r, e) in results {
            raw.extend(r);
            extrapolated.push(e);
        }
        Ok(CoefficientTable {
            omega,
            a,
            k_grid: k_grid.to_vec(),
            raw,
            extrapolated,
        })
    }

    pub fn get(&self, quadrant: Quadrant, k: f64) -> Option<&BogoliubovEntry> {
        self.extrapolated
            .iter()
            .find(|e| e.quadrant == quadrant && e.k == k)
    }
}

/// Maximum deviations from the coefficient identities over a k grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub omega: f64,
    pub a: f64,
    /// max_k |α^F − α^R|
    pub alpha_f_r: f64,
    /// max_k |β^F − β^R|
    pub beta_f_r: f64,
    /// max_k |α^P − α^L|
    pub alpha_p_l: f64,
    /// max_k |β^P − β^L|
    pub beta_p_l: f64,
    /// max_k |β^P + e^{−πω/a} α^{F*}|
    pub beta_p_relation: f64,
    /// max_k |β^F + e^{−πω/a} α^{P*}|
    pub beta_f_relation: f64,
    /// max_k | |β^F|/|α^F| − e^{−πω/a} |
    pub modulus_ratio: f64,
    /// Spread of |β^F|/|α^F| over the grid.
    pub ratio_spread: f64,
    /// max_k |arg β^P − arg(−α^{F*})| wrapped to (−π, π].
    pub phase: f64,
}

impl RelationReport {
    /// Largest of the six coefficient identities.
    pub fn max_identity_deviation(&self) -> f64 {
        [
            self.alpha_f_r,
            self.beta_f_r,
            self.alpha_p_l,
            self.beta_p_l,
            self.beta_p_relation,
            self.beta_f_relation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

pub fn verify_table(table: &CoefficientTable) -> Result<RelationReport> {
    let q = (-PI * table.omega / table.a).exp();
    let mut report = RelationReport {
        omega: table.omega,
        a: table.a,
        alpha_f_r: 0.0,
        beta_f_r: 0.0,
        alpha_p_l: 0.0,
        beta_p_l: 0.0,
        beta_p_relation: 0.0,
        beta_f_relation: 0.0,
        modulus_ratio: 0.0,
        ratio_spread: 0.0,
        phase: 0.0,
    };
    let (mut rmin, mut rmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &k in &table.k_grid {
        let get = |quadrant| {
            table
                .get(quadrant, k)
                .ok_or_else(|| Error::Config(format!("table lacks {quadrant} at k = {k}")))
        };
        let (f, r, p, l) = (get(Quadrant::F)?, get(Quadrant::R)?, get(Quadrant::P)?, get(Quadrant::L)?);
        report.alpha_f_r = report.alpha_f_r.max((f.alpha - r.alpha).norm());
        report.beta_f_r = report.beta_f_r.max((f.beta - r.beta).norm());
        report.alpha_p_l = report.alpha_p_l.max((p.alpha - l.alpha).norm());
        report.beta_p_l = report.beta_p_l.max((p.beta - l.beta).norm());
        report.beta_p_relation = report
            .beta_p_relation
            .max((p.beta + q * f.alpha.conj()).norm());
        report.beta_f_relation = report
            .beta_f_relation
            .max((f.beta + q * p.alpha.conj()).norm());
        let ratio = f.modulus_ratio();
        report.modulus_ratio = report.modulus_ratio.max((ratio - q).abs());
        rmin = rmin.min(ratio);
        rmax = rmax.max(ratio);
        let dphase = wrap_phase(p.beta.arg() - (-f.alpha.conj()).arg());
        report.phase = report.phase.max(dphase.abs());
    }
    report.ratio_spread = rmax - rmin;
    Ok(report)
}

/// Compute the extrapolated coefficients on `k_grid` and check the identities.
pub fn verify_relations(
    omega: f64,
    a: f64,
    k_grid: &[f64],
    ladder: &DeltaLadder,
    cfg: &QuadConfig,
) -> Result<(CoefficientTable, RelationReport)> {
    let table = CoefficientTable::compute(omega, a, k_grid, ladder, cfg)?;
    let report = verify_table(&table)?;
    Ok((table, report))
}

/// Coefficients of one mode sampled on a k grid, ready for synthesis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub spec: ModeSpec,
    /// Damping the coefficients belong to; 0 for the undamped limit.
    pub delta: f64,
    pub k: Vec<f64>,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
}

impl CoefficientSet {
    /// Closed-form coefficients on `points` log-spaced momenta in [k_min, k_max].
    pub fn closed_form_log_grid(spec: ModeSpec, delta: f64, k_min: f64, k_max: f64, points: usize) -> Result<Self> {
        let k = log_grid(k_min, k_max, points)?;
        let mut alpha = Vec::with_capacity(k.len());
        let mut beta = Vec::with_capacity(k.len());
        for &kk in &k {
            let (al, be) = closed_form(&spec, kk, delta)?;
            alpha.push(al);
            beta.push(be);
        }
        Ok(CoefficientSet {
            spec,
            delta,
            k,
            alpha,
            beta,
        })
    }

    fn validate(&self) -> Result<()> {
        let n = self.k.len();
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "synthesis needs an odd number (≥ 5) of momenta, got {n}"
            )));
        }
        if self.alpha.len() != n || self.beta.len() != n {
            return Err(Error::Config("coefficient arrays differ in length".into()));
        }
        if self.k[0] <= 0.0 || self.k.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("momenta must be positive and increasing".into()));
        }
        Ok(())
    }

    /// Elementwise sum of two sets on the same grid for the same mode.
    pub fn add(&self, other: &CoefficientSet) -> Result<CoefficientSet> {
        if self.k != other.k || self.delta != other.delta || self.spec != other.spec {
            return Err(Error::Config("coefficient sets do not share a grid and mode".into()));
        }
        Ok(CoefficientSet {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(x, y)| x + y).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(x, y)| x + y).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, factor: Complex64) -> CoefficientSet {
        CoefficientSet {
            alpha: self.alpha.iter().map(|x| x * factor).collect(),
            beta: self.beta.iter().map(|x| x * factor).collect(),
            ..self.clone()
        }
    }
}

pub fn log_grid(k_min: f64, k_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(k_min > 0.0 && k_max > k_min) || points < 2 {
        return Err(Error::Config(format!(
            "invalid log grid [{k_min}, {k_max}] with {points} points"
        )));
    }
    let (l0, l1) = (k_min.ln(), k_max.ln());
    Ok((0..points)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Synthesis {
    pub value: Complex64,
    pub error_bound: f64,
}

/// Synthesize ∫₀^∞ dk (4πk)^{−1/2}[α_k e^{−ikV} + β_k e^{ikV}] from sampled
/// coefficients.
///
/// The grid part is integrated in s = ln k with a trapezoid rule and one
/// Richardson step against the every-other-point rule. Below k_min the
/// coefficients are continued as the power law they follow there
/// (α ∝ k^{−1/2 ± iω/a} undamped, α ∝ k^{1/2} damped) and e^{∓ikV} is expanded
/// to first order; above k_max the integral is closed by two terms of
/// integration by parts. Every step is linear in the coefficients.
pub fn reconstruct_mode(set: &CoefficientSet, v: f64) -> Result<Synthesis> {
    set.validate()?;
    if v == 0.0 || !v.is_finite() {
        return Err(Error::Domain(format!("synthesis point must be finite and non-zero, got {v}")));
    }
    let w = set.spec.omega / set.spec.a;
    let n = set.k.len();
    let norm = |k: f64| (4.0 * PI * k).sqrt().recip();

    // Integrand in s = ln k: k·(4πk)^{−1/2}[α e^{−ikV} + β e^{ikV}].
    let h: Vec<Complex64> = (0..n)
        .map(|j| {
            let k = set.k[j];
            let phase = Complex64::from_polar(1.0, -k * v);
            k * norm(k) * (set.alpha[j] * phase + set.beta[j] * phase.conj())
        })
        .collect();
    let s: Vec<f64> = set.k.iter().map(|k| k.ln()).collect();

    let trap = |stride: usize| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut j = 0;
        while j + stride < n {
            acc += 0.5 * (s[j + stride] - s[j]) * (h[j] + h[j + stride]);
            j += stride;
        }
        acc
    };
    let t1 = trap(1);
    let t2 = trap(2);
    let grid_part = t1 + (t1 - t2) / 3.0;
    let grid_err = (t1 - t2).norm() / 3.0;

    // Infrared continuation. Coefficient parts at the first node:
    let k0 = set.k[0];
    let ha = k0 * norm(k0) * set.alpha[0];
    let hb = k0 * norm(k0) * set.beta[0];
    let p = if set.delta > 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        let (_, rate) = null_exponent(set.spec.quadrant, NullBranch::VLike);
        Complex64::new(0.0, rate * w)
    };
    let ir = (ha + hb) / p + Complex64::new(0.0, -v * k0) * (ha - hb) / (p + 1.0);
    let ir_err = ((ha + hb) * (v * k0).powi(2) / (2.0 * (p + 2.0))).norm();

    // Ultraviolet closure: f(k) ≈ f(K)(k/K)^{pu}.
    let kk = set.k[n - 1];
    let fa = norm(kk) * set.alpha[n - 1];
    let fb = norm(kk) * set.beta[n - 1];
    // α ∝ k^{−1/2 ± iω/a} at large k whether or not the set is damped.
    let (_, rate) = null_exponent(set.spec.quadrant, NullBranch::VLike);
    let pu = Complex64::new(-1.0, rate * w);
    let tail = |f: Complex64, vv: f64| {
        // ∫_K^∞ f(k) e^{−ik·vv} dk = e^{−iK·vv}[f/(i vv) + f′/(i vv)² + …]
        let iv = Complex64::new(0.0, vv);
        let phase = Complex64::from_polar(1.0, -kk * vv);
        let t1 = f / iv;
        let t2 = pu * f / kk / (iv * iv);
        let t3 = pu * (pu - 1.0) * f / (kk * kk) / (iv * iv * iv);
        (phase * (t1 + t2), t3.norm())
    };
    let (uv_a, uv_a_err) = tail(fa, v);
    let (uv_b, uv_b_err) = tail(fb, -v);

    Ok(Synthesis {
        value: grid_part + ir + uv_a + uv_b,
        error_bound: grid_err + ir_err + uv_a_err + uv_b_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn closed_form_modulus_ratio_in_the_limit() {
        for q in Quadrant::ALL {
            let spec = ModeSpec::new(q, 1.0, 1.0).unwrap();
            let (al, be) = closed_form(&spec, 0.7, 0.0).unwrap();
            assert!((be.norm() / al.norm() - (-PI).exp()).abs() < 1e-15, "{q}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let spec = ModeSpec::new(Quadrant::F, 1.0, 1.0).unwrap();
        assert!(project_coefficients(&spec, 0.0, 0.1, &cfg()).is_err());
        assert!(project_coefficients(&spec, 1.0, 0.0, &cfg()).is_err());
        assert!(closed_form(&spec, 1.0, -0.1).is_err());
    }

    #[test]
    fn projection_matches_closed_form_at_finite_delta() {
        for q in [Quadrant::F, Quadrant::P] {
            let spec = ModeSpec::new(q, 1.0, 1.0).unwrap();
            let p = project_coefficients(&spec, 1.0, 0.2, &cfg()).unwrap();
            let (al, be) = closed_form(&spec, 1.0, 0.2).unwrap();
            assert!((p.alpha - al).norm() < 1e-8 * al.norm(), "{q} α");
            assert!((p.beta - be).norm() < 1e-8 * be.norm(), "{q} β");
        }
    }

    #[test]
    fn f_and_r_projections_are_bitwise_equal() {
        let f = ModeSpec::new(Quadrant::F, 0.5, 1.0).unwrap();
        let r = ModeSpec::new(Quadrant::R, 0.5, 1.0).unwrap();
        let pf = project_coefficients(&f, 2.0, 0.3, &cfg()).unwrap();
        let pr = project_coefficients(&r, 2.0, 0.3, &cfg()).unwrap();
        assert_eq!(pf.alpha, pr.alpha);
        assert_eq!(pf.beta, pr.beta);
    }

    #[test]
    fn extrapolation_preconditions() {
        let spec = ModeSpec::new(Quadrant::F, 1.0, 1.0).unwrap();
        let e = project_entry(&spec, 1.0, 0.1, &cfg()).unwrap();
        assert!(extrapolate_delta(&[e]).is_err());
        assert!(extrapolate_delta(&[]).is_err());

        let constant: Vec<BogoliubovEntry> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&d| BogoliubovEntry {
                regulator_delta: d,
                ..e
            })
            .collect();
        let x = extrapolate_delta(&constant).unwrap();
        assert_eq!(x.alpha, e.alpha);
        assert_eq!(x.beta, e.beta);
        assert!(x.extrapolated);
        assert_eq!(x.error, e.error);

        let mixed = [constant[0], constant[1], BogoliubovEntry { k: 2.0, ..constant[2] }];
        assert!(extrapolate_delta(&mixed).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 7).unwrap();
        assert!((g[0] - 1e-3).abs() < 1e-18 && (g[6] - 1e3).abs() < 1e-9);
        assert!((g[3] - 1.0).abs() < 1e-14);
        assert!(log_grid(1.0, 0.5, 5).is_err());
    }

    #[test]
    fn synthesis_validates_input() {
        let spec = ModeSpec::new(Quadrant::F, 1.0, 1.0).unwrap();
        let set = CoefficientSet::closed_form_log_grid(spec, 0.0, 1e-2, 1e2, 8).unwrap();
        assert!(reconstruct_mode(&set, 1.0).is_err());
        let set = CoefficientSet::closed_form_log_grid(spec, 0.0, 1e-2, 1e2, 9).unwrap();
        assert!(reconstruct_mode(&set, 0.0).is_err());
        assert!(reconstruct_mode(&set, 1.0).is_ok());
    }
}
