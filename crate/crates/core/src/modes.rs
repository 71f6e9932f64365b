//! Left-moving mode functions of the massless field.
//!
//! Plane waves are (4πk)^{−1/2}e^{−ikV}. In each quadrant the conformal modes
//! are g_ω = (4πω)^{−1/2}e^{−iωλ}, with λ the quadrant's V-like local null
//! coordinate (ν, ν̄, χ or χ̄). Right-movers are the same functions of U and
//! are not built separately.
//!
//! Composed with the null map, g^F(ν(V)) and g^R(χ(V)) are the same function
//! on V > 0, and g^P, g^L coincide on V < 0. The combinations
//!
//! G_ω(V) = θ(V)g^F_ω(ν) + θ(−V)e^{−πω/a}g^{P*}_ω(ν̄)
//! Ḡ_ω(V) = θ(−V)g^P_ω(ν̄) + θ(V)e^{−πω/a}g^{F*}_ω(ν)
//!
//! contain only positive Minkowski frequencies; [`negative_frequency_fraction`]
//! measures this numerically.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadConfig};
use crate::spacetime::{
    self, check_scale, null_exponent, NullBranch, Quadrant, QuadrantCoord, SpacetimeEvent,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub quadrant: Quadrant,
    pub omega: f64,
    pub a: f64,
}

impl ModeSpec {
    pub fn new(quadrant: Quadrant, omega: f64, a: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::Domain(format!("mode frequency must be positive, got {omega}")));
        }
        check_scale(a)?;
        Ok(ModeSpec { quadrant, omega, a })
    }

    /// e^{−πω/a}, the weight relating the two halves of G and Ḡ.
    pub fn boltzmann_root(&self) -> f64 {
        (-PI * self.omega / self.a).exp()
    }

    fn normalization(&self) -> f64 {
        (4.0 * PI * self.omega).sqrt().recip()
    }
}

/// (4πk)^{−1/2} e^{−ikV}.
pub fn plane_wave(k: f64, v: f64) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("plane-wave momentum must be positive, got {k}")));
    }
    Ok(Complex64::from_polar((4.0 * PI * k).sqrt().recip(), -k * v))
}

/// g_ω(λ) = (4πω)^{−1/2} e^{−iωλ} at the quadrant's local null coordinate λ.
pub fn mode_g(spec: &ModeSpec, local_null: f64) -> Complex64 {
    Complex64::from_polar(spec.normalization(), -spec.omega * local_null)
}

/// θ-supported composition g_ω(λ(V)).
///
/// Zero outside the quadrant's V half-line and at V = 0 itself.
pub fn mode_g_of_v(spec: &ModeSpec, v: f64) -> Complex64 {
    let (sign, rate) = null_exponent(spec.quadrant, NullBranch::VLike);
    if sign * v > 0.0 {
        let lambda = spacetime::local_null_unchecked(v.abs(), spec.a, rate);
        mode_g(spec, lambda)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Mode value at an event inside the mode's quadrant, reached through the
/// event's null coordinate.
pub fn mode_at_event(spec: &ModeSpec, event: SpacetimeEvent) -> Result<Complex64> {
    let lambda = spacetime::local_null(spec.quadrant, event.t + event.z, spec.a, NullBranch::VLike)?;
    Ok(mode_g(spec, lambda))
}

/// Mode value as a function of the quadrant's chart coordinates.
pub fn mode_on_chart(spec: &ModeSpec, u_time: f64, u_space: f64) -> Result<Complex64> {
    let qc = QuadrantCoord::new(spec.quadrant, u_time, u_space, spec.a)?;
    mode_at_event(spec, spacetime::from_quadrant(qc))
}

/// Second-order finite-difference residual of (∂²_time − ∂²_space) applied to
/// the mode in its own chart, with stencil spacing `h`.
pub fn wave_equation_residual(spec: &ModeSpec, u_time: f64, u_space: f64, h: f64) -> Result<f64> {
    let phi = |x: f64, y: f64| mode_on_chart(spec, x, y);
    let centre = phi(u_time, u_space)?;
    let d_time = (phi(u_time + h, u_space)? - 2.0 * centre + phi(u_time - h, u_space)?) / (h * h);
    let d_space = (phi(u_time, u_space + h)? - 2.0 * centre + phi(u_time, u_space - h)?) / (h * h);
    Ok((d_time - d_space).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GVariant {
    /// G_ω: g^F on V > 0, e^{−πω/a}g^{P*} on V < 0.
    G,
    /// Ḡ_ω: g^P on V < 0, e^{−πω/a}g^{F*} on V > 0.
    GBar,
}

pub fn mode_big_g(omega: f64, a: f64, v: f64, variant: GVariant) -> Result<Complex64> {
    let f = ModeSpec::new(Quadrant::F, omega, a)?;
    let p = ModeSpec::new(Quadrant::P, omega, a)?;
    let q = f.boltzmann_root();
    let value = match variant {
        GVariant::G if v > 0.0 => mode_g_of_v(&f, v),
        GVariant::G if v < 0.0 => q * mode_g_of_v(&p, v).conj(),
        GVariant::GBar if v < 0.0 => mode_g_of_v(&p, v),
        GVariant::GBar if v > 0.0 => q * mode_g_of_v(&f, v).conj(),
        _ => Complex64::new(0.0, 0.0),
    };
    Ok(value)
}

/// Samples of a function of V on a uniform grid of cells covering
/// [−half_width, half_width]. Sample j belongs to the cell centred at
/// −half_width + (j + ½)·step.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub half_width: f64,
    pub step: f64,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Value at each cell centre.
    Point,
    /// Mean over each cell. Box averaging is a convolution and keeps the
    /// spectral support, while removing the unresolvable log-phase
    /// oscillations next to V = 0.
    CellAverage,
}

impl SampledFunction {
    fn grid(half_width: f64, cells: usize) -> Result<f64> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Config(format!("sampling half-width must be positive, got {half_width}")));
        }
        if cells < 2 || !cells.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "sampling needs an even number (≥ 2) of cells, got {cells}"
            )));
        }
        Ok(2.0 * half_width / cells as f64)
    }

    pub fn centre(&self, j: usize) -> f64 {
        -self.half_width + (j as f64 + 0.5) * self.step
    }

    pub fn sample<F>(f: F, half_width: f64, cells: usize, sampling: Sampling) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let step = Self::grid(half_width, cells)?;
        let cfg = QuadConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-10,
            max_panels: 4096,
        };
        let values = (0..cells)
            .map(|j| {
                let lo = -half_width + j as f64 * step;
                match sampling {
                    Sampling::Point => Ok(f(lo + 0.5 * step)),
                    Sampling::CellAverage => {
                        let r = quad::integrate(&f, lo, lo + step, &cfg)?;
                        Ok(r.value / step)
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampledFunction {
            half_width,
            step,
            values,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    /// exp(−V²/2σ²).
    Gaussian { sigma: f64 },
    /// (1 + iV/σ)^{−m}: holomorphic and decaying in the lower half V-plane,
    /// so multiplying by it never creates negative frequencies.
    Analytic { sigma: f64, order: u32 },
}

impl Window {
    pub fn validate(&self) -> Result<()> {
        let (sigma, ok_order) = match *self {
            Window::Gaussian { sigma } => (sigma, true),
            Window::Analytic { sigma, order } => (sigma, order >= 2),
        };
        if !(sigma > 0.0 && sigma.is_finite()) || !ok_order {
            return Err(Error::Config(format!("invalid window {self:?}")));
        }
        Ok(())
    }

    pub fn at(&self, v: f64) -> Complex64 {
        match *self {
            Window::Gaussian { sigma } => Complex64::new((-0.5 * (v / sigma).powi(2)).exp(), 0.0),
            Window::Analytic { sigma, order } => {
                Complex64::new(1.0, v / sigma).powi(-(order as i32))
            }
        }
    }

    pub fn scale(&self) -> f64 {
        match *self {
            Window::Gaussian { sigma } | Window::Analytic { sigma, .. } => sigma,
        }
    }
}

/// Grid and window for the numerical positive-frequency test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierConfig {
    pub window: Window,
    /// Samples extend over [−span·σ, span·σ].
    pub span: f64,
    /// Cell width in V; the regulator of the sampling.
    pub cell_width: f64,
    pub sampling: Sampling,
}

impl FourierConfig {
    pub fn half_width(&self) -> f64 {
        self.span * self.window.scale()
    }

    /// Even cell count covering the window at (at most) the requested width.
    pub fn cells(&self) -> Result<usize> {
        self.window.validate()?;
        if !(self.span > 0.0 && self.cell_width > 0.0) {
            return Err(Error::Config("span and cell width must be positive".into()));
        }
        let n = (2.0 * self.half_width() / self.cell_width).ceil();
        if !n.is_finite() || n > 1e8 {
            return Err(Error::Config(format!("grid of {n} cells is too large")));
        }
        let n = n as usize;
        Ok(n.max(2) + n % 2)
    }

    pub fn sample<F>(&self, f: F) -> Result<SampledFunction>
    where
        F: Fn(f64) -> Complex64,
    {
        SampledFunction::sample(f, self.half_width(), self.cells()?, self.sampling)
    }
}

/// Fraction of spectral energy carried by negative frequencies (terms e^{+ikV},
/// k > 0) after windowing, counting |k| ≤ `k_max`.
///
/// The zero and Nyquist bins are split evenly between the two signs.
pub fn negative_frequency_fraction(f: &SampledFunction, window: &Window, k_max: f64) -> Result<f64> {
    window.validate()?;
    let n = f.values.len();
    if n < 2 || !(f.step > 0.0) {
        return Err(Error::Config("degenerate sampling grid".into()));
    }
    if !(k_max > 0.0) {
        return Err(Error::Config(format!("k_max must be positive, got {k_max}")));
    }

    let mut buf: Vec<Complex64> = f
        .values
        .iter()
        .enumerate()
        .map(|(j, &x)| x * window.at(f.centre(j)))
        .collect();
    // Forward FFT uses e^{−2πi jn/N}, so e^{−ikV} lands in bin −k·N·step/2π:
    // positive frequency in this module's convention shows up at negative bins.
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let dk = 2.0 * PI / (n as f64 * f.step);
    let (mut positive, mut negative) = (0.0, 0.0);
    for (j, x) in buf.iter().enumerate() {
        let signed = if j <= n / 2 { j as i64 } else { j as i64 - n as i64 };
        if (signed.unsigned_abs() as f64) * dk > k_max {
            continue;
        }
        let e = x.norm_sqr();
        if signed == 0 || (n.is_multiple_of(2) && j == n / 2) {
            positive += 0.5 * e;
            negative += 0.5 * e;
        } else if signed < 0 {
            positive += e;
        } else {
            negative += e;
        }
    }
    let total = positive + negative;
    if total == 0.0 {
        return Err(Error::Config("sampled function has no spectral energy".into()));
    }
    Ok(negative / total)
}

/// One level of a window refinement ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityLevel {
    pub sigma: f64,
    pub cell_width: f64,
    pub fraction: f64,
}

/// Window refinements used by default: analytic windows of order 4 with
/// σ ∈ {4, 8, 16, 32}/a, sampled by cell averages of width 0.05/a over ±8σ.
pub fn default_refinements(a: f64) -> Vec<FourierConfig> {
    [4.0, 8.0, 16.0, 32.0]
        .iter()
        .map(|&s| FourierConfig {
            window: Window::Analytic { sigma: s / a, order: 4 },
            span: 8.0,
            cell_width: 0.05 / a,
            sampling: Sampling::CellAverage,
        })
        .collect()
}

/// Negative-frequency fraction of G_ω (or Ḡ_ω) on each refinement.
pub fn g_mode_positivity(
    omega: f64,
    a: f64,
    variant: GVariant,
    refinements: &[FourierConfig],
) -> Result<Vec<PositivityLevel>> {
    ModeSpec::new(Quadrant::F, omega, a)?;
    refinements
        .iter()
        .map(|cfg| {
            let sampled = cfg.sample(|v| mode_big_g(omega, a, v, variant).unwrap_or_default())?;
            Ok(PositivityLevel {
                sigma: cfg.window.scale(),
                cell_width: cfg.cell_width,
                fraction: negative_frequency_fraction(&sampled, &cfg.window, f64::INFINITY)?,
            })
        })
        .collect()
}
