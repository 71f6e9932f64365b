//! The Minkowski vacuum restricted to one F–P mode pair.
//!
//! For a single conformal frequency ω the vacuum is the two-mode squeezed state
//!
//! ```text
//! |ψ⟩ = C Σₙ qⁿ |n⟩_F |n⟩_P,   q = e^{−πω/a},   C = √(1 − q²),
//! ```
//!
//! since (â†_F â†_P)ⁿ|0,0⟩ = n!|n,n⟩ cancels the 1/n! of the operator form.
//! Tracing out P leaves a geometric (Gibbs) distribution pₙ = (1−q²)q^{2n}
//! in the F number basis.
//!
//! States are truncated at n_trunc quanta per mode. Operator residuals are
//! evaluated in a space one quantum larger, which keeps the creation
//! operator's spill past the truncation edge.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest n_trunc with q^{2(n_trunc+1)} below `deficit`.
pub fn default_truncation(q: f64, deficit: f64) -> usize {
    if q <= 0.0 {
        return 1;
    }
    let n = (deficit.ln() / (2.0 * q.ln())).ceil() - 1.0;
    if !n.is_finite() {
        return 1;
    }
    (n as usize).max(1)
}

pub const DEFAULT_DEFICIT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoModeState {
    pub omega: f64,
    pub a: f64,
    /// e^{−πω/a}
    pub q: f64,
    /// √(1 − q²)
    pub normalization: f64,
    pub n_trunc: usize,
    /// cₙ, the amplitude of |n⟩_F|n⟩_P, for n = 0..=n_trunc.
    pub amplitudes: Vec<f64>,
    pub warning: Option<String>,
}

impl TwoModeState {
    /// Σ|cₙ|², which falls short of 1 by exactly q^{2(n_trunc+1)}.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c * c).sum()
    }

    pub fn truncation_deficit(&self) -> f64 {
        self.q.powi(2 * (self.n_trunc as i32 + 1))
    }

    /// Dense amplitude matrix ψ[n_F][n_P] on a space of `dim` levels per mode.
    fn matrix(&self, dim: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; dim]; dim];
        for (n, &c) in self.amplitudes.iter().enumerate() {
            m[n][n] = c;
        }
        m
    }
}

pub fn build_state(omega: f64, a: f64, n_trunc: usize) -> Result<TwoModeState> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("mode frequency must be positive, got {omega}")));
    }
    crate::spacetime::check_scale(a)?;
    if n_trunc < 1 {
        return Err(Error::Domain("n_trunc must be at least 1".into()));
    }
    let q = (-PI * omega / a).exp();
    let normalization = (-(q * q)).ln_1p().mul_add(0.5, 0.0).exp();
    let mut amplitudes = Vec::with_capacity(n_trunc + 1);
    let mut c = normalization;
    for _ in 0..=n_trunc {
        amplitudes.push(c);
        c *= q;
    }
    let mut state = TwoModeState {
        omega,
        a,
        q,
        normalization,
        n_trunc,
        amplitudes,
        warning: None,
    };
    let deficit = state.truncation_deficit();
    if deficit > DEFAULT_DEFICIT {
        state.warning = Some(format!(
            "truncation at n = {n_trunc} leaves a normalization deficit of {deficit:.3e}; \
             n_trunc ≥ {} keeps it below {DEFAULT_DEFICIT:e}",
            default_truncation(q, DEFAULT_DEFICIT)
        ));
    }
    Ok(state)
}

/// Build with the truncation that keeps the deficit below [`DEFAULT_DEFICIT`].
pub fn build_state_default(omega: f64, a: f64) -> Result<TwoModeState> {
    crate::spacetime::check_scale(a)?;
    let q = (-PI * omega / a).exp();
    build_state(omega, a, default_truncation(q, DEFAULT_DEFICIT))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    pub omega: f64,
    pub a: f64,
    pub q: f64,
    /// pₙ for n = 0..=n_trunc.
    pub probabilities: Vec<f64>,
}

impl ThermalState {
    pub fn mean_occupation(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    pub fn entropy(&self) -> f64 {
        self.probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|p| -p * p.ln())
            .sum()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// Reduced density matrix of F, ρ_F = Tr_P |ψ⟩⟨ψ|, in the number basis.
pub fn reduced_density_matrix(state: &TwoModeState) -> Vec<Vec<f64>> {
    let dim = state.n_trunc + 1;
    let psi = state.matrix(dim);
    let mut rho = vec![vec![0.0; dim]; dim];
    for (m, row) in rho.iter_mut().enumerate() {
        for (mp, entry) in row.iter_mut().enumerate() {
            *entry = (0..dim).map(|n| psi[m][n] * psi[mp][n]).sum();
        }
    }
    rho
}

pub fn reduce_to_f(state: &TwoModeState) -> ThermalState {
    let rho = reduced_density_matrix(state);
    ThermalState {
        omega: state.omega,
        a: state.a,
        q: state.q,
        probabilities: (0..rho.len()).map(|n| rho[n][n]).collect(),
    }
}

/// Number of non-zero Schmidt coefficients, read off the reduced state.
pub fn schmidt_rank(state: &TwoModeState) -> usize {
    let rho = reduced_density_matrix(state);
    let diagonal = rho
        .iter()
        .enumerate()
        .all(|(m, row)| row.iter().enumerate().all(|(n, &x)| m == n || x == 0.0));
    assert!(diagonal, "two-mode vacuum must have a diagonal reduced state");
    rho.iter().enumerate().filter(|(n, row)| row[*n] > 0.0).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorCondition {
    /// (â_F − q â†_P)|ψ⟩ = 0
    LowerF,
    /// (â_P − q â†_F)|ψ⟩ = 0
    LowerP,
    /// (N̂_F − N̂_P)|ψ⟩ = 0
    NumberDifference,
}

type TwoModeVector = Vec<Vec<f64>>;

fn lower_f(psi: &TwoModeVector) -> TwoModeVector {
    let dim = psi.len();
    let mut out = vec![vec![0.0; dim]; dim];
    for m in 1..dim {
        for n in 0..dim {
            out[m - 1][n] += (m as f64).sqrt() * psi[m][n];
        }
    }
    out
}

fn raise_f(psi: &TwoModeVector) -> TwoModeVector {
    let dim = psi.len();
    let mut out = vec![vec![0.0; dim]; dim];
    for m in 0..dim - 1 {
        for n in 0..dim {
            out[m + 1][n] += ((m + 1) as f64).sqrt() * psi[m][n];
        }
    }
    out
}

fn swap_modes(psi: &TwoModeVector) -> TwoModeVector {
    let dim = psi.len();
    (0..dim)
        .map(|m| (0..dim).map(|n| psi[n][m]).collect())
        .collect()
}

fn number_f(psi: &TwoModeVector) -> TwoModeVector {
    psi.iter()
        .enumerate()
        .map(|(m, row)| row.iter().map(|x| m as f64 * x).collect())
        .collect()
}

fn norm(psi: &TwoModeVector) -> f64 {
    psi.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn axpy(x: &TwoModeVector, coeff: f64, y: &TwoModeVector) -> TwoModeVector {
    x.iter()
        .zip(y)
        .map(|(rx, ry)| rx.iter().zip(ry).map(|(a, b)| a + coeff * b).collect())
        .collect()
}

/// Norm of the operator condition applied to the state, with ladder
/// operators acting on n_trunc + 2 levels per mode.
pub fn annihilation_residual(state: &TwoModeState, which: OperatorCondition) -> f64 {
    let psi = state.matrix(state.n_trunc + 2);
    let q = state.q;
    match which {
        OperatorCondition::LowerF => {
            // â_P acts on the second index; swap, apply the F operator, swap back.
            let raised_p = swap_modes(&raise_f(&swap_modes(&psi)));
            norm(&axpy(&lower_f(&psi), -q, &raised_p))
        }
        OperatorCondition::LowerP => {
            let lowered_p = swap_modes(&lower_f(&swap_modes(&psi)));
            norm(&axpy(&lowered_p, -q, &raise_f(&psi)))
        }
        OperatorCondition::NumberDifference => {
            let number_p = swap_modes(&number_f(&swap_modes(&psi)));
            norm(&axpy(&number_f(&psi), -1.0, &number_p))
        }
    }
}

/// q^{n_trunc}·√(n_trunc+1), the bound on the edge term of the two ladder conditions.
pub fn edge_bound(state: &TwoModeState) -> f64 {
    state.q.powi(state.n_trunc as i32) * ((state.n_trunc + 1) as f64).sqrt()
}

/// Rounding allowance for the ladder residuals: the bulk terms cancel
/// analytically, but in floating point they leave a few ulps of the
/// amplitudes being cancelled.
pub fn residual_floor(state: &TwoModeState) -> f64 {
    let scale: f64 = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, c)| (n + 1) as f64 * c * c)
        .sum::<f64>()
        .sqrt();
    8.0 * f64::EPSILON * (1.0 + state.q) * scale
}

/// Bose–Einstein occupation 1/(e^{2πω/a} − 1).
pub fn mean_occupation(omega: f64, a: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("mode frequency must be positive, got {omega}")));
    }
    crate::spacetime::check_scale(a)?;
    Ok((2.0 * PI * omega / a).exp_m1().recip())
}

pub fn entanglement_entropy(state: &TwoModeState) -> f64 {
    reduce_to_f(state).entropy()
}

/// −ln(1−q²) − q² ln(q²)/(1−q²), the untruncated entropy.
pub fn entropy_closed_form(q: f64) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    let q2 = q * q;
    -(-q2).ln_1p() - q2 * q2.ln() / (1.0 - q2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VacuumSummary {
    pub omega: f64,
    pub a: f64,
    pub q: f64,
    pub normalization: f64,
    pub n_trunc: usize,
    pub mean_occupation: f64,
    pub mean_occupation_from_state: f64,
    pub entropy: f64,
    pub entropy_closed_form: f64,
    pub residual_lower_f: f64,
    pub residual_lower_p: f64,
    pub residual_number: f64,
    pub edge_bound: f64,
    pub residual_floor: f64,
    pub truncation_deficit: f64,
    pub warning: Option<String>,
}

pub fn summarize(state: &TwoModeState) -> Result<VacuumSummary> {
    let thermal = reduce_to_f(state);
    Ok(VacuumSummary {
        omega: state.omega,
        a: state.a,
        q: state.q,
        normalization: state.normalization,
        n_trunc: state.n_trunc,
        mean_occupation: mean_occupation(state.omega, state.a)?,
        mean_occupation_from_state: thermal.mean_occupation(),
        entropy: thermal.entropy(),
        entropy_closed_form: entropy_closed_form(state.q),
        residual_lower_f: annihilation_residual(state, OperatorCondition::LowerF),
        residual_lower_p: annihilation_residual(state, OperatorCondition::LowerP),
        residual_number: annihilation_residual(state, OperatorCondition::NumberDifference),
        edge_bound: edge_bound(state),
        residual_floor: residual_floor(state),
        truncation_deficit: state.truncation_deficit(),
        warning: state.warning.clone(),
    })
}
