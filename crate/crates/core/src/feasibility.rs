//! SI-unit arithmetic for the temperature scale of a scaled-gap detector.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact SI defining constants (2019 redefinition, CODATA 2018).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// J·s
    pub hbar: f64,
    /// J/K
    pub k_b: f64,
    /// m/s
    pub c: f64,
}

pub const PLANCK_H: f64 = 6.626_070_15e-34;

pub const SI: PhysicalConstants = PhysicalConstants {
    hbar: PLANCK_H / (2.0 * PI),
    k_b: 1.380_649e-23,
    c: 299_792_458.0,
};

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// T = ħa/(2πk_B) for a scaling constant a in rad/s.
pub fn temperature_from_a(a: f64) -> Result<f64> {
    positive("a", a)?;
    Ok(SI.hbar * a / (2.0 * PI * SI.k_b))
}

/// The scaling constant a (rad/s) giving temperature T.
pub fn a_for_temperature(t: f64) -> Result<f64> {
    positive("temperature", t)?;
    Ok(2.0 * PI * SI.k_b * t / SI.hbar)
}

/// Proper acceleration with Unruh temperature T: 2πck_BT/ħ.
pub fn unruh_acceleration_for(t: f64) -> Result<f64> {
    positive("temperature", t)?;
    Ok(2.0 * PI * SI.c * SI.k_b * t / SI.hbar)
}

/// Ē(t) = E/(a·t) for a gap E measured in conformal-time frequency.
pub fn scaled_gap(energy: f64, a: f64, t: f64) -> Result<f64> {
    positive("a", a)?;
    positive("t", t)?;
    if !energy.is_finite() {
        return Err(Error::Domain("energy gap must be finite".into()));
    }
    Ok(energy / (a * t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingScenario {
    /// rad/s
    pub a: f64,
    /// s
    pub t1: f64,
    /// s
    pub t2: f64,
    /// Hz
    pub e_bar_1: f64,
}

impl ScalingScenario {
    pub fn validate(&self) -> Result<()> {
        positive("a", self.a)?;
        positive("t1", self.t1)?;
        positive("t2", self.t2)?;
        positive("e_bar_1", self.e_bar_1)?;
        if self.t1 >= self.t2 {
            return Err(Error::Domain(format!(
                "t1 = {} must precede t2 = {}",
                self.t1, self.t2
            )));
        }
        Ok(())
    }

    /// Ē₂ = Ē₁t₁/t₂, keeping tĒ fixed.
    pub fn e_bar_2(&self) -> f64 {
        self.e_bar_1 * self.t1 / self.t2
    }

    /// Conformal times η = a⁻¹ ln(a t) at t₁ and t₂.
    pub fn conformal_times(&self) -> (f64, f64) {
        (
            (self.a * self.t1).ln() / self.a,
            (self.a * self.t2).ln() / self.a,
        )
    }
}

/// (t₂/t₁)/e^{1/(t₁Ē₁)}; thermalization needs this well above 1.
pub fn thermalization_margin(s: &ScalingScenario) -> Result<f64> {
    s.validate()?;
    Ok((s.t2 / s.t1) / (1.0 / (s.t1 * s.e_bar_1)).exp())
}

/// The growth factor t₂/t₁ at which the margin equals 1.
pub fn thermalization_threshold(t1_e_bar_1: f64) -> Result<f64> {
    positive("t1·Ē1", t1_e_bar_1)?;
    Ok((1.0 / t1_e_bar_1).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub temperature_k: f64,
    /// a in rad/s for the target temperature.
    pub a_angular: f64,
    /// a/2π in Hz, the ordinary-frequency reading of the same value.
    pub a_ordinary_hz: f64,
    pub unruh_acceleration: f64,
    pub threshold_at_unit_product: f64,
    pub scenario: Option<ScenarioReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: ScalingScenario,
    pub temperature_k: f64,
    pub e_bar_2: f64,
    pub eta_1: f64,
    pub eta_2: f64,
    pub threshold: f64,
    pub margin: f64,
}

pub fn report(temperature: f64, scenario: Option<&ScalingScenario>) -> Result<FeasibilityReport> {
    let a_angular = a_for_temperature(temperature)?;
    let scenario = scenario
        .map(|s| -> Result<ScenarioReport> {
            s.validate()?;
            let (eta_1, eta_2) = s.conformal_times();
            Ok(ScenarioReport {
                scenario: *s,
                temperature_k: temperature_from_a(s.a)?,
                e_bar_2: s.e_bar_2(),
                eta_1,
                eta_2,
                threshold: thermalization_threshold(s.t1 * s.e_bar_1)?,
                margin: thermalization_margin(s)?,
            })
        })
        .transpose()?;
    Ok(FeasibilityReport {
        temperature_k: temperature,
        a_angular,
        a_ordinary_hz: a_angular / (2.0 * PI),
        unruh_acceleration: unruh_acceleration_for(temperature)?,
        threshold_at_unit_product: E,
        scenario,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_kelvin_scale() {
        let a = a_for_temperature(1.0).unwrap();
        assert!((a - 8.2269e11).abs() < 1e8, "{a}");
        assert!((1e11..1e12).contains(&a));
        assert!((temperature_from_a(a).unwrap() - 1.0).abs() < 1e-12);
        let direct = 2.0 * PI * SI.k_b / SI.hbar;
        assert!((temperature_from_a(direct).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(temperature_from_a(2.0 * a).unwrap(), 2.0 * temperature_from_a(a).unwrap());
    }

    #[test]
    fn unruh_values() {
        let g = unruh_acceleration_for(1.0).unwrap();
        assert!((g / 2.466e20 - 1.0).abs() < 1e-3, "{g}");
        assert!((unruh_acceleration_for(0.5).unwrap() - 0.5 * g).abs() < 1e-6 * g);
        let a = 3.7e11;
        let ratio = unruh_acceleration_for(temperature_from_a(a).unwrap()).unwrap() / a;
        assert!((ratio / SI.c - 1.0).abs() < 1e-14);
    }

    #[test]
    fn thresholds() {
        assert_eq!(thermalization_threshold(1.0).unwrap(), E);
        let s = ScalingScenario { a: 1.0, t1: 1.0, t2: 10.0, e_bar_1: 1.0 };
        assert!((thermalization_margin(&s).unwrap() - 10.0 / E).abs() < 1e-15);
        assert!((thermalization_threshold(1e9).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn scaled_gap_product() {
        assert_eq!(scaled_gap(1.0, 1.0, 1.0).unwrap(), 1.0);
        let (e, a) = (2.5, 3.0e11);
        let g1 = scaled_gap(e, a, 1e-9).unwrap();
        let g2 = scaled_gap(e, a, 2e-9).unwrap();
        assert!((g1 - 2.0 * g2).abs() < 1e-12 * g1);
        assert!((1e-9 * g1 - 2e-9 * g2).abs() < 1e-15 * e / a);
        let s = ScalingScenario { a, t1: 1e-9, t2: 4e-9, e_bar_1: g1 };
        assert!((s.t2 * s.e_bar_2() - s.t1 * s.e_bar_1).abs() < 1e-15 * s.t1 * s.e_bar_1);
    }

    #[test]
    fn invalid_scenarios() {
        let s = ScalingScenario { a: 1.0, t1: 2.0, t2: 1.0, e_bar_1: 1.0 };
        assert!(thermalization_margin(&s).is_err());
        assert!(temperature_from_a(0.0).is_err());
        assert!(unruh_acceleration_for(-1.0).is_err());
        assert!(scaled_gap(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn report_lists_both_conventions() {
        let r = report(1.0, None).unwrap();
        assert!((r.a_angular / r.a_ordinary_hz - 2.0 * PI).abs() < 1e-12);
        assert!((1.2e11..1.4e11).contains(&r.a_ordinary_hz));
    }
}
