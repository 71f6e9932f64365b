//! Quadrants of 1+1 Minkowski spacetime and their conformal charts.
//!
//! Each quadrant carries a chart in which the metric is conformally flat:
//!
//! | quadrant | chart (u_time, u_space) | map |
//! |---|---|---|
//! | F | (η, ζ) | t = a⁻¹e^{aη}cosh aζ, z = a⁻¹e^{aη}sinh aζ |
//! | P | (η̄, ζ̄) | t = −a⁻¹e^{aη̄}cosh aζ̄, z = −a⁻¹e^{aη̄}sinh aζ̄ |
//! | R | (τ, ε) | t = a⁻¹e^{aε}sinh aτ, z = a⁻¹e^{aε}cosh aτ |
//! | L | (τ̄, ε̄) | t = −a⁻¹e^{aε̄}sinh aτ̄, z = −a⁻¹e^{aε̄}cosh aτ̄ |
//!
//! The local null pairs are ν = η+ζ, μ = η−ζ in F; ν̄ = −η̄−ζ̄, μ̄ = −η̄+ζ̄ in P;
//! χ = τ+ε, κ = τ−ε in R; χ̄ = −τ̄−ε̄, κ̄ = −τ̄+ε̄ in L. They relate to the global
//! null coordinates V = t+z and U = t−z through single exponentials
//! (see [`null_map`]).
//!
//! Inverse maps go through (V, U): the chart's time and space coordinates are
//! half-sums and half-differences of ln|aV| and ln|aU|.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeEvent {
    pub t: f64,
    pub z: f64,
}

impl SpacetimeEvent {
    pub fn new(t: f64, z: f64) -> Result<Self> {
        if !(t.is_finite() && z.is_finite()) {
            return Err(Error::Domain(format!("event ({t}, {z}) is not finite")));
        }
        Ok(SpacetimeEvent { t, z })
    }

    pub fn null(&self) -> NullCoord {
        NullCoord {
            v: self.t + self.z,
            u: self.t - self.z,
        }
    }

    pub fn norm(&self) -> f64 {
        self.t.hypot(self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    F,
    P,
    R,
    L,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::F, Quadrant::P, Quadrant::R, Quadrant::L];

    /// Sign of V inside the quadrant.
    pub fn v_sign(self) -> f64 {
        match self {
            Quadrant::F | Quadrant::R => 1.0,
            Quadrant::P | Quadrant::L => -1.0,
        }
    }

    /// Sign of U inside the quadrant.
    pub fn u_sign(self) -> f64 {
        match self {
            Quadrant::F | Quadrant::L => 1.0,
            Quadrant::P | Quadrant::R => -1.0,
        }
    }

    /// The quadrant sharing this one's V half-line (F↔R, P↔L).
    pub fn v_partner(self) -> Quadrant {
        match self {
            Quadrant::F => Quadrant::R,
            Quadrant::R => Quadrant::F,
            Quadrant::P => Quadrant::L,
            Quadrant::L => Quadrant::P,
        }
    }

    pub fn from_null_signs(v: f64, u: f64) -> Option<Quadrant> {
        match (v > 0.0, v < 0.0, u > 0.0, u < 0.0) {
            (true, _, true, _) => Some(Quadrant::F),
            (_, true, _, true) => Some(Quadrant::P),
            (true, _, _, true) => Some(Quadrant::R),
            (_, true, true, _) => Some(Quadrant::L),
            _ => None,
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quadrant::F => "F",
            Quadrant::P => "P",
            Quadrant::R => "R",
            Quadrant::L => "L",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Quadrant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F" | "f" => Ok(Quadrant::F),
            "P" | "p" => Ok(Quadrant::P),
            "R" | "r" => Ok(Quadrant::R),
            "L" | "l" => Ok(Quadrant::L),
            other => Err(Error::Parse(format!("unknown quadrant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Inside(Quadrant),
    /// |t| = |z|, including the origin.
    Boundary,
}

pub fn classify(event: SpacetimeEvent) -> Region {
    let (t, z) = (event.t, event.z);
    if t > z.abs() {
        Region::Inside(Quadrant::F)
    } else if t < -z.abs() {
        Region::Inside(Quadrant::P)
    } else if z > t.abs() {
        Region::Inside(Quadrant::R)
    } else if z < -t.abs() {
        Region::Inside(Quadrant::L)
    } else {
        Region::Boundary
    }
}

/// Conformal chart coordinates inside one quadrant.
///
/// `u_time` is η, η̄, τ or τ̄ and `u_space` is ζ, ζ̄, ε or ε̄ depending on the
/// quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrantCoord {
    pub quadrant: Quadrant,
    pub u_time: f64,
    pub u_space: f64,
    pub a: f64,
}

impl QuadrantCoord {
    pub fn new(quadrant: Quadrant, u_time: f64, u_space: f64, a: f64) -> Result<Self> {
        check_scale(a)?;
        Ok(QuadrantCoord {
            quadrant,
            u_time,
            u_space,
            a,
        })
    }

    /// The quadrant's local null pair: (ν, μ), (ν̄, μ̄), (χ, κ) or (χ̄, κ̄).
    pub fn local_null(&self) -> (f64, f64) {
        let (x, y) = (self.u_time, self.u_space);
        match self.quadrant {
            Quadrant::F | Quadrant::R => (x + y, x - y),
            Quadrant::P | Quadrant::L => (-x - y, -x + y),
        }
    }
}

/// Global light-cone coordinates V = t + z, U = t − z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullCoord {
    pub v: f64,
    pub u: f64,
}

impl NullCoord {
    pub fn event(&self) -> SpacetimeEvent {
        SpacetimeEvent {
            t: 0.5 * (self.v + self.u),
            z: 0.5 * (self.v - self.u),
        }
    }

    pub fn quadrant(&self) -> Option<Quadrant> {
        Quadrant::from_null_signs(self.v, self.u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NullBranch {
    /// The coordinate paired with V: ν, ν̄, χ or χ̄.
    VLike,
    /// The coordinate paired with U: μ, μ̄, κ or κ̄.
    ULike,
}

pub(crate) fn check_scale(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("scaling constant a must be positive, got {a}")))
    }
}

/// Chart coordinates of an event strictly inside a quadrant.
pub fn to_quadrant(event: SpacetimeEvent, a: f64) -> Result<QuadrantCoord> {
    check_scale(a)?;
    let quadrant = match classify(event) {
        Region::Inside(q) => q,
        Region::Boundary => {
            return Err(Error::LightCone {
                t: event.t,
                z: event.z,
            })
        }
    };
    let n = event.null();
    let lv = (a * n.v.abs()).ln() / a;
    let lu = (a * n.u.abs()).ln() / a;
    let (u_time, u_space) = match quadrant {
        // V = a⁻¹e^{a(η+ζ)}, U = a⁻¹e^{a(η−ζ)}
        Quadrant::F | Quadrant::P => (0.5 * (lv + lu), 0.5 * (lv - lu)),
        // R: V = a⁻¹e^{a(ε+τ)}, U = −a⁻¹e^{a(ε−τ)}; L mirrors with both signs flipped.
        Quadrant::R | Quadrant::L => (0.5 * (lv - lu), 0.5 * (lv + lu)),
    };
    Ok(QuadrantCoord {
        quadrant,
        u_time,
        u_space,
        a,
    })
}

pub fn from_quadrant(qc: QuadrantCoord) -> SpacetimeEvent {
    let a = qc.a;
    let (x, y) = (qc.u_time, qc.u_space);
    match qc.quadrant {
        Quadrant::F => {
            let r = (a * x).exp() / a;
            SpacetimeEvent {
                t: r * (a * y).cosh(),
                z: r * (a * y).sinh(),
            }
        }
        Quadrant::P => {
            let r = (a * x).exp() / a;
            SpacetimeEvent {
                t: -r * (a * y).cosh(),
                z: -r * (a * y).sinh(),
            }
        }
        Quadrant::R => {
            let r = (a * y).exp() / a;
            SpacetimeEvent {
                t: r * (a * x).sinh(),
                z: r * (a * x).cosh(),
            }
        }
        Quadrant::L => {
            let r = (a * y).exp() / a;
            SpacetimeEvent {
                t: -r * (a * x).sinh(),
                z: -r * (a * x).cosh(),
            }
        }
    }
}

/// Global null coordinate from a quadrant's local null coordinate.
///
/// | quadrant | V | U |
/// |---|---|---|
/// | F | a⁻¹e^{aν} | a⁻¹e^{aμ} |
/// | P | −a⁻¹e^{−aν̄} | −a⁻¹e^{−aμ̄} |
/// | R | a⁻¹e^{aχ} | −a⁻¹e^{−aκ} |
/// | L | −a⁻¹e^{−aχ̄} | a⁻¹e^{aκ̄} |
pub fn null_map(quadrant: Quadrant, local_null: f64, a: f64, branch: NullBranch) -> f64 {
    let (sign, rate) = null_exponent(quadrant, branch);
    sign * (rate * a * local_null).exp() / a
}

/// Inverse of [`null_map`]: local null coordinate from the global one.
///
/// Returns a domain error when `global` has the wrong sign for the quadrant.
pub fn local_null(quadrant: Quadrant, global: f64, a: f64, branch: NullBranch) -> Result<f64> {
    check_scale(a)?;
    let (sign, rate) = null_exponent(quadrant, branch);
    if !(sign * global > 0.0) {
        return Err(Error::Domain(format!(
            "null coordinate {global} is outside quadrant {quadrant}"
        )));
    }
    Ok(local_null_unchecked(global.abs(), a, rate))
}

#[inline]
pub(crate) fn local_null_unchecked(abs_global: f64, a: f64, rate: f64) -> f64 {
    (a * abs_global).ln() / (rate * a)
}

/// (sign of the global coordinate, ±1 in the exponent) per quadrant and branch.
pub(crate) fn null_exponent(quadrant: Quadrant, branch: NullBranch) -> (f64, f64) {
    match (quadrant, branch) {
        (Quadrant::F, _) => (1.0, 1.0),
        (Quadrant::P, _) => (-1.0, -1.0),
        (Quadrant::R, NullBranch::VLike) => (1.0, 1.0),
        (Quadrant::R, NullBranch::ULike) => (-1.0, -1.0),
        (Quadrant::L, NullBranch::VLike) => (-1.0, -1.0),
        (Quadrant::L, NullBranch::ULike) => (1.0, 1.0),
    }
}

/// Relative distance between two events, |e₁ − e₂| / max(|e₁|, |e₂|).
pub fn relative_distance(e1: SpacetimeEvent, e2: SpacetimeEvent) -> f64 {
    let d = (e1.t - e2.t).hypot(e1.z - e2.z);
    let scale = e1.norm().max(e2.norm());
    if scale == 0.0 {
        d
    } else {
        d / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(t: f64, z: f64) -> SpacetimeEvent {
        SpacetimeEvent::new(t, z).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(ev(1.0, 0.0)), Region::Inside(Quadrant::F));
        assert_eq!(classify(ev(0.5, 1.0)), Region::Inside(Quadrant::R));
        assert_eq!(classify(ev(1.0, 1.0)), Region::Boundary);
        assert_eq!(classify(ev(0.0, 0.0)), Region::Boundary);
        assert_eq!(classify(ev(-2.0, 1.0)), Region::Inside(Quadrant::P));
        assert_eq!(classify(ev(0.3, -1.0)), Region::Inside(Quadrant::L));
        assert_eq!(classify(ev(-1.0, 1.0)), Region::Boundary);
    }

    #[test]
    fn non_finite_events_are_rejected() {
        assert!(SpacetimeEvent::new(f64::NAN, 0.0).is_err());
        assert!(SpacetimeEvent::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn to_quadrant_examples() {
        let f = to_quadrant(ev(1.0, 0.0), 1.0).unwrap();
        assert_eq!((f.quadrant, f.u_time, f.u_space), (Quadrant::F, 0.0, 0.0));
        let r = to_quadrant(ev(0.0, 1.0), 1.0).unwrap();
        assert_eq!((r.quadrant, r.u_time, r.u_space), (Quadrant::R, 0.0, 0.0));
        let p = to_quadrant(ev(-1.0, 0.0), 1.0).unwrap();
        assert_eq!((p.quadrant, p.u_time, p.u_space), (Quadrant::P, 0.0, 0.0));
    }

    #[test]
    fn boundary_is_an_error_for_charts() {
        let err = to_quadrant(ev(2.0, -2.0), 1.0).unwrap_err();
        assert!(matches!(err, Error::LightCone { .. }));
        assert!(err.to_string().contains("light cone"));
        assert!(to_quadrant(ev(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn from_quadrant_examples() {
        let e = from_quadrant(QuadrantCoord::new(Quadrant::F, 0.0, 0.0, 1.0).unwrap());
        assert_eq!((e.t, e.z), (1.0, 0.0));
        let e = from_quadrant(QuadrantCoord::new(Quadrant::L, 0.0, 0.0, 1.0).unwrap());
        assert_eq!((e.t, e.z), (0.0, -1.0));
        let e = from_quadrant(QuadrantCoord::new(Quadrant::F, 2f64.ln(), 0.0, 1.0).unwrap());
        assert!((e.t - 2.0).abs() < 1e-15 && e.z == 0.0);
    }

    #[test]
    fn null_map_examples() {
        assert_eq!(null_map(Quadrant::F, 0.0, 1.0, NullBranch::VLike), 1.0);
        assert_eq!(null_map(Quadrant::P, 0.0, 1.0, NullBranch::VLike), -1.0);
        let v = null_map(Quadrant::R, 3f64.ln(), 1.0, NullBranch::VLike);
        assert!((v - 3.0).abs() < 1e-15);
    }

    #[test]
    fn local_null_rejects_wrong_sign() {
        assert!(local_null(Quadrant::F, -1.0, 1.0, NullBranch::VLike).is_err());
        assert!(local_null(Quadrant::R, 1.0, 1.0, NullBranch::ULike).is_err());
        assert!(local_null(Quadrant::L, 1.0, 1.0, NullBranch::ULike).is_ok());
    }

    #[test]
    fn chart_null_pair_matches_null_map() {
        let a = 0.7;
        for (q, t, z) in [
            (Quadrant::F, 2.0, 0.5),
            (Quadrant::P, -1.5, 0.3),
            (Quadrant::R, -0.4, 3.0),
            (Quadrant::L, 0.2, -0.9),
        ] {
            let e = ev(t, z);
            let qc = to_quadrant(e, a).unwrap();
            assert_eq!(qc.quadrant, q);
            let (lv, lu) = qc.local_null();
            let v = null_map(q, lv, a, NullBranch::VLike);
            let u = null_map(q, lu, a, NullBranch::ULike);
            assert!(((v - (t + z)) / (t + z)).abs() < 1e-13, "{q} V");
            assert!(((u - (t - z)) / (t - z)).abs() < 1e-13, "{q} U");
        }
    }
}
