//! Richardson extrapolation of a regulator ladder h, h/r, h/r², … to h → 0.
//!
//! Each column of the Neville table removes one more power of h, assuming an
//! expansion F(h) = F(0) + c₁h + c₂h² + … .

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be combined in a Richardson table.
pub trait Extrapolate: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(self) -> f64;
}

impl Extrapolate for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Extrapolate for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolated<T> {
    pub value: T,
    /// |T_{n,n} − T_{n,n−1}|: the change made by the last elimination.
    pub error: f64,
    /// Successive diagonal corrections |T_{k,k} − T_{k−1,k−1}|.
    pub corrections: Vec<f64>,
}

/// Extrapolate `values[j] = F(h₀ / ratio^j)` to h → 0.
///
/// Fails when fewer than three levels are supplied or when the diagonal
/// corrections grow from one level to the next.
pub fn extrapolate<T: Extrapolate>(values: &[T], ratio: f64) -> Result<Extrapolated<T>> {
    if values.len() < 3 {
        return Err(Error::Config(format!(
            "extrapolation needs at least 3 regulator levels, got {}",
            values.len()
        )));
    }
    if !(ratio > 1.0) {
        return Err(Error::Config(format!(
            "regulator ladder ratio must exceed 1, got {ratio}"
        )));
    }

    let n = values.len();
    let mut table: Vec<Vec<T>> = Vec::with_capacity(n);
    for (j, &v) in values.iter().enumerate() {
        let mut row = Vec::with_capacity(j + 1);
        row.push(v);
        for m in 1..=j {
            let factor = ratio.powi(m as i32) - 1.0;
            let prev = &table[j - 1];
            let t = row[m - 1] + (row[m - 1] - prev[m - 1]) * (1.0 / factor);
            row.push(t);
        }
        table.push(row);
    }

    let diagonal: Vec<T> = (0..n).map(|j| table[j][j]).collect();
    let corrections: Vec<f64> = diagonal
        .windows(2)
        .map(|w| (w[1] - w[0]).magnitude())
        .collect();

    let scale = diagonal
        .iter()
        .map(|v| v.magnitude())
        .fold(0.0_f64, f64::max);
    let floor = 64.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    for w in corrections.windows(2) {
        if w[1] > w[0] && w[1] > floor {
            return Err(Error::Convergence { corrections });
        }
    }

    let last = &table[n - 1];
    let error = (last[n - 1] - last[n - 2]).magnitude();
    Ok(Extrapolated {
        value: last[n - 1],
        error,
        corrections,
    })
}

/// Check that `regulators` form a decreasing geometric progression and
/// return its ratio.
pub fn ladder_ratio(regulators: &[f64]) -> Result<f64> {
    if regulators.len() < 3 {
        return Err(Error::Config(format!(
            "regulator ladder needs at least 3 levels, got {}",
            regulators.len()
        )));
    }
    if regulators.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
        return Err(Error::Config("regulators must be positive and finite".into()));
    }
    let ratio = regulators[0] / regulators[1];
    if !(ratio > 1.0) {
        return Err(Error::Config("regulator ladder must decrease".into()));
    }
    for w in regulators.windows(2) {
        let r = w[0] / w[1];
        if ((r - ratio) / ratio).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "regulator ladder is not geometric: ratios {ratio} and {r}"
            )));
        }
    }
    Ok(ratio)
}
