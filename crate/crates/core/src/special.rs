//! Complex Gamma function (Lanczos approximation, g = 7, nine terms).

use std::f64::consts::PI;

use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) on the principal branch for Re z ≥ 1/2.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Γ(z) for complex z away from the non-positive integers.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        PI / (s * ln_gamma_right(1.0 - z).exp())
    } else {
        ln_gamma_right(z).exp()
    }
}

/// |Γ(1 + iy)|² = πy / sinh(πy), a closed form used as a consistency check.
pub fn gamma_one_plus_i_norm_sqr(y: f64) -> f64 {
    if y == 0.0 {
        1.0
    } else {
        PI * y / (PI * y).sinh()
    }
}

/// Principal-branch power b^z with a complex base.
pub fn cpow(base: Complex64, exponent: Complex64) -> Complex64 {
    (exponent * base.ln()).exp()
}

/// Complex expm1(z) = e^z − 1 without cancellation for small |z|.
pub fn cexpm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let ex = x.exp();
    let half_sin = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half_sin * half_sin, ex * y.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_factorials() {
        let mut fact = 1.0;
        for n in 1..15 {
            let g = gamma(Complex64::new(n as f64, 0.0));
            assert!(((g.re - fact) / fact).abs() < 1e-13, "Γ({n})");
            assert!(g.im.abs() < 1e-13 * fact);
            fact *= n as f64;
        }
        let half = gamma(Complex64::new(0.5, 0.0));
        assert!((half.re - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn imaginary_axis_modulus() {
        for y in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let g = gamma(Complex64::new(1.0, y));
            let expect = gamma_one_plus_i_norm_sqr(y);
            assert!(((g.norm_sqr() - expect) / expect).abs() < 1e-13, "y={y}");
        }
    }

    #[test]
    fn recurrence_and_reflection() {
        let z = Complex64::new(-1.3, 0.7);
        let lhs = gamma(z + 1.0);
        let rhs = z * gamma(z);
        assert!((lhs - rhs).norm() < 1e-13 * lhs.norm());
        let conj = gamma(z.conj());
        assert!((conj - gamma(z).conj()).norm() < 1e-13 * conj.norm());
    }

    #[test]
    fn expm1_small_and_large() {
        let z = Complex64::new(1e-12, -3e-12);
        let e = cexpm1(z);
        assert!((e - z).norm() < 1e-23);
        let z = Complex64::new(0.7, 2.1);
        assert!((cexpm1(z) - (z.exp() - 1.0)).norm() < 1e-15);
    }
}
