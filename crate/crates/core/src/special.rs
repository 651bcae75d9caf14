//! Gamma-type functions in f64 and thin wrappers over tanh-sinh quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) for complex z away from the poles. The imaginary part is only
/// correct modulo 2π, which is all exp() needs.
pub fn ln_gamma_c(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_c(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_c(Complex64::new(x, 0.0)).re
}

/// Γ(x) for real x, sign included.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        return f64::NAN;
    }
    let mag = ln_gamma(x).exp();
    if x > 0.0 {
        return mag;
    }
    // sign of Γ on (−k−1, −k) is (−1)^{k+1}
    let k = (-x).floor() as i64;
    if k % 2 == 0 {
        -mag
    } else {
        mag
    }
}

/// ψ(x) = Γ'(x)/Γ(x) for real x > 0.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    acc + x.ln() - 0.5 / x
        - x2 * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 252.0 - x2 * (1.0 / 240.0 - x2 / 132.0))))
}

/// ∫_a^b f by double-exponential quadrature.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let out = quadrature::integrate(f, a, b, tol);
    if !out.integral.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integral on [{a}, {b}]")));
    }
    if out.error_estimate > tol.max(1e-15) * 1e3 {
        return Err(Error::Quadrature(format!(
            "error estimate {:.3e} above tolerance {:.1e} on [{a}, {b}]",
            out.error_estimate, tol
        )));
    }
    Ok(out.integral)
}

/// ∫_0^∞ f via t = x/(1−x).
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    integrate(
        |x| {
            if x >= 1.0 {
                return 0.0;
            }
            let t = x / (1.0 - x);
            let v = f(t) / ((1.0 - x) * (1.0 - x));
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        tol,
    )
}
