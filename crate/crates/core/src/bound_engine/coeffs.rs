//! δ, λ, 𝓡₁ and the remainder coefficients a₁…a₄ as functions of t₀.

use std::f64::consts::{E, PI};

use super::{log_abs_xi_half, two_gamma1, GAMMA_1};
use crate::error::{ensure, Result};
use crate::quad::gauss_kronrod;

pub const T0_MAX: f64 = 50.0;

const R1_SPLIT: f64 = 1e-3;
const R1_QUAD_TOL: f64 = 1e-10;

/// δ(t₀) = (1 + 1/t₀)².
pub fn delta(t0: f64) -> Result<f64> {
    ensure(t0 > 0.0, || format!("delta needs t0 > 0, got t0 = {t0}"))?;
    Ok((1.0 + 1.0 / t0).powi(2))
}

/// λ(t₀) = (t₀/2) log log(3t₀/2).
pub fn lambda_of(t0: f64) -> Result<f64> {
    ensure(t0 >= two_gamma1(), || format!("lambda needs t0 ≥ 2γ₁ ≈ 28.26945, got t0 = {t0}"))?;
    Ok(0.5 * t0 * (1.5 * t0).ln().ln())
}

pub(crate) fn check_t0(t0: f64) -> Result<()> {
    ensure(two_gamma1() <= t0 && t0 <= T0_MAX, || {
        format!("t0 must satisfy 2γ₁ ≤ t0 ≤ 50 (2γ₁ ≈ 28.26945), got t0 = {t0}")
    })
}

/// ∫₀^{γ₁} log(2πe/u) / (1 − (u/t₀)²) du, with the piece on [0, 10⁻³] replaced by
/// its closed-form upper cap.
pub fn r1_integral(t0: f64) -> Result<f64> {
    ensure(t0 > GAMMA_1, || format!("r1 needs t0 > γ₁ ≈ 14.134725, got t0 = {t0}"))?;
    let two_pi_e = 2.0 * PI * E;
    let eps = R1_SPLIT;
    let cap = eps * (1.0 + (two_pi_e / eps).ln()) / (1.0 - (eps / t0).powi(2));
    let body = gauss_kronrod(|u: f64| (two_pi_e / u).ln() / (1.0 - (u / t0).powi(2)), eps, GAMMA_1, R1_QUAD_TOL, 2000)?;
    Ok(cap + body.value)
}

/// 𝓡₁(t₀), the bound on the remainder in the log ζ integral representation.
pub fn r1(t0: f64) -> Result<f64> {
    let d = delta(t0)?;
    let integral = r1_integral(t0)?;
    let g2 = GAMMA_1 * GAMMA_1;
    Ok(log_abs_xi_half().abs()
        + 0.25 * (2.0 * E / PI).ln()
        + d / PI * integral
        + 0.875 * (1.0 / g2 - 1.0 / (t0 * t0)).ln().abs()
        + (7.0 + 2.0 * t0) / 4.0 * (2.0 * t0 / (2.0 * t0 - 1.0)).ln()
        + 1.0 / (6.0 * t0)
        + 4.0 / (45.0 * t0.powi(3)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ACoeffs {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

/// a₁ … a₄ for 2γ₁ ≤ t₀ ≤ 50.
pub fn a_coeffs(t0: f64) -> Result<ACoeffs> {
    let (a1, a2, a4) = a124(t0)?;
    let d = delta(t0)?;
    let a3 = 3.0 * (1.0 + t0).powi(2) / (GAMMA_1 * (t0 * t0 - GAMMA_1 * GAMMA_1)) + 0.81 * d * (3.0 + d) + r1(t0)?;
    Ok(ACoeffs { a1, a2, a3, a4 })
}

/// a₁, a₂, a₄ only; skips the quadrature inside a₃. Used on optimizer hot paths.
pub(crate) fn a124(t0: f64) -> Result<(f64, f64, f64)> {
    check_t0(t0)?;
    let d = delta(t0)?;
    let ee2 = E.powi(2).exp();
    let a1 = d * (117.0 / 4.0 + 3.0 * d + (3.0 + d) * (t0 / ee2 + (3.0 + E) / E));
    let a2 = d / 75.0 * (t0 / two_gamma1() + 1.0 + 1.0 / E);
    let a4 = 4.0 * d / (5.0 * E) * (3.0 + d / 4.0);
    Ok((a1, a2, a4))
}
