//! Euler–Maclaurin evaluation of ζ(s) with an explicit remainder bound.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// Largest |Im s| accepted by [`zeta`].
pub const MAX_HEIGHT: f64 = 1.0e4;
const MIN_TERMS: usize = 50;
const MIN_CORRECTIONS: usize = 8;
const MAX_TERMS: usize = 1 << 17;

// B_{2k} / (2k)! for k = 1..=15.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.666_666_666_666_666_6e-1 / 2.0,
    -3.333_333_333_333_333e-2 / 24.0,
    2.380_952_380_952_381e-2 / 720.0,
    -3.333_333_333_333_333e-2 / 40_320.0,
    7.575_757_575_757_576e-2 / 3_628_800.0,
    -2.531_135_531_135_531e-1 / 479_001_600.0,
    1.166_666_666_666_666_7 / 87_178_291_200.0,
    -7.092_156_862_745_098 / 20_922_789_888_000.0,
    5.497_117_794_486_215e1 / 6_402_373_705_728_000.0,
    -5.291_242_424_242_424e2 / 2_432_902_008_176_640_000.0,
    6.192_123_188_405_797e3 / 1.124_000_727_777_607_7e21,
    -8.658_025_311_355_312e4 / 6.204_484_017_332_394e23,
    1.425_517_166_666_666_7e6 / 4.032_914_611_266_056e26,
    -2.729_823_106_781_609e7 / 3.048_883_446_117_138_4e29,
    6.015_808_739_006_424e8 / 2.652_528_598_121_910_3e32,
];

fn ln_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=20_000usize).map(|n| (n.max(1) as f64).ln()).collect())
}

#[inline]
fn ln_n(n: usize) -> f64 {
    let t = ln_table();
    if n < t.len() {
        t[n]
    } else {
        (n as f64).ln()
    }
}

/// n^{-s} for real n ≥ 1.
#[inline]
fn pow_neg(ln: f64, s: Complex64) -> Complex64 {
    let mag = (-s.re * ln).exp();
    let (sin, cos) = (s.im * ln).sin_cos();
    Complex64::new(mag * cos, -mag * sin)
}

/// ζ(s) with truncation error at most `target_abs_err`.
///
/// Uses N ≥ max(⌈|t|⌉, 50) direct terms and at least eight Bernoulli
/// corrections; the remainder after m corrections is bounded by
/// |s + 2m + 1| / (σ + 2m + 1) times the first omitted correction.
pub fn zeta(s: Complex64, target_abs_err: f64) -> Result<Complex64> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole);
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("zeta argument must be finite, got {s}")));
    }
    if s.im.abs() > MAX_HEIGHT {
        return Err(Error::Domain(format!("|Im s| = {} exceeds {MAX_HEIGHT}", s.im.abs())));
    }
    if !(target_abs_err > 0.0) {
        return Err(Error::Domain("target error must be positive".into()));
    }
    let mut n_terms = (s.im.abs().ceil() as usize).max(MIN_TERMS);
    // Large negative σ needs more corrections before they start shrinking.
    if s.re < 0.0 {
        n_terms = n_terms.max((4.0 * -s.re).ceil() as usize + MIN_TERMS);
    }
    loop {
        if let Some(v) = euler_maclaurin(s, n_terms, target_abs_err) {
            return Ok(v);
        }
        n_terms *= 2;
        if n_terms > MAX_TERMS {
            return Err(Error::Precision(format!(
                "could not bound the Euler–Maclaurin remainder below {target_abs_err:e} at s = {s}"
            )));
        }
    }
}

fn euler_maclaurin(s: Complex64, n: usize, target: f64) -> Option<Complex64> {
    let mut head = Complex64::new(0.0, 0.0);
    for k in 1..n {
        head += pow_neg(ln_n(k), s);
    }
    let nf = n as f64;
    let ln_big = ln_n(n);
    let n_pow = pow_neg(ln_big, s);
    let mut sum = head + n_pow * nf / (s - 1.0) + n_pow * 0.5;

    // term_k = B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let inv_n2 = 1.0 / (nf * nf);
    let mut rising = s * n_pow / nf;
    for (k, &coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * coeff;
        let m = k + 1;
        if m > MIN_CORRECTIONS {
            // `term` is the first correction we have not yet added.
            let sigma_shift = s.re + (2 * m - 1) as f64;
            if sigma_shift > 0.0 {
                let bound = term.norm() * (s + (2 * m - 1) as f64).norm() / sigma_shift;
                if bound <= target {
                    return Some(sum);
                }
            }
        }
        sum += term;
        let two_m = (2 * m) as f64;
        rising *= (s + (two_m - 1.0)) * (s + two_m) * inv_n2;
    }
    None
}

/// ξ(s) = ½ s (s − 1) π^{−s/2} Γ(s/2) ζ(s).
pub fn xi(s: Complex64) -> Result<Complex64> {
    let half = s * 0.5;
    if s.re == 1.0 && s.im == 0.0 {
        // ξ(1) = ½ by continuity
        return Ok(Complex64::new(0.5, 0.0));
    }
    let z = zeta(s, 1e-13)?;
    if s.re == 0.0 && s.im == 0.0 {
        return Ok(Complex64::new(0.5, 0.0));
    }
    let log_prefactor = (s * (s - 1.0) * 0.5).ln() - half * std::f64::consts::PI.ln() + ln_gamma(half)?;
    Ok(log_prefactor.exp() * z)
}

/// log |ξ(½)| = log(⅛) − ¼ log π + log Γ(¼) + log |ζ(½)|.
pub fn log_abs_xi_half() -> Result<f64> {
    let z = zeta(Complex64::new(0.5, 0.0), 1e-14)?;
    let lg = ln_gamma(Complex64::new(0.25, 0.0))?.re;
    Ok((0.125f64).ln() - 0.25 * std::f64::consts::PI.ln() + lg + z.norm().ln())
}

/// ζ'(s) by a symmetric difference in the real direction.
pub fn zeta_derivative(s: Complex64, step: f64) -> Result<Complex64> {
    let hi = zeta(s + step, 1e-12)?;
    let lo = zeta(s - step, 1e-12)?;
    Ok((hi - lo) / (2.0 * step))
}
