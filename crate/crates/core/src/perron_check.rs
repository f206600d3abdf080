//! Truncated Perron error bounds and a numerical check of the Mertens case.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure, Result};
use crate::quad::adaptive_simpson;
use crate::sieve_lab::mertens_checkpoints;
use crate::zeta_numerics::zeta;

/// 2g(σ)x^σ/T + 4e^σ(eψ(ex)x log T/T + ψ(ex)).
pub fn perron_error(g_sigma: f64, psi_ex: f64, x: f64, t: f64, sigma: f64) -> Result<f64> {
    ensure(x >= 1.0, || format!("x must satisfy x ≥ 1, got {x}"))?;
    ensure(t >= 1.0, || format!("T must satisfy T ≥ 1, got {t}"))?;
    ensure(sigma > 0.0, || format!("sigma must be positive, got {sigma}"))?;
    ensure(g_sigma >= 0.0 && psi_ex > 0.0, || "g(σ) must be non-negative and ψ positive".into())?;
    Ok(2.0 * g_sigma * x.powf(sigma) / t + 4.0 * sigma.exp() * (E * psi_ex * x * t.ln() / t + psi_ex))
}

/// ζ(σ) ≤ σ/(σ − 1) for σ > 1.
pub fn zeta_real_cap(sigma: f64) -> Result<f64> {
    ensure(sigma > 1.0, || format!("sigma must exceed 1, got {sigma}"))?;
    Ok(sigma / (sigma - 1.0))
}

/// The general bound specialised to a_n = μ(n): ψ ≡ 1, σ = 1 + 1/log x, T = e√x.
pub fn perron_error_mertens(x: f64) -> Result<f64> {
    ensure(x >= E * E, || format!("x must satisfy x ≥ e², got {x}"))?;
    let sigma = 1.0 + 1.0 / x.ln();
    perron_error(zeta_real_cap(sigma)?, 1.0, x, E * x.sqrt(), sigma)
}

/// The general bound for ζ(s)f_y(ks): ψ ≡ y, σ = 1 + 1/log x, T = ex.
pub fn perron_error_kfree(x: f64, y: f64) -> Result<f64> {
    ensure(x >= E * E, || format!("x must satisfy x ≥ e², got {x}"))?;
    ensure(y >= 1.0, || format!("y must satisfy y ≥ 1, got {y}"))?;
    let sigma = 1.0 + 1.0 / x.ln();
    perron_error(y * zeta_real_cap(sigma)?, y, x, E * x, sigma)
}

/// 22.2 √x log(ex).
pub fn mertens_cap(x: f64) -> f64 {
    22.2 * x.sqrt() * (E * x).ln()
}

/// 26 y log(ex).
pub fn kfree_cap(x: f64, y: f64) -> f64 {
    26.0 * y * (E * x).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerronReport {
    pub x: f64,
    pub sigma: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub integral_value: f64,
    pub sieve_value: i64,
    pub residual: f64,
    /// 22.2 √x log(ex) plus the quadrature budget.
    pub bound: f64,
}

impl PerronReport {
    pub const CSV_HEADER: &'static str = "x,sigma,T,integral_value,sieve_value,residual,bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.17e},{:.17e},{:.17e},{},{:.17e},{:.17e}",
            self.x, self.sigma, self.t, self.integral_value, self.sieve_value, self.residual, self.bound
        )
    }
}

/// (1/2πi)∫ x^z/(zζ(z)) dz over Re z = 1 + 1/log x, |Im z| ≤ e√x, compared with M(⌊x⌋).
pub fn numeric_perron_mertens(x: f64, quad_tol: f64) -> Result<PerronReport> {
    ensure((E * E..=1e4).contains(&x), || format!("x must satisfy e² ≤ x ≤ 10⁴, got {x}"))?;
    ensure((x - x.round()).abs() >= 0.1, || format!("x must be at distance ≥ 0.1 from an integer, got {x}"))?;
    ensure(quad_tol > 0.0, || "quadrature tolerance must be positive".into())?;
    let log_x = x.ln();
    let c = 1.0 + 1.0 / log_x;
    let t_max = E * x.sqrt();

    // By conjugate symmetry the integral is (1/π)∫₀^T Re{x^{c+it}/((c+it)ζ(c+it))} dt.
    let max_width = PI / (2.0 * log_x);
    let mut panels: Vec<(f64, f64)> = Vec::new();
    let mut cuts: Vec<f64> = [0.0, 10.0, 50.0].into_iter().filter(|&v| v < t_max).collect();
    cuts.push(t_max);
    for w in cuts.windows(2) {
        let n = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / n as f64;
        panels.extend((0..n).map(|i| (w[0] + i as f64 * h, if i + 1 == n { w[1] } else { w[0] + (i + 1) as f64 * h })));
    }
    let per_panel = quad_tol / panels.len() as f64;
    let zeta_tol = (per_panel * 1e-3).max(1e-15);

    let mut first_err = None;
    let mut integrand = |t: f64| -> f64 {
        let z = Complex64::new(c, t);
        match zeta(z, zeta_tol) {
            Ok(zv) => {
                let xz = Complex64::from_polar(x.powf(c), t * log_x);
                (xz / (z * zv)).re
            }
            Err(e) => {
                first_err.get_or_insert(e);
                0.0
            }
        }
    };
    let mut total = 0.0;
    for &(a, b) in &panels {
        total += adaptive_simpson(&mut integrand, a, b, per_panel * PI, 40)?;
    }
    if let Some(e) = first_err {
        return Err(e);
    }
    let integral_value = total / PI;
    let n = x.floor() as u64;
    let sieve_value = mertens_checkpoints(n, &[n], &[])?[0].mertens;
    Ok(PerronReport {
        x,
        sigma: c,
        t: t_max,
        integral_value,
        sieve_value,
        residual: (sieve_value as f64 - integral_value).abs(),
        bound: mertens_cap(x) + quad_tol,
    })
}
