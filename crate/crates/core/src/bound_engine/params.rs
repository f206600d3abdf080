//! Parameter bundles for the M(x), f_y, Q_k(x) and m(x) bounds.

use std::f64::consts::{E, PI};

use serde::Serialize;

use super::coeffs::{a_coeffs, check_t0, delta, lambda_of, ACoeffs};
use super::omega::{exp_flushed, omega1, omega2};
use crate::error::{ensure, Result};

/// log(3e/2).
pub fn ln_three_e_half() -> f64 {
    1.5f64.ln() + 1.0
}

/// log x₀ for the smallest admissible cutoff x₀ = 4 exp(2e²).
pub fn min_log_x0() -> f64 {
    4f64.ln() + 2.0 * E * E
}

fn check_sigma0(sigma0: f64) -> Result<()> {
    ensure(0.5 < sigma0 && sigma0 < 1.0, || format!("sigma0 must satisfy 1/2 < sigma0 < 1, got {sigma0}"))
}

fn check_log_x0(log_x0: f64) -> Result<()> {
    ensure(log_x0 >= min_log_x0() * (1.0 - 1e-15) && log_x0.is_finite(), || {
        format!("x0 must satisfy x0 ≥ 4exp(2e²) (log x0 ≥ {:.6}), got log x0 = {log_x0}", min_log_x0())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MertensParams {
    pub omega01: f64,
    pub alpha: f64,
    pub n1: f64,
}

/// ω₀,₁, α = σ₀ + ω₀,₁/2 and 𝓝₁(σ₀, t₀, x₀).
pub fn mertens_params(sigma0: f64, t0: f64, log_x0: f64) -> Result<MertensParams> {
    check_sigma0(sigma0)?;
    check_t0(t0)?;
    check_log_x0(log_x0)?;
    let u = (ln_three_e_half() + 0.5 * log_x0).ln();
    let omega01 = omega1(sigma0, t0, u)?;
    let lx = log_x0;
    let inv_x0_gap = exp_flushed(-(sigma0 - 0.5) * lx); // x₀^{−(σ₀−½)}
    let ee2 = (E * E).exp();
    let n1 = (1.5 * E).powf(omega01) / PI * (0.5 + 1.0 / lx + (1.1 - sigma0) * inv_x0_gap / lx)
        + exp_flushed(-0.5 * omega01 * lx) * (8.0 * ee2 / (PI * sigma0 * (sigma0 - 0.5) * lx) + 23.6 * inv_x0_gap);
    Ok(MertensParams { omega01, alpha: sigma0 + 0.5 * omega01, n1 })
}

/// Validated parameters feeding the M(x), f_y and m(x) bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundContext {
    pub t0: f64,
    pub sigma0: f64,
    pub log_x0: f64,
    /// log log(3e√x₀/2)
    pub u: f64,
    pub lambda: f64,
    pub delta: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub r1: f64,
    pub omega01: f64,
    pub alpha: f64,
    pub n1: f64,
}

impl BoundContext {
    pub fn new(sigma0: f64, t0: f64, log_x0: f64) -> Result<Self> {
        let p = mertens_params(sigma0, t0, log_x0)?;
        let ACoeffs { a1, a2, a3, a4 } = a_coeffs(t0)?;
        Ok(Self {
            t0,
            sigma0,
            log_x0,
            u: (ln_three_e_half() + 0.5 * log_x0).ln(),
            lambda: lambda_of(t0)?,
            delta: delta(t0)?,
            a1,
            a2,
            a3,
            a4,
            r1: super::coeffs::r1(t0)?,
            omega01: p.omega01,
            alpha: p.alpha,
            n1: p.n1,
        })
    }

    /// log of the bound 𝓝₁ x^α log x on |M(x)|.
    pub fn log_mertens_bound(&self, log_x: f64) -> Result<f64> {
        ensure(log_x >= self.log_x0, || {
            format!("x must satisfy x ≥ x0 (log x0 = {}), got log x = {log_x}", self.log_x0)
        })?;
        Ok(self.n1.ln() + self.alpha * log_x + log_x.ln())
    }
}

/// Φ(σ, α, x₀) = 1 + σ/(σ−α) · (1 + 1/((σ−α) log x₀)).
pub fn phi_factor(sigma: f64, alpha: f64, log_x0: f64) -> Result<f64> {
    ensure(sigma > alpha, || format!("Phi needs sigma > alpha, got sigma = {sigma}, alpha = {alpha}"))?;
    let gap = sigma - alpha;
    Ok(1.0 + sigma / gap * (1.0 + 1.0 / (gap * log_x0)))
}

/// log of 𝓝₁ Φ(σ, α, x₀) y^{α−σ} log y, the bound on |f_y(σ + it)|.
pub fn fy_bound(sigma: f64, ctx: &BoundContext, log_y: f64) -> Result<f64> {
    ensure(ctx.alpha < 1.0, || format!("f_y bound needs alpha < 1, got alpha = {}", ctx.alpha))?;
    ensure(log_y >= ctx.log_x0, || format!("f_y bound needs y ≥ x0, got log y = {log_y} < log x0 = {}", ctx.log_x0))?;
    let phi = phi_factor(sigma, ctx.alpha, ctx.log_x0)?;
    Ok(ctx.n1.ln() + phi.ln() + (ctx.alpha - sigma) * log_y + log_y.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KFreeParams {
    pub omega01: f64,
    pub alpha: f64,
    pub n1: f64,
    pub omega02: f64,
    pub phi: f64,
    pub n2: f64,
    /// (½ + α)/(k+1) + ω₀,₂
    pub exponent: f64,
}

/// Constants of the |Q_k(x) − x/ζ(k)| bound for x ≥ x₀^{k+1}.
pub fn kfree_params(sigma0: f64, t1: f64, t2: f64, log_x0: f64, k: u32) -> Result<KFreeParams> {
    ensure(k >= 2, || format!("k must satisfy k ≥ 2, got k = {k}"))?;
    check_t0(t2)?;
    let m = mertens_params(sigma0, t1, log_x0)?;
    ensure(m.alpha < 1.0, || format!("k-free bound needs alpha < 1, got alpha = {}", m.alpha))?;
    let lx = log_x0;
    let u2 = (ln_three_e_half() + lx).ln();
    let omega02 = omega2(t2, u2)?;
    let kp1 = (k + 1) as f64;
    let phi = phi_factor(0.5 * k as f64, m.alpha, lx)?;
    let ee2 = (E * E).exp();
    let n2 = m.n1 * phi / (PI * kp1)
        * (1.5 * E).powf(omega02)
        * (1.0 + 1.0 / lx + 0.57 * exp_flushed(-0.5 * lx) / (lx * lx))
        + exp_flushed(-omega02 * lx) / lx
            * (m.n1 / kp1 * (56.0 * ee2 * phi / PI + 0.5 * exp_flushed(-lx / (2.0 * kp1)))
                + 27.7 * exp_flushed(-(m.alpha - 0.5) / kp1 * lx));
    Ok(KFreeParams {
        omega01: m.omega01,
        alpha: m.alpha,
        n1: m.n1,
        omega02,
        phi,
        n2,
        exponent: (0.5 + m.alpha) / kp1 + omega02,
    })
}

/// The two coefficients of the m(x) tail bound, A(1 + |s|/g) and A|s|/g², for g = σ − α.
pub fn m_tail_coefficients(n1: f64, gap: f64, abs_s: f64) -> Result<(f64, f64)> {
    ensure(gap > 0.0, || format!("m(x) tail needs sigma > alpha, got sigma − alpha = {gap}"))?;
    ensure(abs_s >= 0.0, || format!("|s| must be non-negative, got {abs_s}"))?;
    Ok((n1 * (1.0 + abs_s / gap), n1 * abs_s / (gap * gap)))
}

/// 𝓝₁(1 + |s|/(σ−α)) log x / x^{σ−α} + 𝓝₁|s| / ((σ−α)² x^{σ−α}).
pub fn m_tail_bound(sigma: f64, abs_s: f64, ctx: &BoundContext, log_x: f64) -> Result<f64> {
    ensure(sigma > 0.5, || format!("sigma must satisfy sigma > 1/2, got {sigma}"))?;
    ensure(log_x >= ctx.log_x0, || format!("x must satisfy x ≥ x0, got log x = {log_x}"))?;
    let gap = sigma - ctx.alpha;
    let (c1, c2) = m_tail_coefficients(ctx.n1, gap, abs_s)?;
    let decay = exp_flushed(-gap * log_x);
    Ok(c1 * log_x * decay + c2 * decay)
}
