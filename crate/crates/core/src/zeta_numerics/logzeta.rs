//! log|ζ(s)| as an integral of the zero-counting remainder Q(u).

use num_complex::Complex64;
use serde::Serialize;

use super::zeros::{riemann_von_mangoldt_main, ZeroTable};
use super::zeta::zeta;
use crate::bound_engine::{r1, GAMMA_1};
use crate::error::{ensure, Result};
use crate::quad::gauss_kronrod;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogZetaCheck {
    pub re_s: f64,
    pub im_s: f64,
    pub t0: f64,
    pub u_max: f64,
    /// log|ζ(s)|
    pub lhs: f64,
    /// Re{2w² ∫_{γ₁}^{u_max} Q(u)/(u(u² + w²)) du}, w = s − ½
    pub rhs: f64,
    pub tail_cap: f64,
    pub r1: f64,
    pub holds: bool,
}

/// ∫ du/(u(u² + w²)) = (log u − ½ log(u² + w²))/w². For Re w > 0 and Im w > 0 the
/// argument u² + w² stays in the upper half-plane, so the principal log is continuous.
fn antiderivative(u: f64, w2: Complex64) -> Complex64 {
    (Complex64::new(u.ln(), 0.0) - 0.5 * (w2 + u * u).ln()) / w2
}

/// Evaluates both sides of the log ζ integral representation at s, truncating
/// the integral at `u_max` and bounding the discarded tail.
///
/// The containment |lhs − rhs| ≤ 𝓡₁(t₀) + tail_cap is reported in `holds`.
pub fn logzeta_via_zero_counts(s: Complex64, zeros: &ZeroTable, u_max: f64, t0: f64) -> Result<LogZetaCheck> {
    let (sigma, t) = (s.re, s.im);
    ensure(0.5 < sigma && sigma <= 1.5, || format!("Re s must satisfy ½ < Re s ≤ 3/2, got {sigma}"))?;
    ensure(t0 > GAMMA_1, || format!("t0 must satisfy t0 > γ₁ ≈ 14.134725, got {t0}"))?;
    ensure(t0 <= t && t <= u_max / 2.0, || {
        format!("Im s must satisfy t0 ≤ Im s ≤ u_max/2, got Im s = {t}, t0 = {t0}, u_max = {u_max}")
    })?;
    ensure(u_max <= zeros.last(), || {
        format!("u_max must not exceed the last tabulated ordinate {}, got {u_max}", zeros.last())
    })?;

    let lhs = zeta(s, 1e-12)?.norm().ln();

    let w = s - 0.5;
    let w2 = w * w;
    // Σ over zero gaps of N(u)·∫ du/(u(u² + w²)); N is constant between ordinates.
    let mut step_part = Complex64::new(0.0, 0.0);
    let gammas = zeros.ordinates();
    let mut n = 0usize;
    while n < gammas.len() && gammas[n] < u_max {
        let a = gammas[n];
        let b = gammas.get(n + 1).copied().unwrap_or(u_max).min(u_max);
        n += 1;
        step_part += (n as f64) * (antiderivative(b, w2) - antiderivative(a, w2));
    }
    // Smooth part (u/2π) log(u/2πe) + 7/8; the integrand peaks at u ≈ t with width ≈ σ − ½.
    let smooth =
        |u: f64| -> Complex64 { (riemann_von_mangoldt_main(u) + 0.875) / (Complex64::new(u * u, 0.0) + w2) / u };
    let half_width = (sigma - 0.5).max(1e-3);
    let mut cuts = vec![GAMMA_1];
    for c in [t - 10.0 * half_width, t, t + 10.0 * half_width] {
        if c > GAMMA_1 && c < u_max {
            cuts.push(c);
        }
    }
    cuts.push(u_max);
    let mut smooth_part = Complex64::new(0.0, 0.0);
    for pair in cuts.windows(2) {
        smooth_part += gauss_kronrod(smooth, pair[0], pair[1], 1e-13, 20_000)?.value;
    }
    let rhs = (2.0 * w2 * (step_part - smooth_part)).re;

    // |Q(u)| ≤ 0.96 log u/log log u + 1/(150u). For u ≥ U, |u² + w²| ≥ u²(1 − |w|²/U²)
    // and log u/log log u ≤ log u, with ∫_U^∞ log u/u³ du = (2 log U + 1)/(4U²) and ∫_U^∞ u⁻⁴ du = 1/(3U³).
    let big_u = u_max;
    let kappa = 1.0 - w.norm_sqr() / (big_u * big_u);
    ensure(kappa > 0.0 && big_u.ln().ln() >= 1.0, || "u_max too small for the tail estimate".into())?;
    let tail_integral = 0.96 * (2.0 * big_u.ln() + 1.0) / (4.0 * big_u * big_u) + 1.0 / (150.0 * 3.0 * big_u.powi(3));
    let tail_cap = 2.0 * w.norm_sqr() / kappa * tail_integral;

    let r1_value = r1(t0)?;
    Ok(LogZetaCheck {
        re_s: sigma,
        im_s: t,
        t0,
        u_max,
        lhs,
        rhs,
        tail_cap,
        r1: r1_value,
        holds: (lhs - rhs).abs() <= r1_value + tail_cap,
    })
}

impl LogZetaCheck {
    pub const CSV_HEADER: &'static str = "re_s,im_s,t0,u_max,lhs,rhs,tail_cap,r1,holds";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.17e},{:.17e},{:.17e},{:.17e},{}",
            self.re_s, self.im_s, self.t0, self.u_max, self.lhs, self.rhs, self.tail_cap, self.r1, self.holds
        )
    }
}
