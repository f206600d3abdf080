//! The decay functions ω, ω₁, ω₂ and the explicit bounds for log|ζ(s)|.

use std::f64::consts::{E, LN_2, PI};

use super::coeffs::{a124, a_coeffs, check_t0, lambda_of};
use super::phi::{phi_of_log_t, PhiCap, PhiKind};
use crate::error::{ensure, Result};

/// Constant bound on a₃(t₀) over the admissible t₀ range.
pub const A3_CAP: f64 = 15.83;

/// Below this exponent e^x underflows binary64.
const UNDERFLOW_EXPONENT: f64 = -745.0;

/// e^x, flushed to exactly zero once x is below the binary64 underflow threshold.
pub fn exp_flushed(x: f64) -> f64 {
    if x < UNDERFLOW_EXPONENT || x.is_nan() {
        0.0
    } else {
        x.exp()
    }
}

fn check_u(u: f64) -> Result<()> {
    ensure(u >= 1.0 && u.is_finite(), || format!("u must satisfy u ≥ 1, got u = {u}"))
}

fn check_sigma(sigma: f64) -> Result<()> {
    ensure(0.5 < sigma && sigma <= 1.5, || format!("sigma must satisfy 1/2 < sigma ≤ 3/2, got sigma = {sigma}"))
}

/// ω(t₀; u).
pub fn omega_small(t0: f64, u: f64) -> Result<f64> {
    check_u(u)?;
    let (a1, a2, a4) = a124(t0)?;
    let lambda = lambda_of(t0)?;
    Ok(omega_parts(a1, a2, a4, lambda, u))
}

fn omega_parts(a1: f64, a2: f64, a4: f64, lambda: f64, u: f64) -> f64 {
    let phi1 = PhiCap::of(PhiKind::S).eval_unchecked(u);
    let phi2 = PhiCap::of(PhiKind::S1).eval_unchecked(u);
    let e_neg_u = (-u).exp();
    let e_u = u.exp();
    // 1/(u e^{e^u}) · (3φ̂₁/(2u) + 3/(100 e^{u + e^u})), split so each piece is one exponential
    let double_exp = 1.5 * phi1 / u * exp_flushed(-e_u) + 0.03 * exp_flushed(-u - 2.0 * e_u);
    a1 * phi2 / (lambda * u)
        + a2 * u * e_neg_u / lambda
        + A3_CAP * e_neg_u
        + 12.0 * lambda / u * double_exp
        + a4 * phi2 * e_neg_u / (u * u)
}

/// ω₁(σ, t₀; u).
pub fn omega1(sigma: f64, t0: f64, u: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let w = omega_small(t0, u)?;
    let lambda = lambda_of(t0)?;
    let phi1 = PhiCap::of(PhiKind::S).eval_unchecked(u);
    let lead = phi1 / u + exp_flushed(-u - u.exp()) / 50.0;
    Ok(2.0 * lead * (2.0 * lambda / ((sigma - 0.5) * u)).ln_1p() + w)
}

/// ω₂(t₀; u).
pub fn omega2(t0: f64, u: f64) -> Result<f64> {
    let w = omega_small(t0, u)?;
    Ok(lambda_of(t0)? / (PI * u) + w)
}

/// Right-hand sides of the two main log ζ bounds at s = σ + it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaLogBounds {
    /// Bound on |log|ζ(s)||.
    pub abs_log: f64,
    /// Upper bound on log|ζ(s)|.
    pub log: f64,
    /// Ω(t₀, λ; t).
    pub omega_big: f64,
}

/// Bounds on |log|ζ(σ+it)|| and log|ζ(σ+it)|.
pub fn zeta_log_bounds(sigma: f64, t: f64, t0: f64, lambda: f64) -> Result<ZetaLogBounds> {
    ensure(t.is_finite() && t > 0.0, || format!("t must be finite and positive, got t = {t}"))?;
    ensure(t >= t0, || format!("t must satisfy t ≥ t0, got t = {t} < t0 = {t0}"))?;
    zeta_log_bounds_log_t(sigma, t.ln(), t0, lambda)
}

/// As [`zeta_log_bounds`], taking log t so that astronomically large heights are usable.
pub fn zeta_log_bounds_log_t(sigma: f64, log_t: f64, t0: f64, lambda: f64) -> Result<ZetaLogBounds> {
    check_sigma(sigma)?;
    check_t0(t0)?;
    let t_min_log = LN_2 + E * E;
    ensure(log_t >= t_min_log, || format!("t must satisfy t ≥ 2e^(e²) ≈ 3236.39, got log t = {log_t}"))?;
    ensure(log_t >= t0.ln(), || format!("t must satisfy t ≥ t0 = {t0}"))?;
    let lambda_max = lambda_of(t0)?;
    ensure(0.0 < lambda && lambda <= lambda_max, || {
        format!("lambda must satisfy 0 < lambda ≤ (t0/2) log log(3t0/2) = {lambda_max}, got {lambda}")
    })?;

    let c = a_coeffs(t0)?;
    let l = log_t + 1.5f64.ln(); // log(3t/2)
    let ll = l.ln();
    let log_half = log_t - LN_2; // log(t/2)
    let inv_t = exp_flushed(-log_t);
    let phi1_3 = phi_of_log_t(PhiKind::S, l)?;
    let phi2_3 = phi_of_log_t(PhiKind::S1, l)?;
    let phi1_half = phi_of_log_t(PhiKind::S, log_half)?;

    let omega_big = c.a1 * phi2_3 * l / (lambda * ll)
        + c.a2 * ll / lambda
        + c.a3
        + 12.0 * (phi1_half * log_half * inv_t / log_half.ln() + inv_t * inv_t / 75.0) * lambda / ll
        + c.a4 * phi2_3 / (ll * ll);
    let abs_log = 2.0 * (phi1_3 * l / ll + inv_t / 75.0) * (2.0 * lambda / ((sigma - 0.5) * ll)).ln_1p() + omega_big;
    let log = lambda * l / (PI * ll) + omega_big;
    Ok(ZetaLogBounds { abs_log, log, omega_big })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound_engine::two_gamma1;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn domain_errors_name_the_constraint() {
        let t0 = two_gamma1();
        match omega1(0.5, t0, 10.0) {
            Err(crate::Error::Domain(msg)) => assert!(msg.contains("1/2 < sigma")),
            other => panic!("{other:?}"),
        }
        assert!(omega_small(t0, 0.9).is_err());
        assert!(omega2(27.0, 10.0).is_err());
        assert!(zeta_log_bounds(0.7, 1000.0, t0, 10.0).is_err());
        assert!(zeta_log_bounds(0.7, 1e5, t0, 19.0).is_err());
    }

    #[test]
    fn omega_at_ten_meets_stated_constants() {
        let t0 = two_gamma1();
        assert!(10.0 * omega_small(t0, 10.0).unwrap() <= 2.51);
        assert!(10.0 * omega2(t0, 10.0).unwrap() <= 8.45);
        let u_omega: Vec<f64> =
            (0..=20).map(|i| 10.0 + 0.5 * i as f64).map(|u| u * omega_small(t0, u).unwrap()).collect();
        assert!(u_omega.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn omega1_decreases_in_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let t0 = rng.gen_range(two_gamma1()..50.0);
            let u = rng.gen_range(1.0..100.0);
            assert!(omega1(1.5, t0, u).unwrap() < omega1(0.51, t0, u).unwrap());
        }
    }

    #[test]
    fn tiny_doubly_exponential_terms_flush_to_zero() {
        assert_eq!(exp_flushed(-800.0), 0.0);
        assert_eq!(exp_flushed(f64::NEG_INFINITY), 0.0);
        assert!((exp_flushed(-1.0) - (-1.0f64).exp()).abs() == 0.0);
        // at u = 800, e^u overflows; the result must still be finite
        assert!(omega1(0.6, 40.0, 800.0).unwrap().is_finite());
    }

    #[test]
    fn boundary_height_evaluates() {
        let t0 = two_gamma1();
        let t = 2.0 * (E * E).exp();
        let b = zeta_log_bounds(0.75, t, t0, lambda_of(t0).unwrap()).unwrap();
        assert!(b.abs_log.is_finite() && b.abs_log > 0.0);
        assert!(b.log.is_finite() && b.log > 0.0);
    }

    /// ω₂·L − log-bound and ω₁·L − abs-log-bound both equal
    /// (15.83 − a₃) + (12λ/u)[φ₁(3t/2)L/(tu) − φ₁(t/2)log(t/2)/(t log log(t/2))]
    /// at λ = λ(t₀), u = log log(3t/2), L = log(3t/2).
    #[test]
    fn corollary_and_theorem_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let t0 = rng.gen_range(two_gamma1()..50.0);
            let sigma = rng.gen_range(0.501..1.5);
            let t = 10f64.powf(rng.gen_range(3.52..12.0));
            let lambda = lambda_of(t0).unwrap();
            let b = zeta_log_bounds(sigma, t, t0, lambda).unwrap();
            let l = (1.5 * t).ln();
            let u = l.ln();
            let a3 = a_coeffs(t0).unwrap().a3;
            let phi1_3 = 0.96; // below 10^2465 both φ₁ values sit on the plateau
            let gap = (A3_CAP - a3)
                + 12.0 * lambda / u * (phi1_3 * l / (t * u) - 0.96 * (t / 2.0).ln() / (t * (t / 2.0).ln().ln()));
            let via_omega2 = omega2(t0, u).unwrap() * l;
            let via_omega1 = omega1(sigma, t0, u).unwrap() * l;
            assert!(((via_omega2 - b.log) - gap).abs() <= 1e-10 * via_omega2, "t = {t}");
            assert!(((via_omega1 - b.abs_log) - gap).abs() <= 1e-10 * via_omega1, "t = {t}");
        }
    }

    #[test]
    fn concrete_log_bound_at_u_ten() {
        // Height with log log(3T/2) = 10, where the concrete 8.45 constant applies.
        let t0 = two_gamma1();
        let log_3t2 = 10f64.exp();
        let log_t = log_3t2 - 1.5f64.ln();
        let b = zeta_log_bounds_log_t(0.75, log_t, t0, lambda_of(t0).unwrap()).unwrap();
        let log_2t = log_t + LN_2;
        assert!(b.log <= 8.45 * log_2t / log_2t.ln());
    }
}
