//! Closed-form evaluation of the explicit RH-conditional bounds.

mod coeffs;
mod omega;
mod params;
mod phi;

use std::sync::OnceLock;

pub use coeffs::{a_coeffs, delta, lambda_of, r1, r1_integral, ACoeffs, T0_MAX};
pub use omega::{
    exp_flushed, omega1, omega2, omega_small, zeta_log_bounds, zeta_log_bounds_log_t, ZetaLogBounds, A3_CAP,
};
pub use params::{
    fy_bound, kfree_params, ln_three_e_half, m_tail_bound, m_tail_coefficients, mertens_params, min_log_x0, phi_factor,
    BoundContext, KFreeParams, MertensParams,
};
pub use phi::{m_fn, phi_hat, phi_of_log_t, phi_of_t, PhiCap, PhiKind};

use crate::error::{Error, Result};
use crate::zeta_numerics::ZeroTable;

/// Ordinate of the first nontrivial zero of ζ.
pub const GAMMA_1: f64 = 14.134_725_141_734_694;

pub fn two_gamma1() -> f64 {
    2.0 * GAMMA_1
}

/// log|ξ(½)|, computed once on first use.
pub fn log_abs_xi_half() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| crate::zeta_numerics::log_abs_xi_half().expect("ζ(1/2) and Γ(1/4) are evaluable"))
}

/// Confirms that a zero table agrees with [`GAMMA_1`].
pub fn check_gamma1(zeros: &ZeroTable) -> Result<()> {
    let g = zeros.gamma(1);
    if (g - GAMMA_1).abs() > 5e-12 {
        return Err(Error::Validation {
            index: 0,
            message: format!("first ordinate {g} disagrees with γ₁ = {GAMMA_1}"),
        });
    }
    Ok(())
}
