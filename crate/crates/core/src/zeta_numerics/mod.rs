//! ζ, ξ and Γ evaluation, zero-ordinate tables and boundary scans.

mod gamma;
mod logzeta;
mod scan;
mod zeros;
mod zeta;

pub use gamma::{gamma, ln_gamma};
pub use logzeta::{logzeta_via_zero_counts, LogZetaCheck};
pub use scan::{
    check_recip_reports, global_max, scan_csv, scan_recip_lemma, scan_recip_strips, scan_sup_lemma, strip_bounds,
    ScanFailure, ScanReport, Segment, SupLemmaScan, CAP_TOLERANCE, DEFAULT_REFINE_THRESHOLD, NEAR_ZERO_RADIUS,
    RECIP_ARGMAX_STRIPS, RECIP_S0_CAP, RECIP_STRIP_CAP, REFINE_FACTOR, S0_TOP, STRIP_COUNT, SUP_CRITICAL_CAP,
    SUP_REST_CAP, SUP_THREE_QUARTER_CAP,
};
pub use zeros::{q_cap, riemann_von_mangoldt_main, ZeroTable, MIN_FRACTIONAL_DIGITS, MIN_ORDINATES};
pub use zeta::{log_abs_xi_half, xi, zeta, zeta_derivative, MAX_HEIGHT};
