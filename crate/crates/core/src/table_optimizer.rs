//! Re-runs the parameter search behind the M(x) and Q₂(x) constant tables.
//!
//! For fixed u₀ the exponent α₀(σ₀, t₀; u₀) = σ₀ + ½ω₁(σ₀, t₀; u₀) is minimised over
//! σ₀ ∈ {½ + n/2000} and t₀ ∈ [30, 50]; u₀ is then the smallest value on a fixed grid
//! for which the minimum drops below the target.

use std::f64::consts::LN_10;

use rayon::prelude::*;
use serde::Serialize;

use crate::bound_engine::{kfree_params, ln_three_e_half, mertens_params, omega1, omega2, two_gamma1};
use crate::error::{ensure, Error, Result};

pub const SIGMA_GRID_DENOM: u32 = 2000;
pub const SIGMA_GRID_MAX: u32 = 1000;
pub const T0_RANGE: (f64, f64) = (30.0, 50.0);
pub const T0_TOL: f64 = 1e-7;
pub const GOLDEN_MAX_ITER: usize = 200;
/// Golden-section brackets are centred on these starts and split [30, 50] between them.
pub const T0_STARTS: [f64; 3] = [31.0, 38.0, 47.0];
pub const U0_BISECTION_WIDTH: f64 = 5e-3;
/// Shift between u₀ and the u used for α₁ in the k-free search.
pub const KFREE_U_SHIFT: f64 = 0.6932;
pub const MIN_U0: f64 = 10.0;
/// Largest u₀ for which log x₀ ≈ eᵘ⁰ stays finite in binary64.
pub const MAX_U0: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Mertens,
    Kfree,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mertens" => Ok(Kind::Mertens),
            "kfree" => Ok(Kind::Kfree),
            _ => Err(Error::Domain(format!("kind must be mertens or kfree, got {s}"))),
        }
    }
}

/// σ₀ = ½ + n/2000.
pub fn sigma_grid(n: u32) -> f64 {
    (SIGMA_GRID_DENOM + 2 * n) as f64 / (2 * SIGMA_GRID_DENOM) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaMin {
    pub sigma0: f64,
    pub t0: f64,
    pub alpha0: f64,
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a).abs() <= T0_TOL {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)].into_iter().fold((x, fx), |best, p| if p.1 < best.1 { p } else { best })
}

fn t0_brackets() -> [(f64, f64); 3] {
    let [s0, s1, s2] = T0_STARTS;
    let m01 = 0.5 * (s0 + s1);
    let m12 = 0.5 * (s1 + s2);
    [(T0_RANGE.0, m01), (m01, m12), (m12, T0_RANGE.1)]
}

fn best_t0(sigma0: f64, u: f64) -> (f64, f64) {
    let f = |t: f64| sigma0 + 0.5 * omega1(sigma0, t, u).expect("t and sigma are in range");
    t0_brackets().into_iter().map(|(a, b)| golden_section(f, a, b)).fold((f64::NAN, f64::INFINITY), |best, p| {
        if p.1 < best.1 {
            p
        } else {
            best
        }
    })
}

/// Minimum of α₀ over σ₀ = ½ + n/2000 for n in `grid`, ties toward smaller σ₀.
pub fn min_alpha0_on(u0: f64, grid: std::ops::RangeInclusive<u32>) -> Result<AlphaMin> {
    ensure(u0 >= MIN_U0 - KFREE_U_SHIFT && u0.is_finite(), || format!("u0 must satisfy u0 ≥ 10, got {u0}"))?;
    ensure(*grid.start() >= 1 && *grid.end() <= SIGMA_GRID_MAX && !grid.is_empty(), || {
        format!("sigma grid indices must lie in 1..=1000, got {grid:?}")
    })?;
    let cands: Vec<AlphaMin> = grid
        .into_par_iter()
        .map(|n| {
            let sigma0 = sigma_grid(n);
            let (t0, alpha0) = best_t0(sigma0, u0);
            AlphaMin { sigma0, t0, alpha0 }
        })
        .collect();
    Ok(cands
        .into_iter()
        .fold(None, |best: Option<AlphaMin>, c| match best {
            Some(b) if b.alpha0 <= c.alpha0 => Some(b),
            _ => Some(c),
        })
        .expect("grid is non-empty"))
}

/// Minimum of α₀(σ₀, t₀; u₀) over the full σ₀ grid and t₀ ∈ [30, 50].
pub fn min_alpha0(u0: f64) -> Result<AlphaMin> {
    ensure(u0 >= MIN_U0, || format!("u0 must satisfy u0 ≥ 10, got {u0}"))?;
    min_alpha0_on(u0, 1..=SIGMA_GRID_MAX)
}

/// log x₀ as a function of u₀: u₀ = log log(3e√x₀/2) (Mertens) or log log(3e x₀/2) (k-free).
pub fn log_x0_from_u0(u0: f64, kind: Kind) -> Result<f64> {
    let c = ln_three_e_half();
    ensure(u0 > c.ln() && u0 <= MAX_U0, || format!("u0 must satisfy log log(3e/2) < u0 ≤ {MAX_U0}, got {u0}"))?;
    let base = u0.exp() - c;
    Ok(match kind {
        Kind::Mertens => 2.0 * base,
        Kind::Kfree => base,
    })
}

/// X (or Y) with log x₀ = 10^X log 10.
pub fn x_exponent_from_u0(u0: f64, kind: Kind) -> Result<f64> {
    Ok((log_x0_from_u0(u0, kind)? / LN_10).log10())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptRow {
    pub kind: Kind,
    pub target: f64,
    /// Reported u₀: the reference table's value when the target is listed there, else `u0_search`.
    pub u0: f64,
    /// Smallest grid u₀ found by the search.
    pub u0_search: f64,
    pub sigma0: f64,
    /// t₀ for the Mertens table, t₁ for the k-free table.
    pub t0: f64,
    /// α₁ of the k-free search; absent for Mertens rows.
    pub alpha1: Option<f64>,
    /// α₀ or β₀.
    pub attained: f64,
    /// 𝓝₁ or 𝓝₂.
    pub coeff: f64,
    /// X or Y.
    pub exponent10: f64,
}

/// The exponent the search drives below the target, with its minimiser.
fn attained_at(u0: f64, kind: Kind) -> Result<(AlphaMin, f64)> {
    match kind {
        Kind::Mertens => {
            let m = min_alpha0(u0)?;
            Ok((m, m.alpha0))
        }
        Kind::Kfree => {
            let m = min_alpha0_on(u0 - KFREE_U_SHIFT, 1..=SIGMA_GRID_MAX)?;
            Ok((m, beta0_from_alpha1(m.alpha0, u0)?))
        }
    }
}

/// β₀ = (½ + α₁)/3 + ω₂(2γ₁; u₀).
pub fn beta0_from_alpha1(alpha1: f64, u0: f64) -> Result<f64> {
    Ok((0.5 + alpha1) / 3.0 + omega2(two_gamma1(), u0)?)
}

/// Evaluates a table row at fixed (u₀, σ₀, t₀) without any search.
pub fn evaluate_row(kind: Kind, target: f64, u0: f64, sigma0: f64, t0: f64) -> Result<OptRow> {
    let log_x0 = log_x0_from_u0(u0, kind)?;
    let exponent10 = x_exponent_from_u0(u0, kind)?;
    match kind {
        Kind::Mertens => {
            let p = mertens_params(sigma0, t0, log_x0)?;
            Ok(OptRow {
                kind,
                target,
                u0,
                u0_search: u0,
                sigma0,
                t0,
                alpha1: None,
                attained: p.alpha,
                coeff: p.n1,
                exponent10,
            })
        }
        Kind::Kfree => {
            let alpha1 = sigma0 + 0.5 * omega1(sigma0, t0, u0 - KFREE_U_SHIFT)?;
            let p = kfree_params(sigma0, t0, two_gamma1(), log_x0, 2)?;
            Ok(OptRow {
                kind,
                target,
                u0,
                u0_search: u0,
                sigma0,
                t0,
                alpha1: Some(alpha1),
                attained: beta0_from_alpha1(alpha1, u0)?,
                coeff: p.n2,
                exponent10,
            })
        }
    }
}

/// The attainable floor of the search: σ₀ = ½ + 1/2000 with ω₁ → 0.
pub fn target_floor(kind: Kind) -> f64 {
    match kind {
        Kind::Mertens => sigma_grid(1),
        Kind::Kfree => (0.5 + sigma_grid(1)) / 3.0,
    }
}

/// Smallest u₀ on the grid {k·u0_step} with min α₀ (or β₀) below `target`.
///
/// Bisection narrows the threshold to 5·10⁻³, then the grid points from the lower
/// end are tried in order and the first success is re-evaluated as the row.
pub fn find_u0_with_step(target: f64, kind: Kind, u0_step: f64) -> Result<OptRow> {
    ensure(u0_step > 0.0 && u0_step <= U0_BISECTION_WIDTH * 2.0, || {
        format!("u0 step must satisfy 0 < step ≤ 0.01, got {u0_step}")
    })?;
    let (lo_range, hi_range) = match kind {
        Kind::Mertens => (0.5, 1.0),
        Kind::Kfree => (1.0 / 3.0, 0.5),
    };
    if !(target > lo_range && target < hi_range) {
        return Err(Error::Range(format!("target must lie in ({lo_range}, {hi_range}) for {kind:?}, got {target}")));
    }
    if target <= target_floor(kind) {
        return Err(Error::Range(format!(
            "target {target} is at or below the floor {} reachable on the σ₀ grid",
            target_floor(kind)
        )));
    }
    let below = |u0: f64| -> Result<bool> { Ok(attained_at(u0, kind)?.1 < target) };

    let mut lo = MIN_U0;
    let mut hi;
    if below(lo)? {
        hi = lo;
    } else {
        hi = 2.0 * lo;
        while !below(hi)? {
            lo = hi;
            if hi >= MAX_U0 {
                return Err(Error::Range(format!("target {target} not reached for u0 ≤ {MAX_U0}")));
            }
            hi = (2.0 * hi).min(MAX_U0);
        }
        while hi - lo > U0_BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            if below(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    let scale = 1.0 / u0_step;
    let mut k = (lo * scale).ceil() as i64;
    loop {
        let u0 = k as f64 / scale;
        let (m, attained) = attained_at(u0, kind)?;
        if attained < target {
            let row = evaluate_row(kind, target, u0, m.sigma0, m.t0)?;
            if !(row.attained < target) {
                return Err(Error::Assertion(format!(
                    "re-evaluation at u0 = {u0} gives {} ≥ target {target}",
                    row.attained
                )));
            }
            return Ok(row);
        }
        k += 1;
        if u0 > hi + u0_step {
            return Err(Error::Assertion(format!("no grid point in [{lo}, {hi}] attains target {target}")));
        }
    }
}

/// [`find_u0_with_step`] with the grid step of the reference table when the target is listed there, else 10⁻³.
pub fn find_u0(target: f64, kind: Kind) -> Result<OptRow> {
    find_u0_with_step(target, kind, default_u0_step(target, kind))
}

pub fn default_u0_step(target: f64, kind: Kind) -> f64 {
    reference_rows(kind).iter().find(|r| r.target == target).map_or(1e-3, |r| r.u0_step)
}

/// A row of the published parameter tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub target: f64,
    pub u0: f64,
    /// Resolution at which the reference u₀ was reported.
    pub u0_step: f64,
    pub sigma0: f64,
    pub t0: f64,
    pub alpha1: Option<f64>,
    pub attained: f64,
    pub coeff: f64,
    pub exponent10: f64,
    /// Rounded constants of the summary table: (X or Y, A or B).
    pub published: (f64, f64),
}

#[allow(clippy::too_many_arguments)]
const fn mrow(
    target: f64,
    u0: f64,
    u0_step: f64,
    sigma0: f64,
    t0: f64,
    a: f64,
    n: f64,
    x: f64,
    p: (f64, f64),
) -> ReferenceRow {
    ReferenceRow { target, u0, u0_step, sigma0, t0, alpha1: None, attained: a, coeff: n, exponent10: x, published: p }
}

#[allow(clippy::too_many_arguments)]
const fn krow(
    target: f64,
    u0: f64,
    sigma0: f64,
    t1: f64,
    a1: f64,
    b0: f64,
    n: f64,
    y: f64,
    p: (f64, f64),
) -> ReferenceRow {
    ReferenceRow {
        target,
        u0,
        u0_step: 1e-2,
        sigma0,
        t0: t1,
        alpha1: Some(a1),
        attained: b0,
        coeff: n,
        exponent10: y,
        published: p,
    }
}

pub const MERTENS_REFERENCE: [ReferenceRow; 10] = [
    mrow(0.999, 10.472, 1e-3, 0.5805, 38.0820263, 0.998969, 0.516044, 4.486728, (4.487, 0.517)),
    mrow(0.99, 10.600, 1e-2, 0.5795, 37.7819602, 0.989916, 0.504493, 4.542320, (4.543, 0.505)),
    mrow(0.9, 12.240, 1e-2, 0.5650, 34.7754417, 0.899710, 0.407781, 5.254575, (5.255, 0.408)),
    mrow(0.85, 13.580, 1e-2, 0.5575, 33.2402484, 0.849801, 0.361954, 5.836532, (5.837, 0.362)),
    mrow(0.8, 15.460, 1e-2, 0.5495, 31.9460694, 0.799913, 0.321749, 6.653006, (6.654, 0.322)),
    mrow(0.75, 18.250, 1e-2, 0.5415, 31.0325517, 0.749867, 0.285883, 7.864688, (7.865, 0.286)),
    mrow(0.7, 22.700, 1e-2, 0.5330, 30.5540678, 0.699211, 0.253936, 9.797299, (9.798, 0.254)),
    mrow(0.65, 30.080, 1e-2, 0.5250, 30.4162800, 0.649986, 0.226151, 13.00239, (13.003, 0.227)),
    mrow(0.6, 45.110, 1e-2, 0.5165, 30.3958431, 0.599987, 0.201251, 19.52983, (19.53, 0.202)),
    mrow(0.55, 90.220, 1e-2, 0.5085, 30.4079746, 0.549996, 0.178845, 39.12086, (39.121, 0.179)),
];

pub const KFREE_REFERENCE: [ReferenceRow; 10] = [
    krow(0.4999, 54.13, 0.5140, 30.3977424, 0.584406, 0.499874, 0.085162, 23.14614, (23.147, 0.0852)),
    krow(0.499, 54.42, 0.5140, 30.3999606, 0.583951, 0.498984, 0.084900, 23.27209, (23.273, 0.0850)),
    krow(0.49, 57.54, 0.5130, 30.3927510, 0.579344, 0.489984, 0.082523, 24.62708, (24.628, 0.0826)),
    krow(0.48, 61.45, 0.5125, 30.4039281, 0.574239, 0.479997, 0.079839, 26.32518, (26.326, 0.0799)),
    krow(0.47, 65.94, 0.5115, 30.3989406, 0.569128, 0.469992, 0.077357, 28.27516, (28.276, 0.0774)),
    krow(0.46, 71.14, 0.5105, 30.3931181, 0.564026, 0.459987, 0.074965, 30.53349, (30.534, 0.0750)),
    krow(0.45, 77.23, 0.5100, 30.4071541, 0.558934, 0.449985, 0.072556, 33.17834, (33.179, 0.0726)),
    krow(0.44, 84.45, 0.5090, 30.4008385, 0.553851, 0.439997, 0.070337, 36.31395, (36.314, 0.0704)),
    krow(0.4, 135.05, 0.5055, 30.3927192, 0.533570, 0.399998, 0.062108, 58.28925, (58.29, 0.0622)),
    krow(0.35, 540.10, 0.5015, 30.4310282, 0.508366, 0.349993, 0.053262, 234.2002, (234.21, 0.0533)),
];

pub fn reference_rows(kind: Kind) -> &'static [ReferenceRow] {
    match kind {
        Kind::Mertens => &MERTENS_REFERENCE,
        Kind::Kfree => &KFREE_REFERENCE,
    }
}

pub fn reference_targets(kind: Kind) -> Vec<f64> {
    reference_rows(kind).iter().map(|r| r.target).collect()
}

/// Searches for the row of `target`. If the target is listed in the reference table,
/// the row is re-optimised at the listed u₀, which must attain the target and
/// cannot lie below the searched u₀; the searched value is kept in `u0_search`.
pub fn reproduce_row(kind: Kind, target: f64) -> Result<OptRow> {
    let searched = find_u0(target, kind)?;
    let Some(reference) = reference_rows(kind).iter().find(|r| r.target == target) else {
        return Ok(searched);
    };
    if reference.u0 == searched.u0 {
        return Ok(searched);
    }
    let (m, attained) = attained_at(reference.u0, kind)?;
    if !(attained < target) || reference.u0 < searched.u0 {
        return Err(Error::Assertion(format!(
            "listed u0 = {} is inconsistent with the search (u0 = {}, attained {attained} for target {target})",
            reference.u0, searched.u0
        )));
    }
    let row = evaluate_row(kind, target, reference.u0, m.sigma0, m.t0)?;
    Ok(OptRow { u0_search: searched.u0, ..row })
}

/// [`reproduce_row`] for each target in order.
pub fn reproduce(kind: Kind, targets: &[f64]) -> Result<Vec<OptRow>> {
    targets.iter().map(|&t| reproduce_row(kind, t)).collect()
}

/// Smallest multiple of 10^{-decimals} that is ≥ v.
pub fn ceil_to_decimals(v: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let scaled = v * scale;
    // absorb representation noise just above an exact multiple
    let nearest = scaled.round();
    let k = if (scaled - nearest).abs() <= 1e-9 * scaled.abs().max(1.0) { nearest } else { scaled.ceil() };
    k / scale
}

/// Decimals used for X and Y: three, but at most five significant digits.
pub fn exponent_decimals(v: f64) -> u32 {
    let int_digits = if v.abs() < 1.0 { 1 } else { v.abs().log10().floor() as u32 + 1 };
    3u32.min(5u32.saturating_sub(int_digits))
}

/// Decimals used for A (three) and B (four).
pub fn coeff_decimals(kind: Kind) -> u32 {
    match kind {
        Kind::Mertens => 3,
        Kind::Kfree => 4,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublishedRow {
    pub kind: Kind,
    pub target: f64,
    /// X or Y, rounded up.
    pub exponent10: f64,
    /// A or B, rounded up.
    pub coeff: f64,
    pub exponent10_text: String,
    pub coeff_text: String,
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Applies the summary-table rounding: every constant is rounded up at its column precision.
pub fn publish_table1(rows: &[OptRow]) -> Vec<PublishedRow> {
    rows.iter()
        .map(|r| {
            let xd = exponent_decimals(r.exponent10);
            let cd = coeff_decimals(r.kind);
            let exponent10 = ceil_to_decimals(r.exponent10, xd);
            let coeff = ceil_to_decimals(r.coeff, cd);
            PublishedRow {
                kind: r.kind,
                target: r.target,
                exponent10,
                coeff,
                exponent10_text: trim_zeros(format!("{exponent10:.*}", xd as usize)),
                coeff_text: format!("{coeff:.*}", cd as usize),
            }
        })
        .collect()
}

pub fn rows_csv(rows: &[OptRow]) -> String {
    let mut out = String::new();
    let kind = rows.first().map_or(Kind::Mertens, |r| r.kind);
    out.push_str(match kind {
        Kind::Mertens => "target,u0,u0_search,sigma0,t0,alpha0,n1,x\n",
        Kind::Kfree => "target,u0,u0_search,sigma0,t1,alpha1,beta0,n2,y\n",
    });
    for r in rows {
        let alpha1 = r.alpha1.map(|a| format!("{a:.9},")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{:.7},{}{:.9},{:.9},{:.7}\n",
            r.target, r.u0, r.u0_search, r.sigma0, r.t0, alpha1, r.attained, r.coeff, r.exponent10
        ));
    }
    out
}

pub fn published_csv(rows: &[PublishedRow]) -> String {
    let mut out = String::from("kind,target,exponent10,coeff\n");
    for r in rows {
        let kind = match r.kind {
            Kind::Mertens => "mertens",
            Kind::Kfree => "kfree",
        };
        out.push_str(&format!("{kind},{},{},{}\n", r.target, r.exponent10_text, r.coeff_text));
    }
    out
}
