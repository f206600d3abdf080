//! Boundary scans for the maximum-modulus lemmas on 1/ζ and ζ.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::zeros::{ZeroTable, MIN_ORDINATES};
use super::zeta::{zeta, zeta_derivative};
use crate::error::{ensure, Error, Result};

/// Strips of the 1/ζ lemma, excluding 𝓢₀.
pub const STRIP_COUNT: usize = 2703;
/// Upper edge of 𝓢₀ and, via γ₀ = 22 − γ₁, lower edge of 𝓢₁.
pub const S0_TOP: f64 = 11.0;
pub const DEFAULT_REFINE_THRESHOLD: f64 = 2.0;
/// Within this distance of ½ + iγₙ the quotient (z − ρ)/ζ(z) is replaced by 1/ζ′.
pub const NEAR_ZERO_RADIUS: f64 = 1e-3;
pub const REFINE_FACTOR: usize = 4;

/// Stated maxima of the scans; reported maxima may exceed them by at most [`CAP_TOLERANCE`].
pub const RECIP_STRIP_CAP: f64 = 3.3;
pub const RECIP_S0_CAP: f64 = 2.0;
pub const SUP_CRITICAL_CAP: f64 = 13.5;
pub const SUP_THREE_QUARTER_CAP: f64 = 6.91;
pub const SUP_REST_CAP: f64 = 3.5;
pub const CAP_TOLERANCE: f64 = 2e-2;
/// Strips where the global maximum of |Fₙ| is attained.
pub const RECIP_ARGMAX_STRIPS: [usize; 2] = [922, 923];

const SIGMA_LO: f64 = 0.5;
const SIGMA_HI: f64 = 1.5;
const SUP_SIGMA_HI: f64 = 0.75;
const ZETA_TOL: f64 = 1e-10;
const DERIVATIVE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Segment {
    Strip(usize),
    CriticalLine,
    ThreeQuarterLine,
    Rest,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Strip(n) => write!(f, "{n}"),
            Segment::CriticalLine => f.write_str("critical_line"),
            Segment::ThreeQuarterLine => f.write_str("sigma_3_4"),
            Segment::Rest => f.write_str("rest"),
        }
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Segment::Strip(n) => s.serialize_u64(*n as u64),
            other => s.collect_str(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanFailure {
    pub re: f64,
    pub im: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    #[serde(rename = "strip_index")]
    pub segment: Segment,
    pub gamma_n: Option<f64>,
    pub max_abs: f64,
    pub re_argmax: f64,
    pub im_argmax: f64,
    pub points_per_edge: usize,
    pub refined: bool,
    pub failures: Vec<ScanFailure>,
}

impl ScanReport {
    pub const CSV_HEADER: &'static str = "strip_index,gamma_n,max_abs,re_argmax,im_argmax,points_per_edge,refined";

    pub fn csv_row(&self) -> String {
        let gamma = self.gamma_n.map(|g| format!("{g:.12}")).unwrap_or_default();
        format!(
            "{},{},{:.17e},{:.17e},{:.17e},{},{}",
            self.segment, gamma, self.max_abs, self.re_argmax, self.im_argmax, self.points_per_edge, self.refined
        )
    }

    fn from_points(segment: Segment, gamma_n: Option<f64>, ppe: usize, points: &[(Complex64, Result<f64>)]) -> Self {
        let mut best = (f64::NEG_INFINITY, Complex64::new(f64::NAN, f64::NAN));
        let mut failures = Vec::new();
        for (z, v) in points {
            match v {
                // strict comparison keeps the first index on ties
                Ok(a) if *a > best.0 => best = (*a, *z),
                Ok(_) => {}
                Err(e) => failures.push(ScanFailure { re: z.re, im: z.im, message: e.to_string() }),
            }
        }
        ScanReport {
            segment,
            gamma_n,
            max_abs: best.0,
            re_argmax: best.1.re,
            im_argmax: best.1.im,
            points_per_edge: ppe,
            refined: false,
            failures,
        }
    }
}

/// Writes reports as CSV with a header line.
pub fn scan_csv(reports: &[ScanReport]) -> String {
    let mut out = String::from(ScanReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Largest max_abs over the given reports, first one wins on ties.
pub fn global_max(reports: &[ScanReport]) -> Option<&ScanReport> {
    reports.iter().fold(None, |best: Option<&ScanReport>, r| match best {
        Some(b) if b.max_abs >= r.max_abs => Some(b),
        _ => Some(r),
    })
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(move |j| if j + 1 == n { b } else { a + j as f64 * h })
}

fn check_zeros(zeros: &ZeroTable) -> Result<()> {
    if zeros.count() < MIN_ORDINATES {
        return Err(Error::InsufficientData { needed: MIN_ORDINATES, found: zeros.count() });
    }
    Ok(())
}

/// Lower and upper Im of strip n (n = 0 is 𝓢₀).
pub fn strip_bounds(zeros: &ZeroTable, n: usize) -> (f64, f64) {
    (row_height(zeros, n, true), row_height(zeros, n, false))
}

// Horizontal line r is Im = (γ_r + γ_{r+1})/2 with γ₀ = 22 − γ₁, so line 0 is Im = 11.
fn line_height(zeros: &ZeroTable, r: usize) -> f64 {
    if r == 0 {
        S0_TOP
    } else {
        0.5 * (zeros.gamma(r) + zeros.gamma(r + 1))
    }
}

fn row_height(zeros: &ZeroTable, n: usize, lower: bool) -> f64 {
    match (n, lower) {
        (0, true) => 0.0,
        (0, false) => S0_TOP,
        (n, true) => line_height(zeros, n - 1),
        (n, false) => line_height(zeros, n),
    }
}

fn zeta_at(z: Complex64) -> Result<Complex64> {
    zeta(z, ZETA_TOL)
}

/// |Fₙ(z)| for n ≥ 1 or |1/ζ(z)| for n = 0, from a precomputed ζ(z) where available.
fn f_abs(n: usize, zeros: &ZeroTable, z: Complex64, zeta_z: Option<Result<Complex64>>) -> Result<f64> {
    if n == 0 {
        if z == Complex64::new(1.0, 0.0) {
            // 1/ζ has a removable zero at the pole
            return Ok(0.0);
        }
        let v = zeta_z.unwrap_or_else(|| zeta_at(z))?;
        return Ok(1.0 / v.norm());
    }
    let rho = Complex64::new(0.5, zeros.gamma(n));
    let d = z - rho;
    if d.norm() < NEAR_ZERO_RADIUS {
        // ζ(z)/(z − ρ) is the secant slope, which is ζ′ at the midpoint to second order.
        let deriv = zeta_derivative((z + rho) * 0.5, DERIVATIVE_STEP)?;
        return Ok(1.0 / deriv.norm());
    }
    let v = zeta_z.unwrap_or_else(|| zeta_at(z))?;
    Ok(d.norm() / v.norm())
}

fn horizontal_line(im: f64, ppe: usize) -> Vec<(Complex64, Result<Complex64>)> {
    linspace(SIGMA_LO, SIGMA_HI, ppe)
        .map(|s| {
            let z = Complex64::new(s, im);
            let v = if z == Complex64::new(1.0, 0.0) { Err(Error::Pole) } else { zeta_at(z) };
            (z, v)
        })
        .collect()
}

fn scan_strip(
    n: usize,
    zeros: &ZeroTable,
    ppe: usize,
    bottom: &[(Complex64, Result<Complex64>)],
    top: &[(Complex64, Result<Complex64>)],
) -> Vec<(Complex64, Result<f64>)> {
    let (lo, hi) = strip_bounds(zeros, n);
    let mut pts = Vec::with_capacity(4 * ppe);
    for (z, v) in bottom.iter().chain(top) {
        pts.push((*z, f_abs(n, zeros, *z, Some(v.clone()))));
    }
    for sigma in [SIGMA_LO, SIGMA_HI] {
        for t in linspace(lo, hi, ppe) {
            let z = Complex64::new(sigma, t);
            pts.push((z, f_abs(n, zeros, z, None)));
        }
    }
    pts
}

fn scan_strips_at(zeros: &ZeroTable, strips: &[usize], ppe: usize) -> Vec<ScanReport> {
    let mut heights: BTreeMap<(usize, bool), f64> = BTreeMap::new();
    for &n in strips {
        heights.insert((n, true), row_height(zeros, n, true));
        heights.insert((n, false), row_height(zeros, n, false));
    }
    // Adjacent strips share a horizontal edge, so each distinct height is evaluated once.
    let mut distinct: Vec<f64> = heights.values().copied().collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let lines: Vec<Vec<(Complex64, Result<Complex64>)>> =
        distinct.par_iter().map(|&im| horizontal_line(im, ppe)).collect();
    let line_of = |h: f64| &lines[distinct.binary_search_by(|v| v.total_cmp(&h)).expect("height was inserted")];

    strips
        .par_iter()
        .map(|&n| {
            let pts = scan_strip(n, zeros, ppe, line_of(heights[&(n, true)]), line_of(heights[&(n, false)]));
            let gamma = (n > 0).then(|| zeros.gamma(n));
            ScanReport::from_points(Segment::Strip(n), gamma, ppe, &pts)
        })
        .collect()
}

/// Scans the given strips (0 = 𝓢₀), re-scanning at 4× density any strip whose
/// coarse maximum exceeds `refine_threshold`.
pub fn scan_recip_strips(
    zeros: &ZeroTable,
    strips: &[usize],
    points_per_edge: usize,
    refine_threshold: f64,
) -> Result<Vec<ScanReport>> {
    check_zeros(zeros)?;
    ensure(points_per_edge >= 2, || format!("points_per_edge must be at least 2, got {points_per_edge}"))?;
    ensure(!refine_threshold.is_nan(), || "refine threshold must not be NaN".into())?;
    let mut sorted = strips.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&n| n > STRIP_COUNT) {
        return Err(Error::Domain(format!("strip index must satisfy 0 ≤ n ≤ {STRIP_COUNT}, got {bad}")));
    }
    let mut reports = scan_strips_at(zeros, &sorted, points_per_edge);
    let redo: Vec<usize> = reports
        .iter()
        .filter(|r| r.max_abs > refine_threshold)
        .map(|r| match r.segment {
            Segment::Strip(n) => n,
            _ => unreachable!(),
        })
        .collect();
    if !redo.is_empty() {
        // (ppe − 1)·4 + 1 points keep the coarse grid as a subset
        let fine_ppe = (points_per_edge - 1) * REFINE_FACTOR + 1;
        let fine = scan_strips_at(zeros, &redo, fine_ppe);
        for f in fine {
            let slot = reports.iter_mut().find(|r| r.segment == f.segment).expect("refined strip was scanned");
            *slot = ScanReport { refined: true, ..f };
        }
    }
    Ok(reports)
}

/// Full scan of ∂𝓢₀ and ∂𝓢ₙ for n = 1..=2703.
pub fn scan_recip_lemma(zeros: &ZeroTable, points_per_edge: usize, refine_threshold: f64) -> Result<Vec<ScanReport>> {
    ensure(points_per_edge >= 101, || format!("points_per_edge must be at least 101, got {points_per_edge}"))?;
    let all: Vec<usize> = (0..=STRIP_COUNT).collect();
    scan_recip_strips(zeros, &all, points_per_edge, refine_threshold)
}

fn check_cap(what: &str, r: &ScanReport, cap: f64) -> Result<()> {
    if !r.failures.is_empty() {
        return Err(Error::Assertion(format!("{what}: {} points could not be evaluated", r.failures.len())));
    }
    if !(r.max_abs <= cap + CAP_TOLERANCE) {
        return Err(Error::Assertion(format!("{what}: maximum {} exceeds {cap}", r.max_abs)));
    }
    Ok(())
}

/// Checks strip reports against the stated caps. With `full` set, the
/// global maximum over n ≥ 1 must also sit in strip 922 or 923.
pub fn check_recip_reports(reports: &[ScanReport], full: bool) -> Result<()> {
    let (s0, strips): (Vec<ScanReport>, Vec<ScanReport>) =
        reports.iter().cloned().partition(|r| r.segment == Segment::Strip(0));
    if let Some(r) = s0.first() {
        check_cap("|1/ζ| on ∂S₀", r, RECIP_S0_CAP)?;
    }
    for r in &strips {
        check_cap(&format!("|F_n| on strip {}", r.segment), r, RECIP_STRIP_CAP)?;
    }
    if full {
        let g = global_max(&strips).ok_or_else(|| Error::Assertion("no strips scanned".into()))?;
        let Segment::Strip(n) = g.segment else { unreachable!() };
        if !RECIP_ARGMAX_STRIPS.contains(&n) {
            return Err(Error::Assertion(format!("global maximum attained in strip {n}, not 922 or 923")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupLemmaScan {
    /// |ζ(½ + it)| for γ₁ ≤ t ≤ γ₂₇₀₃.
    pub critical_line: ScanReport,
    /// |ζ(¾ + it)| for γ₁ ≤ t ≤ γ₂₇₀₃.
    pub three_quarter_line: ScanReport,
    /// The rest of ∂𝓣: both horizontal edges and the two vertical pieces below γ₁.
    pub rest: ScanReport,
}

impl SupLemmaScan {
    /// Checks the three maxima against 13.5, 6.91 and 3.5.
    pub fn check(&self) -> Result<()> {
        check_cap("|ζ| on the critical line", &self.critical_line, SUP_CRITICAL_CAP)?;
        check_cap("|ζ| on σ = 3/4", &self.three_quarter_line, SUP_THREE_QUARTER_CAP)?;
        check_cap("|ζ| on the rest of the boundary", &self.rest, SUP_REST_CAP)
    }

    pub fn reports(&self) -> Vec<ScanReport> {
        vec![self.critical_line.clone(), self.three_quarter_line.clone(), self.rest.clone()]
    }
}

fn abs_zeta_points(points: Vec<Complex64>) -> Vec<(Complex64, Result<f64>)> {
    points.into_par_iter().map(|z| (z, zeta_at(z).map(|v| v.norm()))).collect()
}

/// Scans |ζ| over ∂𝓣, 𝓣 = [½, ¾] × [0, γ₂₇₀₃], with `points_per_edge` points in every
/// gap between consecutive ordinates on the two vertical lines.
pub fn scan_sup_lemma(zeros: &ZeroTable, points_per_edge: usize) -> Result<SupLemmaScan> {
    check_zeros(zeros)?;
    ensure(points_per_edge >= 101, || format!("points_per_edge must be at least 101, got {points_per_edge}"))?;
    let ppe = points_per_edge;
    let line = |sigma: f64| -> Vec<Complex64> {
        let mut v = Vec::new();
        for k in 1..STRIP_COUNT {
            let pts = linspace(zeros.gamma(k), zeros.gamma(k + 1), ppe);
            // consecutive gaps share an endpoint
            v.extend(pts.skip(usize::from(k > 1)).map(|t| Complex64::new(sigma, t)));
        }
        v
    };
    let top = zeros.gamma(STRIP_COUNT);
    let mut rest = Vec::new();
    for im in [0.0, top] {
        rest.extend(linspace(0.5, SUP_SIGMA_HI, ppe).map(|s| Complex64::new(s, im)));
    }
    for sigma in [0.5, SUP_SIGMA_HI] {
        rest.extend(linspace(0.0, zeros.gamma(1), ppe).map(|t| Complex64::new(sigma, t)));
    }
    Ok(SupLemmaScan {
        critical_line: ScanReport::from_points(Segment::CriticalLine, None, ppe, &abs_zeta_points(line(0.5))),
        three_quarter_line: ScanReport::from_points(
            Segment::ThreeQuarterLine,
            None,
            ppe,
            &abs_zeta_points(line(SUP_SIGMA_HI)),
        ),
        rest: ScanReport::from_points(Segment::Rest, None, ppe, &abs_zeta_points(rest)),
    })
}
