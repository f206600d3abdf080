//! Nontrivial zero ordinates: parsing, validation and the counting function.

use std::f64::consts::PI;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Strips 𝓢₁ … 𝓢₂₇₀₃ need γ₁ … γ₂₇₀₄.
pub const MIN_ORDINATES: usize = 2704;
pub const MIN_FRACTIONAL_DIGITS: usize = 9;

const BUNDLED: &str = include_str!("../../data/zeros_2704.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source_digest: String,
}

impl ZeroTable {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    /// The 2704-ordinate table shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled zero table is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_min(text, MIN_ORDINATES)
    }

    /// Like [`ZeroTable::parse`] but with a caller-chosen minimum count.
    pub fn parse_with_min(text: &str, min_count: usize) -> Result<Self> {
        let mut ordinates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line_no = i + 1;
            let frac_digits = line.split_once('.').map(|(_, f)| f.len()).unwrap_or(0);
            if frac_digits < MIN_FRACTIONAL_DIGITS {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "ordinate {line:?} has {frac_digits} fractional digits, need {MIN_FRACTIONAL_DIGITS}"
                    ),
                });
            }
            let value: f64 =
                line.parse().map_err(|e| Error::Parse { line: line_no, message: format!("{line:?}: {e}") })?;
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("ordinate must be positive and finite, got {value}"),
                });
            }
            ordinates.push(value);
        }
        if ordinates.is_empty() {
            return Err(Error::Parse { line: 0, message: "no ordinates found".into() });
        }
        if let Some(i) = ordinates.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Validation {
                index: i + 1,
                message: format!(
                    "ordinates not strictly ascending: γ[{}] = {} ≤ γ[{}] = {}",
                    i + 2,
                    ordinates[i + 1],
                    i + 1,
                    ordinates[i]
                ),
            });
        }
        if ordinates.len() < min_count {
            return Err(Error::InsufficientData { needed: min_count, found: ordinates.len() });
        }
        if !(14.134_725 < ordinates[0] && ordinates[0] < 14.134_726) {
            return Err(Error::Validation {
                index: 0,
                message: format!("γ₁ = {} is not the first zero ordinate 14.134725…", ordinates[0]),
            });
        }
        let source_digest = hex::encode(Sha256::digest(text.as_bytes()));
        Ok(Self { ordinates, source_digest })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn source_digest(&self) -> &str {
        &self.source_digest
    }

    /// γₙ with 1-based n.
    pub fn gamma(&self, n: usize) -> f64 {
        self.ordinates[n - 1]
    }

    pub fn last(&self) -> f64 {
        *self.ordinates.last().expect("table is non-empty")
    }

    /// N(T): number of tabulated ordinates in (0, T].
    ///
    /// Only meaningful for T ≤ the last ordinate.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Q(u) = N(u) − (u/2π) log(u/2πe) − 7/8.
    pub fn q(&self, u: f64) -> f64 {
        self.count_up_to(u) as f64 - riemann_von_mangoldt_main(u) - 0.875
    }
}

/// (T/2π) log(T/2πe).
pub fn riemann_von_mangoldt_main(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * std::f64::consts::E)).ln()
}

/// Cap on |Q(T)| under RH for 2π ≤ T < 10²⁴⁶⁵: 0.96 log T / log log T + 1/(150 T).
pub fn q_cap(t: f64) -> f64 {
    0.96 * t.ln() / t.ln().ln() + 1.0 / (150.0 * t)
}
