//! Piecewise caps φ₁, φ₂ on S(t), S₁(t) and their log-log reparametrisations φ̂₁, φ̂₂.

use std::f64::consts::{LN_10, PI};

use crate::error::{ensure, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiKind {
    /// Cap for |S(t)|: φ₁, φ̂₁.
    S,
    /// Cap for |S₁(t)|: φ₂, φ̂₂.
    S1,
}

/// A constant plateau up to `u_break`, then `asym_base − 𝓜(a, b, c; t_break) + b/(u e^{cu})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiCap {
    pub plateau: f64,
    /// log log of the height where the plateau ends.
    pub u_break: f64,
    pub asym_base: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// 𝓜(a, b, c; t) = a + b / ((log t)^c log log t), taking log t as input.
pub fn m_fn(a: f64, b: f64, c: f64, log_t: f64) -> f64 {
    a + b / (log_t.powf(c) * log_t.ln())
}

impl PhiCap {
    pub fn of(kind: PhiKind) -> PhiCap {
        match kind {
            PhiKind::S => PhiCap {
                plateau: 0.96,
                u_break: (2465.0 * LN_10).ln(),
                asym_base: 1.719_282,
                a: 0.759_282,
                b: 20.1911,
                c: 0.285,
            },
            PhiKind::S1 => PhiCap {
                plateau: 2.491,
                u_break: (208.0 * LN_10).ln(),
                asym_base: 3.144,
                a: 0.653,
                b: 60.12,
                c: 0.2705,
            },
        }
    }

    /// 𝓜 at the breakpoint height, i.e. 𝓜₁(10²⁴⁶⁵) or 𝓜₂(10²⁰⁸).
    pub fn m_at_break(&self) -> f64 {
        m_fn(self.a, self.b, self.c, self.u_break.exp())
    }

    /// Lower end of the domain, log log 2π.
    pub fn u_min() -> f64 {
        (2.0 * PI).ln().ln()
    }

    /// Value for u → ∞.
    pub fn limit(&self) -> f64 {
        self.asym_base - self.m_at_break()
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        ensure(u >= Self::u_min(), || format!("phi_hat needs u ≥ log log 2π ≈ 0.6067, got u = {u}"))?;
        Ok(self.eval_unchecked(u))
    }

    pub(crate) fn eval_unchecked(&self, u: f64) -> f64 {
        if u < self.u_break {
            self.plateau
        } else {
            self.limit() + self.b / (u * (self.c * u).exp())
        }
    }
}

/// φ̂₁(u) for `PhiKind::S`, φ̂₂(u) for `PhiKind::S1`.
pub fn phi_hat(kind: PhiKind, u: f64) -> Result<f64> {
    PhiCap::of(kind).eval(u)
}

/// φ₁(t) or φ₂(t) for t ≥ 2π.
pub fn phi_of_t(kind: PhiKind, t: f64) -> Result<f64> {
    ensure(t >= 2.0 * PI, || format!("phi needs t ≥ 2π, got t = {t}"))?;
    phi_of_log_t(kind, t.ln())
}

/// φ₁ or φ₂ at the height whose logarithm is `log_t`.
pub fn phi_of_log_t(kind: PhiKind, log_t: f64) -> Result<f64> {
    ensure(log_t >= (2.0 * PI).ln(), || format!("phi needs log t ≥ log 2π, got {log_t}"))?;
    let cap = PhiCap::of(kind);
    if log_t.ln() < cap.u_break {
        Ok(cap.plateau)
    } else {
        Ok(m_fn(cap.a, cap.b, cap.c, log_t) + cap.plateau - cap.m_at_break())
    }
}
