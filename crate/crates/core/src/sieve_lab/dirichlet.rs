//! Coefficients a_d of ζ(s)·f_y(ks) and the desk-scale Mertens bound check.

use std::sync::OnceLock;

use serde::Serialize;

use super::mobius::{primes_up_to, SieveCheckpoint};
use crate::bound_engine::BoundContext;
use crate::error::{ensure, Error, Result};

/// Trial-division prime bound; d must factor completely over primes up to here.
pub const FACTOR_PRIME_LIMIT: u64 = 1_000_000;
/// Largest d accepted by [`dirichlet_coeff`].
pub const MAX_D: u64 = FACTOR_PRIME_LIMIT * FACTOR_PRIME_LIMIT;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(FACTOR_PRIME_LIMIT))
}

/// Prime factorisation of d ≤ 10¹² as (p, exponent) pairs.
pub fn factor(mut d: u64) -> Result<Vec<(u64, u32)>> {
    ensure(d >= 1, || "d must be positive".into())?;
    if d > MAX_D {
        return Err(Error::Resource(format!("d = {d} exceeds the factoring budget {MAX_D}")));
    }
    let mut out = Vec::new();
    for &p in small_primes() {
        if p * p > d {
            break;
        }
        let mut e = 0;
        while d.is_multiple_of(p) {
            d /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if d > 1 {
        out.push((d, 1));
    }
    Ok(out)
}

/// a_d = Σ μ(r) over r > y with rᵏ | d.
pub fn dirichlet_coeff(d: u64, y: u64, k: u32) -> Result<i64> {
    dirichlet_coeff_factored(&factor(d)?, y, k)
}

/// [`dirichlet_coeff`] for d given by its factorisation, so that d itself may exceed u64.
///
/// Only squarefree r contribute, so r ranges over products of the primes whose
/// exponent in d is at least k. The full sum over those is [no such primes], which
/// leaves a_d = [l = 0] − Σ_{r ≤ y} μ(r).
pub fn dirichlet_coeff_factored(factors: &[(u64, u32)], y: u64, k: u32) -> Result<i64> {
    ensure(y >= 1, || format!("y must satisfy y ≥ 1, got {y}"))?;
    ensure(k >= 2, || format!("k must satisfy k ≥ 2, got {k}"))?;
    let mut primes: Vec<u64> = factors.iter().filter(|(_, e)| *e >= k).map(|&(p, _)| p).collect();
    primes.sort_unstable();
    let all = if primes.is_empty() { 1 } else { 0 };
    Ok(all - small_divisor_mobius_sum(&primes, y))
}

/// Σ μ(r) over squarefree r ≤ y built from `primes` (ascending).
fn small_divisor_mobius_sum(primes: &[u64], y: u64) -> i64 {
    fn walk(primes: &[u64], start: usize, r: u64, sign: i64, y: u64) -> i64 {
        let mut s = sign;
        for i in start..primes.len() {
            let Some(next) = r.checked_mul(primes[i]) else { break };
            if next > y {
                break;
            }
            s += walk(primes, i + 1, next, -sign, y);
        }
        s
    }
    walk(primes, 0, 1, 1, y)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRunRow {
    pub x: u64,
    pub mertens: i64,
    /// log(𝓝₁ x^α log x)
    pub log_bound: f64,
    /// log bound − log|M(x)|; +∞ when M(x) = 0.
    pub log_margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRunReport {
    pub alpha: f64,
    pub n1: f64,
    pub rows: Vec<BoundRunRow>,
    pub all_hold: bool,
}

/// Compares |M(x)| against 𝓝₁ x^α log x at each checkpoint.
pub fn check_bound_run(checkpoints: &[SieveCheckpoint], ctx: &BoundContext) -> Result<BoundRunReport> {
    let mut rows = Vec::with_capacity(checkpoints.len());
    for c in checkpoints {
        let log_x = (c.x as f64).ln();
        ensure(log_x >= ctx.log_x0, || format!("checkpoint x = {} is below x0 = exp({:.6})", c.x, ctx.log_x0))?;
        let log_bound = ctx.log_mertens_bound(log_x)?;
        let abs_m = c.mertens.unsigned_abs() as f64;
        let log_margin = if abs_m == 0.0 { f64::INFINITY } else { log_bound - abs_m.ln() };
        rows.push(BoundRunRow { x: c.x, mertens: c.mertens, log_bound, log_margin, holds: log_margin > 0.0 });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(BoundRunReport { alpha: ctx.alpha, n1: ctx.n1, rows, all_hold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve_lab::mobius::mobius_segment;

    /// Sum over divisors q of d that are k-th powers rᵏ with r > y.
    fn brute(d: u64, y: u64, k: u32) -> i64 {
        let mut s = 0;
        let mut r = y + 1;
        while let Some(rk) = r.checked_pow(k) {
            if rk > d {
                break;
            }
            if d.is_multiple_of(rk) {
                s += mobius_segment(r, r).unwrap()[0] as i64;
            }
            r += 1;
        }
        s
    }

    #[test]
    fn kfree_d_gives_zero() {
        for d in [1u64, 2, 30, 2310, 999_983] {
            assert_eq!(dirichlet_coeff(d, 3, 2).unwrap(), 0);
        }
        assert_eq!(dirichlet_coeff(4 * 9, 3, 3).unwrap(), 0);
    }

    #[test]
    fn square_of_35() {
        assert_eq!(dirichlet_coeff(35 * 35, 10, 2).unwrap(), 1);
        assert_eq!(brute(35 * 35, 10, 2), 1);
    }

    #[test]
    fn matches_brute_force() {
        for d in 1..=5000u64 {
            for y in [1u64, 2, 3, 5, 10] {
                for k in [2u32, 3] {
                    assert_eq!(dirichlet_coeff(d, y, k).unwrap(), brute(d, y, k), "d={d} y={y} k={k}");
                }
            }
        }
    }

    #[test]
    fn factoring_budget() {
        assert!(matches!(dirichlet_coeff(MAX_D + 1, 3, 2), Err(Error::Resource(_))));
        assert_eq!(factor(999_983 * 999_979).unwrap(), vec![(999_979, 1), (999_983, 1)]);
    }
}
