//! k-free counts Q_k(x) and the pieces of its decomposition.

use super::mobius::{isqrt, mobius_segment, MAX_SEGMENT};
use crate::error::{ensure, Error, Result};

/// ⌊x^{1/k}⌋.
pub fn kth_root(x: u64, k: u32) -> u64 {
    if k == 2 {
        return isqrt(x);
    }
    let mut r = (x as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= x) {
        r += 1;
    }
    r
}

fn check_k(k: u32) -> Result<()> {
    ensure(k >= 2, || format!("k must satisfy k ≥ 2, got k = {k}"))
}

/// μ(1..=n) as a vector indexed from 1 (index 0 unused).
pub(crate) fn mobius_table(n: u64) -> Result<Vec<i8>> {
    let mut v = vec![0i8];
    if n >= 1 {
        v.extend(mobius_segment(1, n)?);
    }
    Ok(v)
}

/// Q_k(x) by marking multiples of p^k for every prime p.
pub fn qk_count_direct(x: u64, k: u32) -> Result<u64> {
    check_k(k)?;
    if x > MAX_SEGMENT {
        return Err(Error::Resource(format!("direct k-free sieve limited to x ≤ {MAX_SEGMENT}")));
    }
    Ok(kfree_flags(x, k).iter().skip(1).filter(|&&f| f).count() as u64)
}

/// flags[n] is true iff n is k-free, for 0 < n ≤ x.
pub fn kfree_flags(x: u64, k: u32) -> Vec<bool> {
    let n = x as usize;
    let mut free = vec![true; n + 1];
    free[0] = false;
    for p in super::mobius::primes_up_to(kth_root(x, k)) {
        let pk = p.pow(k) as usize;
        let mut m = pk;
        while m <= n {
            free[m] = false;
            m += pk;
        }
    }
    free
}

/// Σ_{n ≤ y} μ(n) ⌊x/nᵏ⌋ using a precomputed μ table covering 1..=y.
pub fn qk1_with(mu: &[i8], x: u64, y: u64, k: u32) -> i64 {
    let mut s = 0i64;
    for n in 1..=y {
        let m = mu[n as usize];
        if m != 0 {
            s += m as i64 * (x / n.pow(k)) as i64;
        }
    }
    s
}

/// Q_{k,1}(x) = Σ_{n ≤ y} μ(n) ⌊x/nᵏ⌋ for 1 ≤ y ≤ x^{1/k}.
pub fn qk1(x: u64, y: u64, k: u32) -> Result<i64> {
    check_k(k)?;
    let root = kth_root(x, k);
    ensure(1 <= y && y <= root, || format!("y must satisfy 1 ≤ y ≤ x^(1/k) = {root}, got y = {y}"))?;
    Ok(qk1_with(&mobius_table(y)?, x, y, k))
}

/// Q_k(x), computed by the direct sieve and by Σ_{n ≤ x^{1/k}} μ(n)⌊x/nᵏ⌋; the two must agree.
pub fn qk_count(x: u64, k: u32) -> Result<u64> {
    check_k(k)?;
    if x == 0 {
        return Ok(0);
    }
    let direct = qk_count_direct(x, k)?;
    let root = kth_root(x, k);
    let via_mobius = qk1_with(&mobius_table(root)?, x, root, k);
    if via_mobius != direct as i64 {
        return Err(Error::Assertion(format!(
            "Q_{k}({x}): direct sieve gives {direct}, Möbius sum gives {via_mobius}"
        )));
    }
    Ok(direct)
}

/// S_k(x, y) = Σ_{n ≤ y} (x/nᵏ − ⌊x/nᵏ⌋ − ½) μ(n); |S_k| ≤ y/2 is checked.
pub fn s_k(x: u64, y: u64, k: u32) -> Result<f64> {
    check_k(k)?;
    let root = kth_root(x, k);
    ensure(1 <= y && y <= root, || format!("y must satisfy 1 ≤ y ≤ x^(1/k) = {root}, got y = {y}"))?;
    let mu = mobius_table(y)?;
    let mut s = 0.0;
    for n in 1..=y {
        let m = mu[n as usize];
        if m != 0 {
            let nk = n.pow(k);
            let frac = (x % nk) as f64 / nk as f64;
            s += (frac - 0.5) * m as f64;
        }
    }
    if s.abs() > y as f64 / 2.0 {
        return Err(Error::Assertion(format!("|S_{k}({x}, {y})| = {} exceeds y/2", s.abs())));
    }
    Ok(s)
}
