//! Segmented Möbius sieve and streaming Mertens accumulation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure, Error, Result};

/// Largest n the sieve accepts.
pub const MAX_N: u64 = 10_000_000_000;
/// Values handled per sieve pass.
pub const SEGMENT_LEN: u64 = 1 << 22;
/// Longest range a single [`mobius_segment`] call may request.
pub const MAX_SEGMENT: u64 = 1 << 26;

/// Primes ≤ n by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub(crate) fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// μ(n) for n ∈ [lo, hi].
pub fn mobius_segment(lo: u64, hi: u64) -> Result<Vec<i8>> {
    ensure(1 <= lo && lo <= hi, || format!("need 1 ≤ lo ≤ hi, got [{lo}, {hi}]"))?;
    if hi > MAX_N {
        return Err(Error::Resource(format!("hi = {hi} exceeds the sieve limit {MAX_N}")));
    }
    if hi - lo + 1 > MAX_SEGMENT {
        return Err(Error::Resource(format!("segment of {} values exceeds the budget of {MAX_SEGMENT}", hi - lo + 1)));
    }
    let primes = primes_up_to(isqrt(hi));
    let mut mu = vec![0i8; (hi - lo + 1) as usize];
    sieve_into(lo, &primes, &mut mu, &mut Vec::new(), &mut []);
    Ok(mu)
}

/// Fills `mu` with μ(lo + i). `prod` is scratch space; each `kfree[j]` gets
/// `true` where lo + i is divisible by the `kfree[j].0`-th power of a prime.
fn sieve_into(lo: u64, primes: &[u64], mu: &mut [i8], prod: &mut Vec<u64>, kfree: &mut [(u32, Vec<bool>)]) {
    let len = mu.len();
    let hi = lo + len as u64 - 1;
    mu.fill(1);
    prod.clear();
    prod.resize(len, 1);
    for &p in primes {
        if p * p > hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m <= hi {
            let i = (m - lo) as usize;
            mu[i] = -mu[i];
            prod[i] *= p;
            m += p;
        }
        let p2 = p * p;
        let mut m = lo.div_ceil(p2) * p2;
        while m <= hi {
            mu[(m - lo) as usize] = 0;
            m += p2;
        }
        for (k, hit) in kfree.iter_mut() {
            let Some(pk) = p.checked_pow(*k) else { continue };
            if pk > hi {
                continue;
            }
            let mut m = lo.div_ceil(pk) * pk;
            while m <= hi {
                hit[(m - lo) as usize] = true;
                m += pk;
            }
        }
    }
    // Whatever is left of n after removing the small primes is one prime above √hi.
    for (i, (m, &pr)) in mu.iter_mut().zip(prod.iter()).enumerate() {
        if *m != 0 && pr != lo + i as u64 {
            *m = -*m;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SieveCheckpoint {
    pub x: u64,
    /// M(x)
    pub mertens: i64,
    /// m(x) = Σ μ(n)/n
    pub m_weighted: f64,
    /// Q_k(x) for each requested k.
    pub qk: BTreeMap<u32, u64>,
}

struct SegmentOutput {
    mu: Vec<i8>,
    kfree_hits: Vec<(u32, Vec<bool>)>,
}

/// Exact M(x), m(x) and optionally Q_k(x) at each checkpoint, from one streaming pass.
pub fn mertens_checkpoints(limit: u64, checkpoints: &[u64], qk: &[u32]) -> Result<Vec<SieveCheckpoint>> {
    ensure(limit >= 1, || "limit must be at least 1".into())?;
    if limit > MAX_N {
        return Err(Error::Resource(format!("limit {limit} exceeds the sieve limit {MAX_N}")));
    }
    ensure(checkpoints.windows(2).all(|w| w[0] < w[1]), || "checkpoints must be strictly ascending".into())?;
    ensure(checkpoints.iter().all(|&x| 1 <= x && x <= limit), || format!("checkpoints must lie in [1, {limit}]"))?;
    ensure(qk.iter().all(|&k| k >= 2), || "k must satisfy k ≥ 2".into())?;
    let mut ks: Vec<u32> = qk.to_vec();
    ks.sort_unstable();
    ks.dedup();

    let primes = primes_up_to(isqrt(limit));
    let segments: Vec<u64> = (0..limit.div_ceil(SEGMENT_LEN)).map(|i| 1 + i * SEGMENT_LEN).collect();
    let batch = rayon::current_num_threads().max(1);

    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = 0usize;
    let mut mertens = 0i64;
    let mut m_sum = 0.0f64;
    let mut m_comp = 0.0f64;
    let mut counts = vec![0u64; ks.len()];

    for chunk in segments.chunks(batch) {
        let outputs: Vec<SegmentOutput> = chunk
            .par_iter()
            .map(|&lo| {
                let hi = (lo + SEGMENT_LEN - 1).min(limit);
                let len = (hi - lo + 1) as usize;
                let mut mu = vec![0i8; len];
                let mut prod = Vec::new();
                let mut kfree_hits: Vec<(u32, Vec<bool>)> =
                    ks.iter().filter(|&&k| k != 2).map(|&k| (k, vec![false; len])).collect();
                sieve_into(lo, &primes, &mut mu, &mut prod, &mut kfree_hits);
                SegmentOutput { mu, kfree_hits }
            })
            .collect();
        for (&lo, seg) in chunk.iter().zip(outputs) {
            for (i, &mu) in seg.mu.iter().enumerate() {
                let n = lo + i as u64;
                if mu != 0 {
                    mertens += mu as i64;
                    // Kahan summation
                    let term = mu as f64 / n as f64 - m_comp;
                    let t = m_sum + term;
                    m_comp = (t - m_sum) - term;
                    m_sum = t;
                }
                for (j, &k) in ks.iter().enumerate() {
                    let free = if k == 2 {
                        mu != 0
                    } else {
                        let hits = &seg.kfree_hits.iter().find(|(kk, _)| *kk == k).expect("k requested").1;
                        !hits[i]
                    };
                    counts[j] += free as u64;
                }
                while next < checkpoints.len() && checkpoints[next] == n {
                    out.push(SieveCheckpoint {
                        x: n,
                        mertens,
                        m_weighted: m_sum,
                        qk: ks.iter().copied().zip(counts.iter().copied()).collect(),
                    });
                    next += 1;
                }
            }
        }
        if next == checkpoints.len() {
            break;
        }
    }
    Ok(out)
}

/// CSV with columns x, mertens, m_weighted and one q{k} column per requested k.
pub fn checkpoints_csv(rows: &[SieveCheckpoint], ks: &[u32]) -> String {
    let mut s = String::from("x,mertens,m_weighted");
    for k in ks {
        s.push_str(&format!(",q{k}"));
    }
    s.push('\n');
    for r in rows {
        s.push_str(&format!("{},{},{:.16e}", r.x, r.mertens, r.m_weighted));
        for k in ks {
            s.push_str(&format!(",{}", r.qk.get(k).copied().unwrap_or(0)));
        }
        s.push('\n');
    }
    s
}

/// Parses `"a,b,c"` or `"10^a..10^b step *10"`.
pub fn parse_checkpoints(list: &str) -> Result<Vec<u64>> {
    let list = list.trim();
    let bad = |what: &str| Error::Parse { line: 1, message: format!("checkpoint list {list:?}: {what}") };
    let mut xs = if let Some((range, step)) = list.split_once("step") {
        let factor: u64 = step
            .trim()
            .strip_prefix('*')
            .ok_or_else(|| bad("step must be written as *F"))?
            .trim()
            .parse()
            .map_err(|_| bad("step factor is not an integer"))?;
        if factor < 2 {
            return Err(bad("step factor must be at least 2"));
        }
        let (a, b) = range.trim().split_once("..").ok_or_else(|| bad("range must be written as A..B"))?;
        let (lo, hi) =
            (parse_power(a).ok_or_else(|| bad("bad lower end"))?, parse_power(b).ok_or_else(|| bad("bad upper end"))?);
        let mut v = Vec::new();
        let mut x = lo;
        while x <= hi {
            v.push(x);
            x = match x.checked_mul(factor) {
                Some(n) => n,
                None => break,
            };
        }
        v
    } else {
        list.split(',')
            .map(|t| parse_power(t).ok_or_else(|| bad(&format!("{:?} is not a positive integer", t.trim()))))
            .collect::<Result<Vec<u64>>>()?
    };
    if xs.is_empty() {
        return Err(bad("no checkpoints"));
    }
    xs.sort_unstable();
    xs.dedup();
    Ok(xs)
}

/// An integer, optionally written as `10^e` or `m*10^e`.
fn parse_power(t: &str) -> Option<u64> {
    let t = t.trim();
    if let Some((base, exp)) = t.split_once('^') {
        let (mult, base) = match base.split_once('*') {
            Some((m, b)) => (m.trim().parse::<u64>().ok()?, b),
            None => (1, base),
        };
        let base: u64 = base.trim().parse().ok()?;
        let exp: u32 = exp.trim().parse().ok()?;
        base.checked_pow(exp)?.checked_mul(mult).filter(|&v| v > 0)
    } else {
        t.parse::<u64>().ok().filter(|&v| v > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn mobius_trial(mut n: u64) -> i8 {
        let mut mu = 1i8;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    }

    #[test]
    fn first_ten() {
        assert_eq!(mobius_segment(1, 10).unwrap(), vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(mobius_segment(2310, 2310).unwrap(), vec![-1]);
    }

    #[test]
    fn matches_trial_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=1_000_000u64);
            assert_eq!(mobius_segment(n, n).unwrap()[0], mobius_trial(n), "n = {n}");
        }
        let lo = 9_999_000_000u64;
        let seg = mobius_segment(lo, lo + 2000).unwrap();
        for (i, &m) in seg.iter().enumerate() {
            assert_eq!(m, mobius_trial(lo + i as u64));
        }
    }

    #[test]
    fn budget_and_range_errors() {
        assert!(matches!(mobius_segment(1, MAX_SEGMENT + 1), Err(Error::Resource(_))));
        assert!(matches!(mobius_segment(MAX_N, MAX_N + 1), Err(Error::Resource(_))));
        assert!(matches!(mobius_segment(0, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn small_mertens_values() {
        let rows = mertens_checkpoints(100, &[1, 10, 100], &[2, 3]).unwrap();
        let m: Vec<i64> = rows.iter().map(|r| r.mertens).collect();
        assert_eq!(m, vec![1, -1, 1]);
        assert_eq!(rows[1].qk[&2], 7);
        assert_eq!(rows[1].qk[&3], 9);
        assert_eq!(rows[0].qk[&2], 1);
    }

    #[test]
    fn checkpoints_must_ascend() {
        assert!(mertens_checkpoints(100, &[10, 5], &[]).is_err());
        assert!(mertens_checkpoints(100, &[10, 500], &[]).is_err());
    }

    #[test]
    fn parse_lists() {
        assert_eq!(parse_checkpoints("10,100, 5").unwrap(), vec![5, 10, 100]);
        assert_eq!(parse_checkpoints("10^2..10^5 step *10").unwrap(), vec![100, 1000, 10_000, 100_000]);
        assert_eq!(parse_checkpoints("11*10^6").unwrap(), vec![11_000_000]);
        assert!(parse_checkpoints("").is_err());
        assert!(parse_checkpoints("10^2..10^5 step 10").is_err());
        assert!(parse_checkpoints("ten").is_err());
    }

    #[test]
    fn csv_shape() {
        let rows = mertens_checkpoints(100, &[10, 100], &[2, 3]).unwrap();
        let csv = checkpoints_csv(&rows, &[2, 3]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,mertens,m_weighted,q2,q3");
        assert!(lines[1].starts_with("10,-1,"));
        assert!(lines[1].ends_with(",7,9"));
    }
}
