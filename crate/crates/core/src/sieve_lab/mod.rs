//! Exact μ, M, m and Q_k by sieving, and the Dirichlet coefficient lemma.

mod dirichlet;
mod kfree;
mod mobius;

pub use dirichlet::{
    check_bound_run, dirichlet_coeff, dirichlet_coeff_factored, factor, BoundRunReport, BoundRunRow, MAX_D,
};
pub use kfree::{kfree_flags, kth_root, qk1, qk1_with, qk_count, qk_count_direct, s_k};
pub use mobius::{
    checkpoints_csv, mertens_checkpoints, mobius_segment, parse_checkpoints, primes_up_to, SieveCheckpoint, MAX_N,
    MAX_SEGMENT, SEGMENT_LEN,
};

/// Distinct values ⌊x/n⌋ for n ≥ 1, ascending.
pub fn floor_quotients(x: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut n = 1;
    while n <= x {
        let q = x / n;
        v.push(q);
        n = x / q + 1;
    }
    v.reverse();
    v
}

/// Σ_{n ≤ x} M(⌊x/n⌋), given M at every value of [`floor_quotients`]`(x)`.
pub fn mertens_identity_sum(x: u64, m_at: impl Fn(u64) -> i64) -> i64 {
    let mut s = 0i64;
    let mut n = 1;
    while n <= x {
        let q = x / n;
        let last = x / q;
        s += (last - n + 1) as i64 * m_at(q);
        n = last + 1;
    }
    s
}
