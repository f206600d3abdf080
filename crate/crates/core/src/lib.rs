//! Explicit RH-conditional bounds for ζ(s), M(x) and k-free counts, with the
//! numerical checks that back them.

// `!(a < b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound_engine;
pub mod error;
pub mod perron_check;
pub mod quad;
pub mod sieve_lab;
pub mod table_optimizer;
pub mod zeta_numerics;

pub use error::{Error, Result};
