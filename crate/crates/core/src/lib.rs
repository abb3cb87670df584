//! Closest-pair search in Hamming space by shift-decode-sort passes over
//! error-correcting codes, plus the code constructions and rate math the
//! solvers are built on.

pub mod bitvec;
pub mod codes;
mod error;
pub mod gf;
pub mod lightbulb;
pub mod rates;
pub mod solver;

pub use error::{Error, Result};

/// splitmix64 finalizer; used to derive independent sub-seeds.
pub(crate) fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
