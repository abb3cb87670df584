//! Binary codes with bounded-radius decoders.
//!
//! Everything the solver needs from a code is the `BinaryCode` trait: a block
//! length, a guaranteed decoding radius, and a partial decode map that either
//! returns a codeword within that radius or reports failure. The
//! [`decode_with_radius`] wrapper turns the partial map into a total function
//! by falling back to the input itself, which is the form the shift-and-sort
//! passes consume.

mod concat;
mod gilbert;
mod rs;

pub use concat::ConcatCode;
pub use gilbert::{GilbertCode, LookupView, DEFAULT_TABLE_BUDGET};
pub use rs::RsCode;

use crate::bitvec::BitVector;
use crate::{Error, Result};

/// Summary parameters shared by every code implementation.
#[derive(Clone, Debug)]
pub struct CodeParams {
    /// Block length in bits.
    pub block_len: usize,
    /// Number of codewords, when it fits in a u64.
    pub codeword_count: Option<u64>,
    /// log2 of the number of codewords.
    pub log2_k: f64,
    /// Every distinct pair of codewords is at distance >= this.
    pub design_distance: u32,
    /// Radius within which decoding is guaranteed to succeed.
    pub decode_radius: u32,
}

pub trait BinaryCode: Send + Sync {
    fn params(&self) -> &CodeParams;

    fn block_len(&self) -> usize {
        self.params().block_len
    }

    fn decode_radius(&self) -> u32 {
        self.params().decode_radius
    }

    /// Writes some codeword within `decode_radius()` of `x` into `out` and
    /// returns true, or returns false leaving `out` unspecified. `x` and
    /// `out` must already have length `block_len()`.
    fn decode_into(&self, x: &BitVector, out: &mut BitVector) -> bool;

    /// Decodes `x` to a codeword within the guaranteed radius, if one exists.
    fn decode(&self, x: &BitVector) -> Result<Option<BitVector>> {
        check_block(self.params(), x)?;
        let mut out = BitVector::zero(x.len())?;
        if self.decode_into(x, &mut out) {
            Ok(Some(out))
        } else {
            Ok(None)
        }
    }
}

/// Total decode map at radius `r`: the decoded codeword when it lies within
/// distance `r` of `x`, otherwise `x` itself. Requires `r` to be covered by
/// the code's guarantee, so "no codeword within r" is a reliable answer and
/// the map is idempotent.
pub fn decode_with_radius(code: &dyn BinaryCode, r: u32, x: &BitVector) -> Result<BitVector> {
    if r > code.decode_radius() {
        return Err(Error::RadiusExceedsGuarantee {
            radius: r,
            guaranteed: code.decode_radius(),
        });
    }
    check_block(code.params(), x)?;
    let mut out = BitVector::zero(x.len())?;
    decode_with_radius_into(code, r, x, &mut out);
    Ok(out)
}

/// No-validation form of [`decode_with_radius`] for hot loops. `out` always
/// ends up holding the mapped vector.
pub(crate) fn decode_with_radius_into(
    code: &dyn BinaryCode,
    r: u32,
    x: &BitVector,
    out: &mut BitVector,
) {
    if !(code.decode_into(x, out) && x.hamming_unchecked(out) <= r) {
        out.copy_from(x);
    }
}

fn check_block(params: &CodeParams, x: &BitVector) -> Result<()> {
    if x.len() != params.block_len {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: params.block_len,
        });
    }
    Ok(())
}

/// The whole cube as a code: every vector is a codeword, decoding is the
/// identity at radius 0. This is the degenerate endpoint of the construction
/// (distance threshold 0) and turns the sort pass into exact-duplicate
/// detection without a lookup table.
pub struct IdentityCode {
    params: CodeParams,
}

impl IdentityCode {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > crate::bitvec::MAX_LEN {
            return Err(Error::invalid(format!("identity code length {m} out of range")));
        }
        Ok(IdentityCode {
            params: CodeParams {
                block_len: m,
                codeword_count: if m < 64 { Some(1u64 << m) } else { None },
                log2_k: m as f64,
                design_distance: 1,
                decode_radius: 0,
            },
        })
    }
}

impl BinaryCode for IdentityCode {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn decode_into(&self, x: &BitVector, out: &mut BitVector) -> bool {
        out.copy_from(x);
        true
    }
}
