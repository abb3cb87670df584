//! Concatenation of an outer Reed-Solomon code with an inner greedy code.
//!
//! Each outer symbol is replaced by an inner codeword (field element v maps
//! to the v-th inner codeword in construction order, so the inner code must
//! have at least q codewords). Decoding runs inner-then-outer: blocks whose
//! inner decode fails, or lands on an index with no field preimage, are
//! substituted with symbol 0 and left for the outer decoder to fix.
//!
//! The guaranteed radius comes from block counting, not half the design
//! distance: with r2 the inner radius, a block only yields a wrong outer
//! symbol once it has more than r2 bit errors, and the outer code absorbs
//! up to ceil(d1/2)-1 wrong symbols. Anything within
//! ceil(d1/2)*(r2+1) - 1 bit errors is therefore corrected.

use crate::bitvec::BitVector;
use crate::gf::FieldElem;
use crate::{Error, Result};

use super::gilbert::GilbertCode;
use super::rs::RsCode;
use super::{BinaryCode, CodeParams};

pub struct ConcatCode {
    outer: RsCode,
    inner: GilbertCode,
    params: CodeParams,
    m2: usize,
    /// Bits actually carrying blocks; the tail up to block_len is zero pad.
    used: usize,
}

impl ConcatCode {
    /// Composes the given outer and inner codes over `total_len` bits. The
    /// blocks occupy the first m1*m2 bits; any remainder is zero padding
    /// (pad errors count against the decode budget like any other bit).
    pub fn new(outer: RsCode, inner: GilbertCode, total_len: usize) -> Result<Self> {
        let q = outer.field().order();
        if inner.codeword_count() < q {
            return Err(Error::invalid(format!(
                "inner code has {} codewords, needs at least the field size {q}",
                inner.codeword_count()
            )));
        }
        let m1 = outer.block_len();
        let m2 = inner.block_len();
        let used = m1 * m2;
        if total_len < used {
            return Err(Error::invalid(format!(
                "total length {total_len} shorter than {m1} blocks of {m2} bits"
            )));
        }
        let d1 = outer.distance();
        let d2 = inner.construction_distance();
        // Effective per-block radius: beyond floor(d2/2) the inner map can
        // tie-break to a wrong codeword, so a wider table buys nothing here.
        let r2 = inner.decode_radius().min(d2 / 2);
        let r_guar = d1.div_ceil(2) * (r2 + 1) - 1;
        let t = outer.field().degree();
        let k1 = outer.message_len();
        let bits = t as usize * k1;
        let params = CodeParams {
            block_len: total_len,
            codeword_count: (bits < 64).then(|| 1u64 << bits),
            log2_k: bits as f64,
            design_distance: d1 * (d2 + 1),
            decode_radius: r_guar,
        };
        Ok(ConcatCode {
            outer,
            inner,
            params,
            m2,
            used,
        })
    }

    /// Grid search over inner dimensions, inner construction distances,
    /// field degrees, and outer rates for the code over `total_len` bits
    /// maximizing log2 K subject to a guaranteed decode radius of at least
    /// `required_radius`. Inner blocks are capped at 16 bits so every
    /// candidate table stays small.
    pub fn build(total_len: usize, required_radius: u32) -> Result<Self> {
        if total_len < 4 || (required_radius as usize) * 2 >= total_len {
            return Err(Error::invalid(format!(
                "need a block of at least 4 bits and radius below half of it, \
                 got len {total_len} radius {required_radius}"
            )));
        }
        struct Pick {
            score: usize,
            m2: usize,
            d2: u32,
            t: u32,
            k1: usize,
        }
        let mut best: Option<Pick> = None;
        for m2 in 2..=total_len.min(16) {
            let m1 = total_len / m2;
            for d2 in 1..=m2 as u32 {
                // Minimal odd d1 whose block count covers the radius:
                // ceil(d1/2) blocks of r2+1 errors must exceed the budget.
                let per_block = d2 / 2 + 1;
                let half_blocks = (required_radius / per_block + 1) as usize;
                let d1 = 2 * half_blocks - 1;
                if d1 > m1 {
                    continue;
                }
                let k1 = m1 - d1 + 1;
                let inner = GilbertCode::build(m2, d2, d2 / 2)?;
                let k2 = inner.codeword_count();
                for t in 2..=16u32 {
                    let q = 1usize << t;
                    if q > k2 {
                        break;
                    }
                    if q <= m1 {
                        continue;
                    }
                    let score = k1 * t as usize;
                    let better = match &best {
                        None => true,
                        Some(b) => score > b.score,
                    };
                    if better {
                        best = Some(Pick { score, m2, d2, t, k1 });
                    }
                }
            }
        }
        let Some(pick) = best else {
            return Err(Error::Infeasible(format!(
                "no outer/inner split of {total_len} bits reaches decode radius {required_radius}"
            )));
        };
        let inner = GilbertCode::build(pick.m2, pick.d2, pick.d2 / 2)?;
        let outer = RsCode::new(pick.t, total_len / pick.m2, pick.k1)?;
        let code = Self::new(outer, inner, total_len)?;
        debug_assert!(code.decode_radius() >= required_radius);
        Ok(code)
    }

    pub fn outer(&self) -> &RsCode {
        &self.outer
    }

    pub fn inner(&self) -> &GilbertCode {
        &self.inner
    }

    /// Bits carrying code blocks; positions at and above this are zero pad.
    pub fn used_len(&self) -> usize {
        self.used
    }

    pub fn message_len(&self) -> usize {
        self.outer.message_len()
    }

    pub fn encode(&self, msg: &[FieldElem]) -> Result<BitVector> {
        let symbols = self.outer.encode(msg)?;
        let mut out = BitVector::zero(self.params.block_len)?;
        for (b, &s) in symbols.iter().enumerate() {
            out.set_bits(b * self.m2, self.m2, self.inner.codeword_value(s as usize) as u64);
        }
        Ok(out)
    }
}

impl BinaryCode for ConcatCode {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn decode_into(&self, x: &BitVector, out: &mut BitVector) -> bool {
        debug_assert_eq!(x.len(), self.params.block_len);
        let q = self.outer.field().order() as u32;
        let m1 = self.outer.block_len();
        let mut symbols: Vec<FieldElem> = Vec::with_capacity(m1);
        for b in 0..m1 {
            let raw = x.get_bits(b * self.m2, self.m2) as u32;
            let sym = match self.inner.decode_index(raw) {
                Some(i) if i < q => i as FieldElem,
                _ => 0,
            };
            symbols.push(sym);
        }
        let msg = match self.outer.decode(&symbols).expect("lengths match") {
            Some(msg) => msg,
            None => return false,
        };
        let re = self.outer.encode(&msg).expect("lengths match");
        out.clear();
        for (b, &s) in re.iter().enumerate() {
            out.set_bits(b * self.m2, self.m2, self.inner.codeword_value(s as usize) as u64);
        }
        x.hamming_unchecked(out) <= self.params.decode_radius
    }
}
