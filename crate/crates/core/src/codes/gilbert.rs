//! Greedy codes with a full decoding table.
//!
//! `GilbertCode::build(m, d, r)` runs the classical greedy packing: sweep the
//! cube in bit-lexicographic order, keep a vector iff it is farther than `d`
//! from everything kept so far. The survivors are pairwise at distance d+1
//! or more and, because the sweep is exhaustive, every vector lies within
//! `d` of a survivor. Decoding is a flat table over all 2^m points, so `m`
//! is capped (default 26) and the whole thing stays exact and deterministic.

use std::sync::OnceLock;

use crate::bitvec::BitVector;
use crate::{Error, Result};

use super::{BinaryCode, CodeParams};

/// Largest `m` accepted without an explicit budget override.
pub const DEFAULT_TABLE_BUDGET: usize = 26;

/// Absolute ceiling; a table of 2^30 u32 entries is already 4 GiB.
const MAX_M: usize = 30;

pub struct GilbertCode {
    m: usize,
    d: u32,
    params: CodeParams,
    /// Codewords as m-bit integers, in construction order.
    codewords: Vec<u32>,
    lookup: Lookup,
    covering: OnceLock<u32>,
}

/// Decode table indexed by the m-bit value of a point. Entries hold the
/// codeword index, or the all-ones sentinel when nothing lies within the
/// lookup radius. Narrow entries are used whenever the code fits.
enum Lookup {
    U16(Vec<u16>),
    U32(Vec<u32>),
}

/// Borrowed view of the decode table entries.
pub enum LookupView<'a> {
    Narrow(&'a [u16]),
    Wide(&'a [u32]),
}

impl GilbertCode {
    pub fn build(m: usize, d: u32, lookup_radius: u32) -> Result<Self> {
        Self::build_with_budget(m, d, lookup_radius, DEFAULT_TABLE_BUDGET)
    }

    pub fn build_with_budget(m: usize, d: u32, lookup_radius: u32, budget: usize) -> Result<Self> {
        if m == 0 || d == 0 || (d as usize) > m {
            return Err(Error::invalid(format!(
                "greedy code needs 1 <= d <= m, got m={m} d={d}"
            )));
        }
        if lookup_radius > d {
            return Err(Error::invalid(format!(
                "lookup radius {lookup_radius} exceeds construction distance {d}"
            )));
        }
        if m > budget.min(MAX_M) {
            return Err(Error::TableBudget { m, budget: budget.min(MAX_M) });
        }

        let size = 1usize << m;
        let masks = masks_by_weight(m, d);

        // Greedy sweep. `alive` tracks vectors still at distance > d from
        // every codeword chosen so far; candidates are visited in bit-lex
        // order, which on m-bit integers is bit-reversed numeric order.
        let mut alive = vec![!0u64; size.div_ceil(64)];
        let mut codewords: Vec<u32> = Vec::new();
        for u in 0..size as u32 {
            let v = u.reverse_bits() >> (32 - m);
            if alive[(v / 64) as usize] >> (v % 64) & 1 == 1 {
                codewords.push(v);
                for group in &masks {
                    for &e in group {
                        let w = v ^ e;
                        alive[(w / 64) as usize] &= !(1u64 << (w % 64));
                    }
                }
            }
        }

        let k = codewords.len();
        let mut lookup = if k < u16::MAX as usize {
            Lookup::U16(vec![u16::MAX; size])
        } else {
            Lookup::U32(vec![u32::MAX; size])
        };
        // Fill nearest-first: weight class by weight class, codewords in
        // construction order within a class, never overwriting. An entry
        // written at weight w therefore points at a nearest codeword, and
        // same-distance ties go to the earliest-constructed one.
        for group in masks.iter().take(lookup_radius as usize + 1) {
            for (ci, &c) in codewords.iter().enumerate() {
                match &mut lookup {
                    Lookup::U16(t) => {
                        for &e in group {
                            let slot = &mut t[(c ^ e) as usize];
                            if *slot == u16::MAX {
                                *slot = ci as u16;
                            }
                        }
                    }
                    Lookup::U32(t) => {
                        for &e in group {
                            let slot = &mut t[(c ^ e) as usize];
                            if *slot == u32::MAX {
                                *slot = ci as u32;
                            }
                        }
                    }
                }
            }
        }

        let params = CodeParams {
            block_len: m,
            codeword_count: Some(k as u64),
            log2_k: (k as f64).log2(),
            design_distance: d + 1,
            decode_radius: lookup_radius,
        };
        Ok(GilbertCode {
            m,
            d,
            params,
            codewords,
            lookup,
            covering: OnceLock::new(),
        })
    }

    pub fn codeword_count(&self) -> usize {
        self.codewords.len()
    }

    /// Construction distance: pairwise distances are >= d+1 and the covering
    /// radius is <= d.
    pub fn construction_distance(&self) -> u32 {
        self.d
    }

    pub fn codeword(&self, i: usize) -> BitVector {
        BitVector::from_word(self.m, self.codewords[i] as u64)
    }

    pub fn codewords(&self) -> impl Iterator<Item = BitVector> + '_ {
        self.codewords.iter().map(|&v| BitVector::from_word(self.m, v as u64))
    }

    #[inline]
    pub(crate) fn codeword_value(&self, i: usize) -> u32 {
        self.codewords[i]
    }

    /// Codewords as m-bit integers in construction order, for serialization.
    pub fn codeword_values(&self) -> &[u32] {
        &self.codewords
    }

    /// Raw decode table, for serialization. Entries hold codeword indices
    /// with all-ones meaning undecodable within the lookup radius.
    pub fn lookup_view(&self) -> LookupView<'_> {
        match &self.lookup {
            Lookup::U16(t) => LookupView::Narrow(t),
            Lookup::U32(t) => LookupView::Wide(t),
        }
    }

    /// Index of the codeword the table maps this m-bit value to, if any.
    #[inline]
    pub fn decode_index(&self, value: u32) -> Option<u32> {
        debug_assert!((value as usize) < (1usize << self.m));
        match &self.lookup {
            Lookup::U16(t) => {
                let e = t[value as usize];
                (e != u16::MAX).then_some(e as u32)
            }
            Lookup::U32(t) => {
                let e = t[value as usize];
                (e != u32::MAX).then_some(e)
            }
        }
    }

    /// Exact covering radius, computed once by a breadth-first sweep of the
    /// cube from all codewords and cached. Always <= d by construction.
    pub fn covering_radius(&self) -> u32 {
        *self.covering.get_or_init(|| self.covering_radius_exact())
    }

    fn covering_radius_exact(&self) -> u32 {
        // Level-synchronous BFS on word-packed sets; the neighbor set along
        // bit b is a lane swap within words (b < 6) or a word-index xor.
        const LANE: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        let size = 1usize << self.m;
        let nwords = size.div_ceil(64);
        let tail_mask = if size.is_multiple_of(64) { !0u64 } else { (1u64 << (size % 64)) - 1 };
        let mut visited = vec![0u64; nwords];
        for &c in &self.codewords {
            visited[(c / 64) as usize] |= 1u64 << (c % 64);
        }
        let mut frontier = visited.clone();
        let mut next = vec![0u64; nwords];
        let mut level = 0u32;
        loop {
            let full = visited[..nwords - 1].iter().all(|&w| w == !0u64)
                && visited[nwords - 1] == tail_mask;
            if full {
                return level;
            }
            next.iter_mut().for_each(|w| *w = 0);
            for (b, &lane) in LANE.iter().enumerate().take(self.m) {
                let s = 1u32 << b;
                for (n, &f) in next.iter_mut().zip(&frontier) {
                    *n |= ((f & lane) << s) | ((f & !lane) >> s);
                }
            }
            for b in 6..self.m {
                let stride = 1usize << (b - 6);
                for j in 0..nwords {
                    next[j] |= frontier[j ^ stride];
                }
            }
            for ((f, n), v) in frontier.iter_mut().zip(&next).zip(&mut visited) {
                *f = n & !*v;
                *v |= *f;
            }
            level += 1;
        }
    }
}

impl BinaryCode for GilbertCode {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn decode_into(&self, x: &BitVector, out: &mut BitVector) -> bool {
        debug_assert_eq!(x.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        match self.decode_index(x.low_word() as u32) {
            Some(i) => {
                out.assign_word(self.codewords[i as usize] as u64);
                true
            }
            None => false,
        }
    }
}

/// All m-bit masks of weight 0..=max_w, grouped by weight.
fn masks_by_weight(m: usize, max_w: u32) -> Vec<Vec<u32>> {
    let mut groups: Vec<Vec<u32>> = (0..=max_w).map(|_| Vec::new()).collect();
    for mask in BitVector::ball(m, max_w).expect("checked by caller") {
        groups[mask.weight() as usize].push(mask.low_word() as u32);
    }
    groups
}
