//! Packed bit vectors over F_2^m with the operations the solvers lean on:
//! Hamming distance, xor, weight, bit-lexicographic comparison, and
//! enumeration of Hamming balls.
//!
//! Bit `k` lives in word `k / 64` at position `k % 64` (so in the byte
//! serialization, bit 0 is the least significant bit of byte 0). Padding
//! bits past `len` are always zero, which makes word-wise equality agree
//! with vector equality.

use std::cmp::Ordering;
use std::fmt;

use rand::RngCore;

use crate::{Error, Result};

/// Hard cap on vector length; keeps ball enumeration and table sizes sane.
pub const MAX_LEN: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector of `len` bits.
    pub fn zero(len: usize) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::invalid(format!(
                "bit vector length must be in 1..={MAX_LEN}, got {len}"
            )));
        }
        Ok(BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        })
    }

    /// Uniformly random vector of `len` bits.
    pub fn random(len: usize, rng: &mut impl RngCore) -> Result<Self> {
        let mut v = Self::zero(len)?;
        v.randomize(rng);
        Ok(v)
    }

    /// Refills in place with uniform bits; same stream consumption as
    /// [`BitVector::random`].
    pub(crate) fn randomize(&mut self, rng: &mut impl RngCore) {
        for w in self.words.iter_mut() {
            *w = rng.next_u64();
        }
        self.mask_tail();
    }

    /// Parses a string of '0'/'1' characters; the first character is bit 0.
    pub fn from_str01(s: &str) -> Result<Self> {
        let mut v = Self::zero(s.len())?;
        for (k, ch) in s.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => v.set(k, true),
                _ => {
                    return Err(Error::invalid(format!(
                        "expected '0' or '1' at position {k}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// Bit string, bit 0 first.
    pub fn to_string01(&self) -> String {
        (0..self.len)
            .map(|k| if self.get(k) { '1' } else { '0' })
            .collect()
    }

    /// Deserializes `len` bits from exactly `ceil(len/8)` bytes.
    /// Rejects nonzero padding bits so the byte form stays canonical.
    pub fn from_bytes(len: usize, bytes: &[u8]) -> Result<Self> {
        let expect = len.div_ceil(8);
        if bytes.len() != expect {
            return Err(Error::invalid(format!(
                "expected {expect} payload bytes for {len} bits, got {}",
                bytes.len()
            )));
        }
        let mut v = Self::zero(len)?;
        for (i, &b) in bytes.iter().enumerate() {
            v.words[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let mut check = v.clone();
        check.mask_tail();
        if check.words != v.words {
            return Err(Error::invalid(
                "nonzero padding bits in serialized bit vector".to_string(),
            ));
        }
        Ok(v)
    }

    /// Canonical byte form: `ceil(len/8)` bytes, bit 0 = LSB of byte 0.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.words[i / 8] >> (8 * (i % 8))) as u8);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length 0 is rejected at construction
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len, "bit index {k} out of range {}", self.len);
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.len, "bit index {k} out of range {}", self.len);
        let mask = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, k: usize) {
        assert!(k < self.len, "bit index {k} out of range {}", self.len);
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    /// Number of set bits.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Hamming distance; whole 64-bit words per step.
    pub fn hamming(&self, other: &Self) -> Result<u32> {
        self.check_len(other)?;
        Ok(self.hamming_unchecked(other))
    }

    /// Bitwise xor into a fresh vector.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        Ok(out)
    }

    /// Bit-lexicographic order: the first differing bit index decides,
    /// 0 before 1. Not the numeric order of the underlying words.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_len(other)?;
        Ok(self.cmp_bits(other))
    }

    /// Notional complement (flips every bit, keeps padding zero).
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    /// Iterator over every vector of length `m` with weight <= `radius`,
    /// ordered by weight, then lexicographically by support set.
    pub fn ball(m: usize, radius: u32) -> Result<Ball> {
        if m == 0 || m > MAX_LEN {
            return Err(Error::invalid(format!(
                "ball dimension must be in 1..={MAX_LEN}, got {m}"
            )));
        }
        if radius as usize > m {
            return Err(Error::invalid(format!(
                "ball radius {radius} exceeds dimension {m}"
            )));
        }
        Ok(Ball {
            m,
            radius,
            weight: 0,
            positions: Vec::new(),
            started: false,
            done: false,
        })
    }

    #[inline]
    pub(crate) fn hamming_unchecked(&self, other: &Self) -> u32 {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    #[inline]
    pub(crate) fn cmp_bits(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let x = a ^ b;
            if x != 0 {
                let t = x.trailing_zeros();
                return if (a >> t) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Overwrites `self` with `a ^ b`; all three must share a length.
    pub(crate) fn xor_from(&mut self, a: &Self, b: &Self) {
        debug_assert_eq!(self.len, a.len);
        debug_assert_eq!(self.len, b.len);
        for ((w, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *w = x ^ y;
        }
    }

    pub(crate) fn copy_from(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    pub(crate) fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Word 0 as an integer; the whole vector when `len <= 64`.
    #[inline]
    pub(crate) fn low_word(&self) -> u64 {
        self.words[0]
    }

    /// Builds a short vector directly from an integer (bit k of `value`
    /// becomes bit k of the vector).
    pub(crate) fn from_word(len: usize, value: u64) -> Self {
        debug_assert!((1..=64).contains(&len));
        debug_assert!(len == 64 || value < (1u64 << len));
        BitVector {
            len,
            words: vec![value],
        }
    }

    pub(crate) fn assign_word(&mut self, value: u64) {
        debug_assert!(self.len <= 64);
        self.words[0] = value;
    }

    /// Reads `width <= 64` bits starting at `start` as an integer.
    pub(crate) fn get_bits(&self, start: usize, width: usize) -> u64 {
        debug_assert!((1..=64).contains(&width));
        debug_assert!(start + width <= self.len);
        let w = start / 64;
        let off = start % 64;
        let mut out = self.words[w] >> off;
        if off + width > 64 {
            out |= self.words[w + 1] << (64 - off);
        }
        if width < 64 {
            out &= (1u64 << width) - 1;
        }
        out
    }

    /// Writes `width <= 64` bits starting at `start` from an integer.
    pub(crate) fn set_bits(&mut self, start: usize, width: usize, value: u64) {
        debug_assert!((1..=64).contains(&width));
        debug_assert!(start + width <= self.len);
        debug_assert!(width == 64 || value < (1u64 << width));
        let w = start / 64;
        let off = start % 64;
        let mask = if width == 64 { !0u64 } else { (1u64 << width) - 1 };
        self.words[w] &= !(mask << off);
        self.words[w] |= value << off;
        if off + width > 64 {
            let spill = off + width - 64;
            let hi_mask = (1u64 << spill) - 1;
            self.words[w + 1] &= !hi_mask;
            self.words[w + 1] |= value >> (64 - off);
        }
    }

    #[inline]
    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            write!(f, "BitVector({})", self.to_string01())
        } else {
            write!(
                f,
                "BitVector(len={}, weight={})",
                self.len,
                self.weight()
            )
        }
    }
}

/// Enumerates B(0, radius) in F_2^m: weight 0, then weight 1, ... with the
/// support sets of each weight class in lexicographic order.
pub struct Ball {
    m: usize,
    radius: u32,
    weight: u32,
    positions: Vec<usize>,
    started: bool,
    done: bool,
}

impl Ball {
    fn emit(&self) -> BitVector {
        let mut v = BitVector::zero(self.m).expect("validated at construction");
        for &p in &self.positions {
            v.set(p, true);
        }
        v
    }

    /// Advances the support set to the next combination of the current
    /// weight; false when the weight class is exhausted.
    fn advance(&mut self) -> bool {
        let w = self.positions.len();
        let mut i = w;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.positions[i] < self.m - (w - i) {
                self.positions[i] += 1;
                for j in i + 1..w {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
                return true;
            }
        }
    }
}

impl Iterator for Ball {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.emit());
        }
        if !self.positions.is_empty() && self.advance() {
            return Some(self.emit());
        }
        // current weight class exhausted; open the next one
        self.weight += 1;
        if self.weight > self.radius {
            self.done = true;
            return None;
        }
        self.positions = (0..self.weight as usize).collect();
        Some(self.emit())
    }
}

/// Exact |B(0, radius)| in F_2^m, saturating at u64::MAX.
pub fn ball_size(m: usize, radius: u32) -> u64 {
    let mut total: u64 = 0;
    let mut term: u64 = 1; // C(m, 0)
    for w in 0..=radius as u64 {
        if w > 0 {
            // C(m, w) = C(m, w-1) * (m - w + 1) / w, exact at every step
            match term
                .checked_mul(m as u64 - w + 1)
                .map(|t| t / w)
            {
                Some(t) => term = t,
                None => return u64::MAX,
            }
        }
        total = match total.checked_add(term) {
            Some(t) => t,
            None => return u64::MAX,
        };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bv(s: &str) -> BitVector {
        BitVector::from_str01(s).unwrap()
    }

    /// Independent oracle: per-bit loop.
    fn hamming_naive(a: &BitVector, b: &BitVector) -> u32 {
        assert_eq!(a.len(), b.len());
        (0..a.len()).filter(|&k| a.get(k) != b.get(k)).count() as u32
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(bv("0000").hamming(&bv("0000")).unwrap(), 0);
        assert_eq!(bv("1010").hamming(&bv("0101")).unwrap(), 4);
        let a = bv("10110");
        let b = bv("00111");
        assert_eq!(hamming_naive(&a, &b), 2);
        assert_eq!(a.hamming(&b).unwrap(), 2);
    }

    #[test]
    fn hamming_length_mismatch() {
        assert!(bv("101").hamming(&bv("1010")).is_err());
    }

    #[test]
    fn xor_and_weight_examples() {
        assert_eq!(bv("1100").xor(&bv("1010")).unwrap(), bv("0110"));
        assert_eq!(bv("010011").weight(), 3);
        assert_eq!(bv("0000").weight(), 0);
    }

    #[test]
    fn compare_is_bit_lexicographic() {
        // first difference at bit index 2: 0 sorts before 1
        assert_eq!(bv("0001").compare(&bv("0010")).unwrap(), Ordering::Less);
        assert_eq!(bv("0010").compare(&bv("0001")).unwrap(), Ordering::Greater);
        assert_eq!(bv("0110").compare(&bv("0110")).unwrap(), Ordering::Equal);
        // bit 0 decides first, so this is Less even though the packed
        // word of "01" is numerically larger
        assert_eq!(bv("01").compare(&bv("10")).unwrap(), Ordering::Less);
    }

    #[test]
    fn string_round_trip() {
        let v = bv("1011001");
        assert_eq!(v.to_string01(), "1011001");
        assert!(BitVector::from_str01("10b1").is_err());
        assert!(BitVector::from_str01("").is_err());
    }

    #[test]
    fn byte_round_trip_and_padding() {
        let v = bv("101100111");
        let bytes = v.to_bytes();
        assert_eq!(bytes.len(), 2);
        // bit 0 is the LSB of byte 0
        assert_eq!(bytes[0], 0b1100_1101);
        assert_eq!(bytes[1], 0b0000_0001);
        let back = BitVector::from_bytes(9, &bytes).unwrap();
        assert_eq!(back, v);
        // nonzero padding must be rejected
        assert!(BitVector::from_bytes(9, &[0xff, 0xff]).is_err());
    }

    #[test]
    fn ball_small_examples() {
        let b: Vec<_> = BitVector::ball(3, 0).unwrap().collect();
        assert_eq!(b, vec![bv("000")]);

        let b: Vec<_> = BitVector::ball(3, 1).unwrap().collect();
        assert_eq!(b, vec![bv("000"), bv("100"), bv("010"), bv("001")]);

        let b: Vec<_> = BitVector::ball(4, 4).unwrap().collect();
        assert_eq!(b.len(), 16);
        let mut seen = std::collections::HashSet::new();
        for v in &b {
            assert!(seen.insert(v.clone()), "duplicate in ball enumeration");
        }
    }

    #[test]
    fn ball_weight_then_lex_order() {
        let b: Vec<_> = BitVector::ball(4, 2).unwrap().collect();
        let expect = [
            "0000", "1000", "0100", "0010", "0001", "1100", "1010", "1001",
            "0110", "0101", "0011",
        ];
        assert_eq!(b.len(), expect.len());
        for (got, want) in b.iter().zip(expect) {
            assert_eq!(got, &bv(want));
        }
    }

    #[test]
    fn ball_size_matches_enumeration() {
        for m in 1..=10usize {
            for r in 0..=m as u32 {
                let n = BitVector::ball(m, r).unwrap().count() as u64;
                assert_eq!(n, ball_size(m, r), "m={m} r={r}");
            }
        }
        assert!(BitVector::ball(4, 5).is_err());
    }

    #[test]
    fn get_set_bits_windows() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = BitVector::random(200, &mut rng).unwrap();
        for start in [0usize, 3, 60, 63, 64, 130] {
            for width in [1usize, 7, 17, 64] {
                if start + width > v.len() {
                    continue;
                }
                let got = v.get_bits(start, width);
                for k in 0..width {
                    assert_eq!((got >> k) & 1 == 1, v.get(start + k));
                }
            }
        }
        let mut w = BitVector::zero(200).unwrap();
        w.set_bits(62, 17, 0x1_55aa);
        for k in 0..17 {
            assert_eq!(w.get(62 + k), (0x1_55aau64 >> k) & 1 == 1);
        }
        assert_eq!(w.get_bits(62, 17), 0x1_55aa);
        assert_eq!(w.weight(), 0x1_55aau64.count_ones());
    }

    proptest! {
        #[test]
        fn hamming_matches_naive(len in 1usize..200, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = BitVector::random(len, &mut rng).unwrap();
            let b = BitVector::random(len, &mut rng).unwrap();
            prop_assert_eq!(a.hamming(&b).unwrap(), hamming_naive(&a, &b));
        }

        #[test]
        fn hamming_is_weight_of_xor(len in 1usize..200, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = BitVector::random(len, &mut rng).unwrap();
            let b = BitVector::random(len, &mut rng).unwrap();
            prop_assert_eq!(a.hamming(&b).unwrap(), a.xor(&b).unwrap().weight());
        }

        #[test]
        fn hamming_shift_invariance(len in 1usize..200, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = BitVector::random(len, &mut rng).unwrap();
            let b = BitVector::random(len, &mut rng).unwrap();
            let y = BitVector::random(len, &mut rng).unwrap();
            prop_assert_eq!(
                a.hamming(&b).unwrap(),
                a.xor(&y).unwrap().hamming(&b.xor(&y).unwrap()).unwrap()
            );
        }

        #[test]
        fn triangle_inequality(len in 1usize..120, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = BitVector::random(len, &mut rng).unwrap();
            let b = BitVector::random(len, &mut rng).unwrap();
            let c = BitVector::random(len, &mut rng).unwrap();
            prop_assert!(
                a.hamming(&c).unwrap() <= a.hamming(&b).unwrap() + b.hamming(&c).unwrap()
            );
        }

        #[test]
        fn compare_total_order(len in 1usize..150, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut vs: Vec<_> = (0..5)
                .map(|_| BitVector::random(len, &mut rng).unwrap())
                .collect();
            vs.sort_by(|a, b| a.cmp_bits(b));
            for w in vs.windows(2) {
                prop_assert_ne!(w[0].compare(&w[1]).unwrap(), Ordering::Greater);
            }
            // antisymmetry on a sample pair
            let o = vs[0].compare(&vs[4]).unwrap();
            prop_assert_eq!(vs[4].compare(&vs[0]).unwrap(), o.reverse());
        }

        #[test]
        fn byte_round_trip_random(len in 1usize..300, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = BitVector::random(len, &mut rng).unwrap();
            prop_assert_eq!(BitVector::from_bytes(len, &v.to_bytes()).unwrap(), v);
        }
    }
}
