//! Closest-pair engines.
//!
//! All variants share one core pass: xor every vector with a shift y, map the
//! results through a radius-gated decoder, stable-sort the decoded keys
//! bit-lexicographically, and measure the original distance of each adjacent
//! pair. A shift is "good" for the closest pair when both endpoints decode to
//! the same codeword and nobody else does; the sort then makes them adjacent.
//! The variants differ only in how shifts are produced: random trials, an
//! exhaustive ball around zero (deterministic), or random trials at a wider
//! radius (gapped), plus a geometric radius search when the minimum distance
//! is unknown.

mod bichromatic;
mod cache;
mod engine;
mod deterministic;
mod planted;
mod randomized;

pub use bichromatic::solve_bichromatic;
pub use deterministic::{census_floor, good_shift_census, solve_deterministic};
pub use planted::generate_planted;
pub use randomized::{search_dmin, solve_gapped, solve_randomized};

use std::sync::Arc;

use crate::bitvec::BitVector;
use crate::codes::{GilbertCode, DEFAULT_TABLE_BUDGET};
use crate::{Error, Result};

use engine::Candidate;

/// Process-wide memoized greedy-code builder; the solvers draw from the same
/// pool, so callers inspecting a code after a solve pay nothing extra.
pub fn shared_gilbert(m: usize, d: u32, radius: u32, budget: usize) -> Result<Arc<GilbertCode>> {
    cache::gilbert(m, d, radius, budget)
}

/// A closest-pair input: n vectors of equal length m.
pub struct Instance {
    m: usize,
    vectors: Vec<BitVector>,
    meta: Option<PlantedMeta>,
}

/// Ground truth recorded by instance generators, for harnesses only; solver
/// paths never read it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlantedMeta {
    pub i: usize,
    pub j: usize,
    pub dist: u32,
}

impl Instance {
    pub fn new(vectors: Vec<BitVector>) -> Result<Self> {
        if vectors.len() < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 vectors, got {}",
                vectors.len()
            )));
        }
        let m = vectors[0].len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                left: bad.len(),
                right: m,
            });
        }
        Ok(Instance {
            m,
            vectors,
            meta: None,
        })
    }

    pub fn with_meta(vectors: Vec<BitVector>, meta: PlantedMeta) -> Result<Self> {
        let mut inst = Self::new(vectors)?;
        if meta.i >= inst.n() || meta.j >= inst.n() || meta.i == meta.j {
            return Err(Error::invalid("planted indices out of range".to_string()));
        }
        inst.meta = Some(meta);
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    pub fn meta(&self) -> Option<PlantedMeta> {
        self.meta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    BruteForce,
    SortCheck,
    Randomized,
    Gapped,
    Deterministic,
    Search,
    Bichromatic,
    LightBulb,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute",
            Algorithm::SortCheck => "sort-check",
            Algorithm::Randomized => "rand",
            Algorithm::Gapped => "gapped",
            Algorithm::Deterministic => "det",
            Algorithm::Search => "search",
            Algorithm::Bichromatic => "bichrom",
            Algorithm::LightBulb => "lightbulb",
        }
    }
}

/// A found pair. `i < j` index the same instance, except for the bichromatic
/// solver where `i` indexes the red set and `j` the blue set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub i: usize,
    pub j: usize,
    pub dist: u32,
    pub trials_used: u64,
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    Gilbert,
    Concat,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Decode radius override; defaults derive from the distance arguments.
    pub radius: Option<u32>,
    pub code_kind: CodeKind,
    /// Trial budget override; defaults to the analytic count.
    pub trial_budget: Option<u64>,
    pub seed: u64,
    /// Worker threads; 0 uses the global thread pool.
    pub workers: usize,
    /// Growth factor for the radius search, in (0, 1].
    pub epsilon: f64,
    /// Stop the trial loop once a pair at the target distance is found.
    pub early_exit: bool,
    /// Only measure adjacent pairs whose decoded keys are equal.
    pub equal_keys_only: bool,
    /// Largest m allowed a full lookup table.
    pub table_budget: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            radius: None,
            code_kind: CodeKind::Gilbert,
            trial_budget: None,
            seed: 0,
            workers: 0,
            epsilon: 1.0,
            early_exit: true,
            equal_keys_only: false,
            table_budget: DEFAULT_TABLE_BUDGET,
        }
    }
}

/// Exact minimum over all pairs; the oracle everything else is tested
/// against. Ties go to the lexicographically smallest (i, j).
pub fn brute_force(inst: &Instance) -> PairResult {
    let v = inst.vectors();
    let mut best = Candidate::NONE;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = v[i].hamming_unchecked(&v[j]);
            if d < best.dist {
                best = Candidate {
                    dist: d,
                    i: i as u32,
                    j: j as u32,
                };
            }
        }
    }
    best.into_result(Algorithm::BruteForce, 1, None)
}

/// One sort-and-check pass over externally decoded keys: stable-sorts
/// indices by the keys and returns the closest original pair among the n-1
/// adjacent ones.
pub fn sort_and_check(inst: &Instance, decoded: &[BitVector]) -> Result<PairResult> {
    if decoded.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            left: decoded.len(),
            right: inst.n(),
        });
    }
    if let Some(bad) = decoded.iter().find(|v| v.len() != inst.m()) {
        return Err(Error::DimensionMismatch {
            left: bad.len(),
            right: inst.m(),
        });
    }
    let mut order: Vec<u32> = (0..inst.n() as u32).collect();
    let cand = engine::check_sorted(inst.vectors(), decoded, &mut order, false);
    Ok(cand.into_result(Algorithm::SortCheck, 1, None))
}
