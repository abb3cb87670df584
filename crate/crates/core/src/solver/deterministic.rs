//! Derandomized solver: instead of sampling shifts, enumerate every vector
//! in a ball whose radius is the covering radius of the shift code. Some
//! shift in that ball recenters the closest pair onto a common codeword, so
//! a full sweep is guaranteed to find it. `good_shift_census` checks the
//! counting argument behind that guarantee on small instances.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bitvec::BitVector;
use crate::codes::{BinaryCode, GilbertCode, IdentityCode};
use crate::{Error, Result};

use super::engine::{self, Candidate, Scratch};
use super::randomized::check_radius;
use super::{brute_force, cache, Algorithm, CodeKind, Instance, PairResult, SolveConfig};

/// Shifts per parallel batch; affects only how far past an early exit the
/// sweep may run, never the result.
const CHUNK: usize = 128;

/// Guaranteed solver for distances up to `dmin`: sweeps all shifts in
/// Ball(covering radius) in weight-then-lex order and returns the best pair,
/// exactly as the randomized pass would if it got lucky on every draw.
/// Needs no randomness, so the result carries no seed.
pub fn solve_deterministic(inst: &Instance, dmin: u32, cfg: &SolveConfig) -> Result<PairResult> {
    if cfg.code_kind == CodeKind::Concat {
        return Err(Error::invalid(
            "deterministic sweep needs an exact covering radius; use the table code",
        ));
    }
    let m = inst.m();
    let radius = cfg.radius.unwrap_or_else(|| dmin.div_ceil(2));
    check_radius(dmin, radius, m)?;
    let (code, cover): (Arc<dyn BinaryCode>, u32) = if radius == 0 {
        (Arc::new(IdentityCode::new(m)?), 0)
    } else {
        let g = cache::gilbert(m, (dmin + 1).max(2 * radius), radius, cfg.table_budget)?;
        let cover = g.covering_radius();
        (g, cover)
    };

    let vectors = inst.vectors();
    let equal_only = cfg.equal_keys_only;
    let stop = cfg.early_exit.then_some(dmin);
    let code_ref: &dyn BinaryCode = code.as_ref();

    let mut shifts = BitVector::ball(m, cover)?;
    let (best, used) = engine::with_pool(cfg.workers, || {
        let mut best = Candidate::NONE;
        let mut used = 0u64;
        let mut batch: Vec<BitVector> = Vec::with_capacity(CHUNK);
        let mut results: Vec<Candidate> = Vec::new();
        loop {
            batch.clear();
            batch.extend(shifts.by_ref().take(CHUNK));
            if batch.is_empty() {
                break;
            }
            batch
                .par_iter()
                .map_init(
                    || Scratch::new(m, vectors.len()),
                    |s, y| {
                        s.y.copy_from(y);
                        engine::shift_pass(vectors, code_ref, radius, s, equal_only)
                    },
                )
                .collect_into_vec(&mut results);
            for cand in &results {
                used += 1;
                if *cand < best {
                    best = *cand;
                }
                if stop.is_some_and(|th| cand.dist <= th) {
                    return (best, used);
                }
            }
        }
        (best, used)
    })?;
    engine::verify(vectors, best)?;
    Ok(best.into_result(Algorithm::Deterministic, used, None))
}

/// Counts the shifts y under which the closest pair lands on a shared decode
/// key that no third vector shares, i.e. the shifts where one sorted pass is
/// guaranteed to surface the pair. Exhaustive over all 2^m shifts, so only
/// sensible for small m; `radius` may be anything up to the code's own.
pub fn good_shift_census(inst: &Instance, code: &GilbertCode, radius: u32) -> Result<u64> {
    let m = inst.m();
    if m > 20 {
        return Err(Error::invalid(format!(
            "census enumerates all 2^m shifts; m = {m} is too large"
        )));
    }
    if code.block_len() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: code.block_len(),
        });
    }
    if radius > code.decode_radius() {
        return Err(Error::invalid(format!(
            "census radius {radius} exceeds the code's decode radius {}",
            code.decode_radius()
        )));
    }
    let truth = brute_force(inst);
    let values: Vec<u32> = inst
        .vectors()
        .iter()
        .map(|v| v.low_word() as u32)
        .collect();
    let (vi, vj) = (values[truth.i], values[truth.j]);

    // Total decode map: nearest codeword if within `radius`, else identity.
    let key = |w: u32| -> u32 {
        match code.decode_index(w) {
            Some(c) => {
                let cw = code.codeword_value(c as usize);
                if (w ^ cw).count_ones() <= radius {
                    cw
                } else {
                    w
                }
            }
            None => w,
        }
    };

    let mut good = 0u64;
    for y in 0..(1u64 << m) as u32 {
        let k = key(vi ^ y);
        if k != key(vj ^ y) {
            continue;
        }
        let collision = values
            .iter()
            .enumerate()
            .any(|(t, &v)| t != truth.i && t != truth.j && key(v ^ y) == k);
        if !collision {
            good += 1;
        }
    }
    Ok(good)
}

/// Lower bound the census certifies: each codeword contributes one good
/// shift per way of splitting the pair's difference across the decode
/// radius, provided third vectors are far enough away to never collide.
pub fn census_floor(codeword_count: u64, dmin: u32) -> u64 {
    let take = dmin / 2;
    let mut ways = 1u64;
    for k in 0..take as u64 {
        ways = ways * (dmin as u64 - k) / (k + 1);
    }
    codeword_count * ways
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::ball_size;
    use crate::solver::generate_planted;

    #[test]
    fn matches_brute_force_exactly() {
        for seed in 0..30u64 {
            let inst = generate_planted(24, 15, 2, 4, 2000 + seed).unwrap();
            let truth = brute_force(&inst);
            let r = solve_deterministic(&inst, 2, &SolveConfig::default()).unwrap();
            assert_eq!((r.i, r.j, r.dist), (truth.i, truth.j, truth.dist), "seed {seed}");
            assert_eq!(r.algorithm, Algorithm::Deterministic);
            assert_eq!(r.seed, None);
        }
    }

    #[test]
    fn full_sweep_visits_the_whole_ball() {
        let inst = generate_planted(16, 14, 2, 4, 9).unwrap();
        let cfg = SolveConfig { early_exit: false, ..SolveConfig::default() };
        let r = solve_deterministic(&inst, 2, &cfg).unwrap();
        let code = cache::gilbert(14, 3, 1, cfg.table_budget).unwrap();
        assert_eq!(r.trials_used, ball_size(14, code.covering_radius()));
    }

    #[test]
    fn duplicates_need_only_the_zero_shift() {
        let inst = generate_planted(16, 12, 0, 2, 3).unwrap();
        let r = solve_deterministic(&inst, 0, &SolveConfig::default()).unwrap();
        assert_eq!(r.dist, 0);
        assert_eq!(r.trials_used, 1);
    }

    #[test]
    fn rejects_large_census_and_concat_kind() {
        let inst = generate_planted(8, 13, 2, 4, 1).unwrap();
        let cfg = SolveConfig { code_kind: CodeKind::Concat, ..SolveConfig::default() };
        assert!(solve_deterministic(&inst, 2, &cfg).is_err());

        let big = generate_planted(4, 21, 2, 4, 1).unwrap();
        let code = GilbertCode::build(21, 3, 1).unwrap();
        assert!(good_shift_census(&big, &code, 1).is_err());
    }

    #[test]
    fn census_counts_all_shifts_for_duplicates() {
        // Two identical vectors share every key under every shift, and with
        // n = 2 no third vector can collide: all 2^m shifts are good.
        let inst = generate_planted(2, 10, 0, 2, 5).unwrap();
        let code = GilbertCode::build(10, 1, 0).unwrap();
        assert_eq!(good_shift_census(&inst, &code, 0).unwrap(), 1 << 10);
    }

    #[test]
    fn census_meets_the_counting_floor() {
        // Far-apart third vectors never share a key with the pair, so every
        // (codeword, split) combination survives; the bound must hold both
        // for the minimal construction and the solver's wider default.
        for (d, seed) in [(2u32, 11u64), (3, 12)] {
            let inst = generate_planted(8, 13, 2, 4, seed).unwrap();
            let code = GilbertCode::build(13, d, 1).unwrap();
            let got = good_shift_census(&inst, &code, 1).unwrap();
            let floor = census_floor(code.codeword_count() as u64, 2);
            assert!(got >= floor, "d={d}: census {got} below floor {floor}");
        }
    }
}
