//! Random-shift solvers: the main randomized pass, the wider-radius gapped
//! variant, and the geometric search used when the minimum distance is
//! unknown.

use std::sync::Arc;

use crate::codes::{BinaryCode, ConcatCode, IdentityCode};
use crate::rates;
use crate::{mix_seed, Error, Result};

use super::engine::{self, Candidate, Scratch};
use super::{cache, Algorithm, CodeKind, Instance, PairResult, SolveConfig};

/// Code used to key the shift-decode pass. Radius 0 needs no table at all:
/// the whole cube decoded at radius 0 is the identity, and the sort pass
/// degenerates to exact-duplicate grouping.
pub(crate) fn build_shift_code(
    m: usize,
    construction_d: u32,
    radius: u32,
    cfg: &SolveConfig,
) -> Result<Arc<dyn BinaryCode>> {
    if radius == 0 {
        return Ok(Arc::new(IdentityCode::new(m)?));
    }
    match cfg.code_kind {
        CodeKind::Gilbert => {
            // dmin = m makes the nominal construction distance m+1; clamp
            // rather than reject, soundness never depends on the code.
            let d = construction_d.min(m as u32);
            Ok(cache::gilbert(m, d, radius, cfg.table_budget)?)
        }
        CodeKind::Concat => Ok(Arc::new(ConcatCode::build(m, radius)?)),
    }
}

/// Runs `trials` random-shift passes with per-trial seeds derived from
/// `seed`, returning the best candidate and the number of trials executed.
pub(crate) fn run_shift_trials(
    inst: &Instance,
    code: &dyn BinaryCode,
    radius: u32,
    trials: u64,
    seed: u64,
    stop_at: Option<u32>,
    cfg: &SolveConfig,
) -> Result<(Candidate, u64)> {
    let (m, n) = (inst.m(), inst.n());
    let vectors = inst.vectors();
    let equal_only = cfg.equal_keys_only;
    engine::run_trials(
        trials,
        || Scratch::new(m, n),
        |t, s: &mut Scratch| {
            let mut rng = engine::trial_rng(seed, t);
            s.y.randomize(&mut rng);
            engine::shift_pass(vectors, code, radius, s, equal_only)
        },
        stop_at,
        cfg.workers,
    )
}

pub(crate) fn check_radius(dmin: u32, radius: u32, m: usize) -> Result<()> {
    if dmin as usize > m {
        return Err(Error::invalid(format!("dmin {dmin} exceeds dimension {m}")));
    }
    if 2 * radius < dmin {
        return Err(Error::invalid(format!(
            "decode radius {radius} cannot cover half of distance {dmin}"
        )));
    }
    Ok(())
}

/// Finds the closest pair assuming its distance is (at most) `dmin`,
/// with success probability at least 1 - 1/n^2 when `dmin` is correct and
/// the minimizing pair is unique. Reported distances are always measured on
/// the originals, so a wrong `dmin` can cost recall but never soundness.
pub fn solve_randomized(inst: &Instance, dmin: u32, cfg: &SolveConfig) -> Result<PairResult> {
    let m = inst.m();
    let radius = cfg.radius.unwrap_or_else(|| dmin.div_ceil(2));
    check_radius(dmin, radius, m)?;
    // Greedy removal at dmin+1 keeps pairwise distances >= dmin+2, so the
    // ceil(dmin/2) radius decodes uniquely even for odd dmin. A radius
    // override widens the construction to keep that uniqueness.
    let code = build_shift_code(m, (dmin + 1).max(2 * radius), radius, cfg)?;
    let trials = match cfg.trial_budget {
        Some(t) => t.max(1),
        None => rates::trial_count(m as u32, inst.n(), code.params().log2_k, dmin, radius)?,
    };
    let stop = cfg.early_exit.then_some(dmin);
    let (cand, used) = run_shift_trials(inst, code.as_ref(), radius, trials, cfg.seed, stop, cfg)?;
    engine::verify(inst.vectors(), cand)?;
    Ok(cand.into_result(Algorithm::Randomized, used, Some(cfg.seed)))
}

/// Gapped variant: all non-minimal distances are promised to be above `d2`,
/// which allows decoding at the wider radius floor(d2/2) and cuts the trial
/// count by the volume of midpoints the wider ball admits.
pub fn solve_gapped(inst: &Instance, dmin: u32, d2: u32, cfg: &SolveConfig) -> Result<PairResult> {
    let m = inst.m();
    if d2 <= dmin {
        return Err(Error::invalid(format!(
            "gap distance {d2} must exceed the minimum distance {dmin}"
        )));
    }
    if d2 as usize > m {
        return Err(Error::invalid(format!("gap distance {d2} exceeds dimension {m}")));
    }
    let radius = cfg.radius.unwrap_or(d2 / 2);
    check_radius(dmin, radius, m)?;
    let code = build_shift_code(m, (d2 + 1).max(2 * radius), radius, cfg)?;
    let trials = match cfg.trial_budget {
        Some(t) => t.max(1),
        None => {
            rates::trial_count_gapped(m as u32, inst.n(), code.params().log2_k, dmin, radius)?
        }
    };
    let stop = cfg.early_exit.then_some(dmin);
    let (cand, used) = run_shift_trials(inst, code.as_ref(), radius, trials, cfg.seed, stop, cfg)?;
    engine::verify(inst.vectors(), cand)?;
    Ok(cand.into_result(Algorithm::Gapped, used, Some(cfg.seed)))
}

/// Unknown-distance search: sweep the decode radius geometrically
/// (r <- max(r+1, floor((1+eps) r))), run a full randomized pass at each r,
/// and stop once the best distance seen is at most 2r, which certifies it.
/// Each iteration uses the conservative one-shift-per-codeword trial count
/// since the true distance (hence the midpoint count) is unknown.
pub fn search_dmin(inst: &Instance, cfg: &SolveConfig) -> Result<(u32, PairResult)> {
    let eps = cfg.epsilon;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    let m = inst.m();
    let mut r = 1u32;
    let mut best = Candidate::NONE;
    let mut total = 0u64;
    loop {
        let construction = (2 * r).min(m as u32);
        let radius = r.min(construction);
        let code = build_shift_code(m, construction, radius, cfg)?;
        let trials = match cfg.trial_budget {
            Some(t) => t.max(1),
            None => rates::trial_count(m as u32, inst.n(), code.params().log2_k, 0, 0)?,
        };
        // No early exit inside an iteration: the stop rule below consumes
        // this round's full success-probability budget.
        let seed_r = mix_seed(cfg.seed, r as u64);
        let (cand, used) =
            run_shift_trials(inst, code.as_ref(), radius, trials, seed_r, None, cfg)?;
        total += used;
        if cand < best {
            best = cand;
        }
        if best.dist as u64 <= 2 * r as u64 {
            engine::verify(inst.vectors(), best)?;
            let result = best.into_result(Algorithm::Search, total, Some(cfg.seed));
            return Ok((result.dist, result));
        }
        r = (r + 1).max(((1.0 + eps) * r as f64).floor() as u32);
        if r as usize > m {
            // Unreachable once any distance has been measured (always <= m);
            // only equal-keys-only filtering can starve the loop.
            return Err(Error::Infeasible(
                "radius search exhausted without measuring any pair".to_string(),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{brute_force, generate_planted};

    #[test]
    fn finds_planted_duplicates_in_one_trial() {
        let inst = generate_planted(16, 12, 0, 2, 41).unwrap();
        let meta = inst.meta().unwrap();
        let r = solve_randomized(&inst, 0, &SolveConfig::default()).unwrap();
        assert_eq!((r.i, r.j, r.dist), (meta.i, meta.j, 0));
        assert_eq!(r.trials_used, 1);
        assert_eq!(r.algorithm, Algorithm::Randomized);
    }

    #[test]
    fn finds_planted_pair_across_seeds() {
        let mut hits = 0;
        for seed in 0..20u64 {
            let inst = generate_planted(24, 15, 2, 4, 100 + seed).unwrap();
            let truth = brute_force(&inst);
            let cfg = SolveConfig { seed, ..SolveConfig::default() };
            let r = solve_randomized(&inst, 2, &cfg).unwrap();
            if (r.i, r.j, r.dist) == (truth.i, truth.j, truth.dist) {
                hits += 1;
            }
        }
        assert!(hits >= 18, "only {hits}/20 matched the oracle");
    }

    #[test]
    fn odd_dmin_uses_wider_radius_and_succeeds() {
        let mut hits = 0;
        for seed in 0..10u64 {
            let inst = generate_planted(24, 18, 3, 5, 500 + seed).unwrap();
            let truth = brute_force(&inst);
            assert_eq!(truth.dist, 3);
            let cfg = SolveConfig { seed, ..SolveConfig::default() };
            let r = solve_randomized(&inst, 3, &cfg).unwrap();
            if (r.i, r.j) == (truth.i, truth.j) {
                hits += 1;
            }
        }
        assert!(hits >= 9, "only {hits}/10");
    }

    #[test]
    fn underestimated_dmin_never_underreports() {
        for seed in 0..10u64 {
            let inst = generate_planted(16, 14, 2, 4, 900 + seed).unwrap();
            let truth = brute_force(&inst);
            let cfg = SolveConfig { seed, ..SolveConfig::default() };
            let r = solve_randomized(&inst, 1, &cfg).unwrap();
            assert!(r.dist >= truth.dist);
            let real = inst.vectors()[r.i].hamming(&inst.vectors()[r.j]).unwrap();
            assert_eq!(r.dist, real);
        }
    }

    #[test]
    fn trials_match_formula_without_early_exit() {
        let inst = generate_planted(16, 14, 2, 4, 7).unwrap();
        let cfg = SolveConfig { early_exit: false, ..SolveConfig::default() };
        let r = solve_randomized(&inst, 2, &cfg).unwrap();
        let code = cache::gilbert(14, 3, 1, cfg.table_budget).unwrap();
        let expect = rates::trial_count(14, 16, code.params().log2_k, 2, 1).unwrap();
        assert_eq!(r.trials_used, expect);
    }

    #[test]
    fn identical_results_across_worker_counts() {
        let inst = generate_planted(24, 15, 2, 4, 77).unwrap();
        let base = SolveConfig { seed: 5, ..SolveConfig::default() };
        let reference = solve_randomized(&inst, 2, &base).unwrap();
        for workers in [1usize, 2, 5] {
            let cfg = SolveConfig { workers, ..base.clone() };
            assert_eq!(solve_randomized(&inst, 2, &cfg).unwrap(), reference);
        }
    }

    #[test]
    fn rejects_bad_radius_and_gap_arguments() {
        let inst = generate_planted(8, 13, 2, 4, 1).unwrap();
        let cfg = SolveConfig { radius: Some(0), ..SolveConfig::default() };
        assert!(solve_randomized(&inst, 2, &cfg).is_err());
        assert!(solve_gapped(&inst, 2, 2, &SolveConfig::default()).is_err());
        assert!(solve_gapped(&inst, 2, 14, &SolveConfig::default()).is_err());
    }

    #[test]
    fn gapped_matches_oracle_on_gapped_instances() {
        let mut hits = 0;
        for seed in 0..10u64 {
            let inst = generate_planted(24, 20, 2, 6, 300 + seed).unwrap();
            let truth = brute_force(&inst);
            let cfg = SolveConfig { seed, ..SolveConfig::default() };
            let r = solve_gapped(&inst, 2, 5, &cfg).unwrap();
            assert_eq!(r.algorithm, Algorithm::Gapped);
            if (r.i, r.j, r.dist) == (truth.i, truth.j, truth.dist) {
                hits += 1;
            }
        }
        assert!(hits >= 9, "only {hits}/10");
    }

    #[test]
    fn search_recovers_unknown_dmin() {
        let mut exact = 0;
        for seed in 0..10u64 {
            let dmin = 1 + (seed % 4) as u32;
            let inst = generate_planted(24, 20, dmin, dmin + 2, 700 + seed).unwrap();
            let truth = brute_force(&inst);
            let cfg = SolveConfig { seed, ..SolveConfig::default() };
            let (found, r) = search_dmin(&inst, &cfg).unwrap();
            assert_eq!(found, r.dist);
            // soundness: always a real distance, never below the minimum
            let real = inst.vectors()[r.i].hamming(&inst.vectors()[r.j]).unwrap();
            assert_eq!(r.dist, real);
            assert!(r.dist >= truth.dist);
            if r.dist == truth.dist {
                exact += 1;
            }
        }
        assert!(exact >= 8, "only {exact}/10 searches were exact");
    }

    #[test]
    fn search_stops_immediately_on_duplicates() {
        let inst = generate_planted(16, 12, 0, 2, 13).unwrap();
        let (found, r) = search_dmin(&inst, &SolveConfig::default()).unwrap();
        assert_eq!(found, 0);
        assert_eq!(r.algorithm, Algorithm::Search);
        let meta = inst.meta().unwrap();
        assert_eq!((r.i, r.j), (meta.i, meta.j));
    }
}
