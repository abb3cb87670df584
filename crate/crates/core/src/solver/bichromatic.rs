//! Red-blue variant: the closest pair with one endpoint in each set. Same
//! shift-decode machinery, but each trial sorts the two sets separately and
//! walks them with a merge, measuring every cross comparison the merge makes.

use crate::bitvec::BitVector;
use crate::codes::{decode_with_radius_into, BinaryCode};
use crate::rates;
use crate::{Error, Result};

use super::engine::{self, Candidate};
use super::randomized::{build_shift_code, check_radius};
use super::{Algorithm, Instance, PairResult, SolveConfig};

struct BiScratch {
    y: BitVector,
    tmp: BitVector,
    dec_r: Vec<BitVector>,
    dec_b: Vec<BitVector>,
    ord_r: Vec<u32>,
    ord_b: Vec<u32>,
}

impl BiScratch {
    fn new(m: usize, nr: usize, nb: usize) -> Self {
        let zero = BitVector::zero(m).expect("validated dimension");
        BiScratch {
            y: zero.clone(),
            tmp: zero.clone(),
            dec_r: vec![zero.clone(); nr],
            dec_b: vec![zero; nb],
            ord_r: Vec::with_capacity(nr),
            ord_b: Vec::with_capacity(nb),
        }
    }
}

fn decode_set(
    vectors: &[BitVector],
    code: &dyn BinaryCode,
    radius: u32,
    y: &BitVector,
    tmp: &mut BitVector,
    out: &mut [BitVector],
) {
    for (t, x) in vectors.iter().enumerate() {
        tmp.xor_from(y, x);
        decode_with_radius_into(code, radius, tmp, &mut out[t]);
    }
}

/// Sorted-merge scan. A shared key held by exactly one red and one blue
/// vector is always compared: lesser keys on either side are stepped past,
/// then the two meet. Candidates carry (red index, blue index), unnormalized.
fn merge_scan(
    red: &[BitVector],
    blue: &[BitVector],
    dec_r: &[BitVector],
    dec_b: &[BitVector],
    ord_r: &mut Vec<u32>,
    ord_b: &mut Vec<u32>,
    equal_only: bool,
) -> Candidate {
    ord_r.clear();
    ord_r.extend(0..red.len() as u32);
    ord_r.sort_by(|&a, &b| dec_r[a as usize].cmp_bits(&dec_r[b as usize]));
    ord_b.clear();
    ord_b.extend(0..blue.len() as u32);
    ord_b.sort_by(|&a, &b| dec_b[a as usize].cmp_bits(&dec_b[b as usize]));

    let mut best = Candidate::NONE;
    let (mut a, mut b) = (0usize, 0usize);
    while a < ord_r.len() && b < ord_b.len() {
        let (ri, bj) = (ord_r[a] as usize, ord_b[b] as usize);
        let ord = dec_r[ri].cmp_bits(&dec_b[bj]);
        if !(equal_only && ord.is_ne()) {
            let cand = Candidate {
                dist: red[ri].hamming_unchecked(&blue[bj]),
                i: ri as u32,
                j: bj as u32,
            };
            if cand < best {
                best = cand;
            }
        }
        if ord.is_le() {
            a += 1;
        } else {
            b += 1;
        }
    }
    best
}

fn verify_bi(red: &[BitVector], blue: &[BitVector], cand: Candidate) -> Result<()> {
    if cand == Candidate::NONE {
        return Err(Error::Infeasible(
            "no cross pairs were measured; disable equal-keys-only or raise the trial budget"
                .to_string(),
        ));
    }
    let real = red[cand.i as usize].hamming_unchecked(&blue[cand.j as usize]);
    if real != cand.dist {
        return Err(Error::invalid(format!(
            "internal: reported distance {} but pair ({}, {}) is at {}",
            cand.dist, cand.i, cand.j, real
        )));
    }
    Ok(())
}

/// Closest red-blue pair, assuming it is at distance at most `dmin`. The
/// result's `i` indexes into `red` and `j` into `blue`.
pub fn solve_bichromatic(
    red: &Instance,
    blue: &Instance,
    dmin: u32,
    cfg: &SolveConfig,
) -> Result<PairResult> {
    let m = red.m();
    if blue.m() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: blue.m(),
        });
    }
    let radius = cfg.radius.unwrap_or_else(|| dmin.div_ceil(2));
    check_radius(dmin, radius, m)?;
    let code = build_shift_code(m, (dmin + 1).max(2 * radius), radius, cfg)?;
    let n_total = red.n() + blue.n();
    let trials = match cfg.trial_budget {
        Some(t) => t.max(1),
        None => rates::trial_count(m as u32, n_total, code.params().log2_k, dmin, radius)?,
    };
    let (rv, bv) = (red.vectors(), blue.vectors());
    let equal_only = cfg.equal_keys_only;
    let code_ref: &dyn BinaryCode = code.as_ref();
    let stop = cfg.early_exit.then_some(dmin);

    let (cand, used) = engine::run_trials(
        trials,
        || BiScratch::new(m, rv.len(), bv.len()),
        |t, s: &mut BiScratch| {
            let mut rng = engine::trial_rng(cfg.seed, t);
            s.y.randomize(&mut rng);
            decode_set(rv, code_ref, radius, &s.y, &mut s.tmp, &mut s.dec_r);
            decode_set(bv, code_ref, radius, &s.y, &mut s.tmp, &mut s.dec_b);
            merge_scan(rv, bv, &s.dec_r, &s.dec_b, &mut s.ord_r, &mut s.ord_b, equal_only)
        },
        stop,
        cfg.workers,
    )?;
    verify_bi(rv, bv, cand)?;
    Ok(cand.into_result(Algorithm::Bichromatic, used, Some(cfg.seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::generate_planted;

    /// Planted endpoints become red[0] and blue[0]; fillers alternate.
    fn split(inst: &Instance) -> (Instance, Instance) {
        let meta = inst.meta().unwrap();
        let v = inst.vectors();
        let mut red = vec![v[meta.i].clone()];
        let mut blue = vec![v[meta.j].clone()];
        let mut to_red = true;
        for (t, x) in v.iter().enumerate() {
            if t == meta.i || t == meta.j {
                continue;
            }
            if to_red {
                red.push(x.clone());
            } else {
                blue.push(x.clone());
            }
            to_red = !to_red;
        }
        (Instance::new(red).unwrap(), Instance::new(blue).unwrap())
    }

    fn oracle(red: &Instance, blue: &Instance) -> (usize, usize, u32) {
        let mut best = (usize::MAX, usize::MAX, u32::MAX);
        for (a, x) in red.vectors().iter().enumerate() {
            for (b, y) in blue.vectors().iter().enumerate() {
                let d = x.hamming(y).unwrap();
                if d < best.2 {
                    best = (a, b, d);
                }
            }
        }
        best
    }

    #[test]
    fn finds_pair_split_across_colors() {
        let mut hits = 0;
        for seed in 0..20u64 {
            let inst = generate_planted(24, 15, 2, 4, 4000 + seed).unwrap();
            let (red, blue) = split(&inst);
            assert_eq!(oracle(&red, &blue), (0, 0, 2));
            let cfg = SolveConfig { seed, ..SolveConfig::default() };
            let r = solve_bichromatic(&red, &blue, 2, &cfg).unwrap();
            assert_eq!(r.algorithm, Algorithm::Bichromatic);
            if (r.i, r.j, r.dist) == (0, 0, 2) {
                hits += 1;
            }
        }
        assert!(hits >= 18, "only {hits}/20 found the split pair");
    }

    #[test]
    fn minimal_two_by_two_split() {
        let inst = generate_planted(4, 12, 1, 4, 8).unwrap();
        let (red, blue) = split(&inst);
        assert_eq!(red.n(), 2);
        assert_eq!(blue.n(), 2);
        let r = solve_bichromatic(&red, &blue, 1, &SolveConfig::default()).unwrap();
        assert_eq!((r.i, r.j, r.dist), (0, 0, 1));
    }

    #[test]
    fn duplicate_across_colors_found_in_one_trial() {
        let inst = generate_planted(8, 12, 0, 3, 21).unwrap();
        let (red, blue) = split(&inst);
        let r = solve_bichromatic(&red, &blue, 0, &SolveConfig::default()).unwrap();
        assert_eq!((r.i, r.j, r.dist), (0, 0, 0));
        assert_eq!(r.trials_used, 1);
    }

    #[test]
    fn identical_results_across_worker_counts() {
        let inst = generate_planted(20, 15, 2, 4, 31).unwrap();
        let (red, blue) = split(&inst);
        let base = SolveConfig { seed: 3, ..SolveConfig::default() };
        let reference = solve_bichromatic(&red, &blue, 2, &base).unwrap();
        for workers in [1usize, 2, 5] {
            let cfg = SolveConfig { workers, ..base.clone() };
            assert_eq!(solve_bichromatic(&red, &blue, 2, &cfg).unwrap(), reference);
        }
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        let a = generate_planted(4, 10, 1, 3, 1).unwrap();
        let b = generate_planted(4, 11, 1, 3, 1).unwrap();
        assert!(matches!(
            solve_bichromatic(&a, &b, 1, &SolveConfig::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
