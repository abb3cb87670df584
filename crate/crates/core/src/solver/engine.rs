//! Shared trial machinery: the decode-sort-check pass, per-worker scratch,
//! and a chunked parallel driver whose result (including the early-exit
//! point) is identical to sequential execution for any worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitvec::BitVector;
use crate::codes::{decode_with_radius_into, BinaryCode};
use crate::{Error, Result};

use super::{Algorithm, PairResult};

/// Best pair seen so far, ordered by (dist, i, j); NONE compares last.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct Candidate {
    pub dist: u32,
    pub i: u32,
    pub j: u32,
}

impl Candidate {
    pub const NONE: Candidate = Candidate {
        dist: u32::MAX,
        i: u32::MAX,
        j: u32::MAX,
    };

    pub fn into_result(self, algorithm: Algorithm, trials_used: u64, seed: Option<u64>) -> PairResult {
        debug_assert!(self != Candidate::NONE);
        PairResult {
            i: self.i as usize,
            j: self.j as usize,
            dist: self.dist,
            trials_used,
            algorithm,
            seed,
        }
    }
}

pub(crate) struct Scratch {
    pub y: BitVector,
    tmp: BitVector,
    decoded: Vec<BitVector>,
    order: Vec<u32>,
}

impl Scratch {
    pub fn new(m: usize, n: usize) -> Self {
        let zero = BitVector::zero(m).expect("validated dimension");
        Scratch {
            y: zero.clone(),
            tmp: zero.clone(),
            decoded: vec![zero; n],
            order: Vec::with_capacity(n),
        }
    }
}

/// One full pass for a given shift y held in `s.y`.
pub(crate) fn shift_pass(
    vectors: &[BitVector],
    code: &dyn BinaryCode,
    radius: u32,
    s: &mut Scratch,
    equal_only: bool,
) -> Candidate {
    for (j, x) in vectors.iter().enumerate() {
        s.tmp.xor_from(&s.y, x);
        decode_with_radius_into(code, radius, &s.tmp, &mut s.decoded[j]);
    }
    s.order.clear();
    s.order.extend(0..vectors.len() as u32);
    check_sorted(vectors, &s.decoded, &mut s.order, equal_only)
}

/// Stable-sorts `order` by the decoded keys and scans adjacent pairs,
/// measuring original distances. With `equal_only`, pairs whose keys differ
/// are skipped (the footnote optimization; off by default).
pub(crate) fn check_sorted(
    vectors: &[BitVector],
    decoded: &[BitVector],
    order: &mut [u32],
    equal_only: bool,
) -> Candidate {
    order.sort_by(|&a, &b| decoded[a as usize].cmp_bits(&decoded[b as usize]));
    let mut best = Candidate::NONE;
    for w in order.windows(2) {
        let (a, b) = (w[0] as usize, w[1] as usize);
        if equal_only && decoded[a].cmp_bits(&decoded[b]).is_ne() {
            continue;
        }
        let dist = vectors[a].hamming_unchecked(&vectors[b]);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let cand = Candidate {
            dist,
            i: i as u32,
            j: j as u32,
        };
        if cand < best {
            best = cand;
        }
    }
    best
}

/// The per-trial generator: an independent stream of the counter-based
/// cipher, so trial t's shift does not depend on worker scheduling.
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial + 1);
    rng
}

/// Trials per parallel batch. Any value yields the same result; this only
/// bounds how far past an early exit the workers may run.
const CHUNK: u64 = 128;

/// Runs `pass(t, scratch)` for t in 0..total with early exit: the loop stops
/// after the first trial (in index order) whose candidate distance is at or
/// below `stop_at`. Returns the best candidate over the executed prefix and
/// its length, exactly as a sequential loop would.
pub(crate) fn run_trials<S, MakeS, Pass>(
    total: u64,
    make_scratch: MakeS,
    pass: Pass,
    stop_at: Option<u32>,
    workers: usize,
) -> Result<(Candidate, u64)>
where
    S: Send,
    MakeS: Fn() -> S + Sync + Send,
    Pass: Fn(u64, &mut S) -> Candidate + Sync + Send,
{
    with_pool(workers, || {
        let mut best = Candidate::NONE;
        let mut done = 0u64;
        let mut chunk_buf: Vec<Candidate> = Vec::new();
        while done < total {
            let chunk = CHUNK.min(total - done) as usize;
            (0..chunk)
                .into_par_iter()
                .map_init(&make_scratch, |s, off| pass(done + off as u64, s))
                .collect_into_vec(&mut chunk_buf);
            for (off, cand) in chunk_buf.iter().enumerate() {
                if *cand < best {
                    best = *cand;
                }
                if stop_at.is_some_and(|th| cand.dist <= th) {
                    return (best, done + off as u64 + 1);
                }
            }
            done += chunk as u64;
        }
        (best, total)
    })
}

/// Runs the closure on a dedicated pool of `workers` threads, or inline on
/// the global pool when workers is 0.
pub(crate) fn with_pool<R, F>(workers: usize, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Final guard before handing a candidate out: the reported distance must be
/// the real distance of the reported pair.
pub(crate) fn verify(vectors: &[BitVector], cand: Candidate) -> Result<()> {
    if cand == Candidate::NONE {
        return Err(Error::Infeasible(
            "no adjacent pairs were measured; disable equal-keys-only or raise the trial budget"
                .to_string(),
        ));
    }
    let real = vectors[cand.i as usize].hamming_unchecked(&vectors[cand.j as usize]);
    if real != cand.dist {
        return Err(Error::invalid(format!(
            "internal: reported distance {} but pair ({}, {}) is at {}",
            cand.dist, cand.i, cand.j, real
        )));
    }
    Ok(())
}
