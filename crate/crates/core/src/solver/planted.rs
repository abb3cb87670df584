//! Planted-pair instance generator: one pair at exactly `dmin`, everything
//! else pairwise at least `gap` apart, so the minimizer is unique and known.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitvec::BitVector;
use crate::{Error, Result};

use super::{Instance, PlantedMeta};

/// Attempts per filler slot before giving up. Rejection only gets tight when
/// the gap balls cover most of the cube; callers should keep
/// n * |Ball(m, gap-1)| comfortably below 2^m.
const MAX_RETRIES: usize = 500;

pub fn generate_planted(n: usize, m: usize, dmin: u32, gap: u32, seed: u64) -> Result<Instance> {
    if n < 2 {
        return Err(Error::invalid(format!("need at least 2 vectors, got {n}")));
    }
    if dmin >= gap {
        return Err(Error::invalid(format!(
            "planted distance {dmin} must be below the gap {gap}"
        )));
    }
    if gap as usize > m {
        return Err(Error::invalid(format!("gap {gap} exceeds dimension {m}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = rng.gen_range(0..n);
    let j = loop {
        let j = rng.gen_range(0..n);
        if j != i {
            break j;
        }
    };
    let (i, j) = (i.min(j), i.max(j));

    let x0 = BitVector::random(m, &mut rng)?;
    let mut x1 = x0.clone();
    for pos in rand::seq::index::sample(&mut rng, m, dmin as usize) {
        x1.flip(pos);
    }

    let mut slots: Vec<Option<BitVector>> = vec![None; n];
    slots[i] = Some(x0);
    slots[j] = Some(x1);
    for t in 0..n {
        if slots[t].is_some() {
            continue;
        }
        let mut placed = false;
        for _ in 0..MAX_RETRIES {
            let cand = BitVector::random(m, &mut rng)?;
            if slots
                .iter()
                .flatten()
                .all(|v| v.hamming_unchecked(&cand) >= gap)
            {
                slots[t] = Some(cand);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailed(format!(
                "could not place vector {t} with gap {gap} in dimension {m} \
                 after {MAX_RETRIES} attempts"
            )));
        }
    }

    let vectors: Vec<BitVector> = slots.into_iter().map(|s| s.unwrap()).collect();
    Instance::with_meta(vectors, PlantedMeta { i, j, dist: dmin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::brute_force;

    #[test]
    fn planted_pair_is_the_unique_minimum() {
        for seed in 0..10u64 {
            let inst = generate_planted(12, 14, 3, 5, seed).unwrap();
            let meta = inst.meta().unwrap();
            assert!(meta.i < meta.j);
            let truth = brute_force(&inst);
            assert_eq!((truth.i, truth.j, truth.dist), (meta.i, meta.j, 3));
            let v = inst.vectors();
            for a in 0..inst.n() {
                for b in a + 1..inst.n() {
                    if (a, b) != (meta.i, meta.j) {
                        assert!(v[a].hamming(&v[b]).unwrap() >= 5);
                    }
                }
            }
        }
    }

    #[test]
    fn duplicates_allowed_at_distance_zero() {
        let inst = generate_planted(8, 12, 0, 3, 2).unwrap();
        let meta = inst.meta().unwrap();
        let v = inst.vectors();
        assert_eq!(v[meta.i].hamming(&v[meta.j]).unwrap(), 0);
    }

    #[test]
    fn same_seed_reproduces_bit_for_bit() {
        let a = generate_planted(16, 18, 2, 4, 99).unwrap();
        let b = generate_planted(16, 18, 2, 4, 99).unwrap();
        assert_eq!(a.meta(), b.meta());
        for (x, y) in a.vectors().iter().zip(b.vectors()) {
            assert_eq!(x.hamming(y).unwrap(), 0);
        }
        let c = generate_planted(16, 18, 2, 4, 100).unwrap();
        assert!(a
            .vectors()
            .iter()
            .zip(c.vectors())
            .any(|(x, y)| x.hamming(y).unwrap() != 0));
    }

    #[test]
    fn rejects_impossible_shapes() {
        assert!(generate_planted(1, 10, 1, 3, 0).is_err());
        assert!(generate_planted(8, 10, 3, 3, 0).is_err());
        assert!(generate_planted(8, 10, 2, 11, 0).is_err());
        // a gap this dense cannot be packed: 40 balls of radius 3 in 2^8
        assert!(matches!(
            generate_planted(40, 8, 1, 4, 0),
            Err(Error::GenerationFailed(_))
        ));
    }
}
