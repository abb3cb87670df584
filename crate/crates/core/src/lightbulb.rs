//! Correlated-column detection. Among n long random bit sequences, exactly
//! two agree with probability (1+rho)/2 per bit instead of 1/2. Projecting
//! onto a logarithmic number of random positions turns the correlated pair
//! into the closest pair of the projection, which the shift-decode solver
//! then finds; a majority vote over independent projections scrubs out the
//! per-round failure probability.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitvec::BitVector;
use crate::solver::{solve_randomized, Algorithm, CodeKind, Instance, PairResult, SolveConfig};
use crate::{mix_seed, Error, Result};

pub struct LightBulbInstance {
    length: usize,
    rho: f64,
    sequences: Vec<BitVector>,
    planted: (usize, usize),
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho.abs() > 0.0 && rho.abs() < 1.0) {
        return Err(Error::invalid(format!(
            "correlation must be in (-1,1) and nonzero, got {rho}"
        )));
    }
    Ok(())
}

impl LightBulbInstance {
    /// All bits independent and uniform, except that the two planted
    /// sequences agree in each position with probability (1+rho)/2.
    pub fn generate(n: usize, rho: f64, length: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 sequences, got {n}")));
        }
        check_rho(rho)?;
        if length == 0 {
            return Err(Error::invalid("sequence length must be positive".to_string()));
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

        let mut sequences = Vec::with_capacity(n);
        for _ in 0..n {
            sequences.push(BitVector::random(length, &mut rng)?);
        }
        let agree = (1.0 + rho) / 2.0;
        for k in 0..length {
            let bit = sequences[i].get(k);
            let same = rng.gen_bool(agree);
            sequences[j].set(k, bit == same);
        }
        Ok(LightBulbInstance {
            length,
            rho,
            sequences,
            planted: (i, j),
        })
    }

    /// Wraps already-materialized sequences, e.g. loaded from disk. The
    /// planted pair must be known; solving never reads it, but recovery
    /// reporting does.
    pub fn from_sequences(
        sequences: Vec<BitVector>,
        rho: f64,
        planted: (usize, usize),
    ) -> Result<Self> {
        let n = sequences.len();
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 sequences, got {n}")));
        }
        check_rho(rho)?;
        let length = sequences[0].len();
        if sequences.iter().any(|s| s.len() != length) {
            return Err(Error::invalid("sequences must share one length".to_string()));
        }
        let (i, j) = planted;
        if i == j || i >= n || j >= n {
            return Err(Error::invalid(format!(
                "planted pair ({i}, {j}) invalid for {n} sequences"
            )));
        }
        Ok(LightBulbInstance {
            length,
            rho,
            sequences,
            planted: (i.min(j), i.max(j)),
        })
    }

    pub fn n(&self) -> usize {
        self.sequences.len()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn sequences(&self) -> &[BitVector] {
        &self.sequences
    }

    /// Known to the harness only; solver paths never read it.
    pub fn planted(&self) -> (usize, usize) {
        self.planted
    }

    /// Negative-correlation fix: complement a uniformly random half of the
    /// sequences. When exactly one planted endpoint lands in the flipped
    /// half (probability about 1/2) the pair's correlation flips sign and
    /// the returned flag is true; otherwise the instance must be re-rolled.
    pub fn flip_negative(&self, seed: u64) -> Result<(Self, bool)> {
        if self.rho >= 0.0 {
            return Err(Error::invalid(format!(
                "flip applies to negative correlation, got {}",
                self.rho
            )));
        }
        let n = self.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chosen = rand::seq::index::sample(&mut rng, n, n / 2);
        let mut flipped = vec![false; n];
        for t in chosen {
            flipped[t] = true;
        }
        let sequences: Vec<BitVector> = self
            .sequences
            .iter()
            .zip(&flipped)
            .map(|(s, &f)| if f { s.complement() } else { s.clone() })
            .collect();
        let separated = flipped[self.planted.0] != flipped[self.planted.1];
        let rho = if separated { -self.rho } else { self.rho };
        Ok((
            LightBulbInstance {
                length: self.length,
                rho,
                sequences,
                planted: self.planted,
            },
            separated,
        ))
    }
}

/// Positions to sample per round: ceil(4 ln2 log2(n) / rho^2), enough for
/// the correlated pair's projected distance to fall below every independent
/// pair's with constant probability.
pub fn sample_dimension(n: usize, rho: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::invalid(format!("need at least 2 sequences, got {n}")));
    }
    if !(rho != 0.0 && rho.abs() <= 1.0) {
        return Err(Error::invalid(format!(
            "correlation must be nonzero with |rho| <= 1, got {rho}"
        )));
    }
    let m = 4.0 * std::f64::consts::LN_2 * (n as f64).log2() / (rho * rho);
    Ok(m.ceil() as usize)
}

/// One projection round: sample positions without replacement, project every
/// sequence, and solve with the expected planted distance as the bound.
fn run_round(
    inst: &LightBulbInstance,
    m: usize,
    d_t: u32,
    seed: u64,
    cfg: &SolveConfig,
) -> Result<PairResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = rand::seq::index::sample(&mut rng, inst.length, m).into_vec();
    positions.sort_unstable();

    let mut projected = Vec::with_capacity(inst.n());
    for s in &inst.sequences {
        let mut p = BitVector::zero(m)?;
        for (t, &pos) in positions.iter().enumerate() {
            p.set(t, s.get(pos));
        }
        projected.push(p);
    }
    let sub = Instance::new(projected)?;

    let mut sub_cfg = cfg.clone();
    sub_cfg.seed = seed;
    // projections can exceed the table budget long before the inputs do
    if sub_cfg.code_kind == CodeKind::Gilbert && m > sub_cfg.table_budget {
        sub_cfg.code_kind = CodeKind::Concat;
    }
    solve_randomized(&sub, d_t, &sub_cfg)
}

pub fn solve_lightbulb(inst: &LightBulbInstance, cfg: &SolveConfig) -> Result<PairResult> {
    solve_lightbulb_rounds(inst, 3.0, cfg)
}

/// Majority vote over ceil(c_rep * log2 n) independent projection rounds.
/// Each round targets d_t = floor((1-rho) m / 2), the expected projected
/// distance of the correlated pair; rounds where the pair strays above it
/// just vote for something else and are outvoted.
pub fn solve_lightbulb_rounds(
    inst: &LightBulbInstance,
    c_rep: f64,
    cfg: &SolveConfig,
) -> Result<PairResult> {
    let rho = inst.rho;
    check_rho(rho)?;
    if rho < 0.0 {
        return Err(Error::invalid(
            "correlation is negative; apply the half-flip first".to_string(),
        ));
    }
    if !c_rep.is_finite() || c_rep <= 0.0 {
        return Err(Error::invalid(format!(
            "repetition factor must be positive, got {c_rep}"
        )));
    }
    let n = inst.n();
    let m = sample_dimension(n, rho)?;
    if m > inst.length {
        return Err(Error::invalid(format!(
            "sequences hold {} bits but the reduction needs {m}",
            inst.length
        )));
    }
    let rounds = ((c_rep * (n as f64).log2()).ceil() as u64).max(1);
    let d_t = ((1.0 - rho) * m as f64 / 2.0).floor() as u32;

    let mut votes: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut trials_total = 0u64;
    for k in 0..rounds {
        let r = run_round(inst, m, d_t, mix_seed(cfg.seed, k), cfg)?;
        trials_total += r.trials_used;
        *votes.entry((r.i, r.j)).or_insert(0) += 1;
    }
    // ascending map iteration plus strict improvement: ties go to the
    // lexicographically smallest pair
    let mut winner = (0usize, 0usize);
    let mut count = 0u32;
    for (&pair, &c) in &votes {
        if c > count {
            winner = pair;
            count = c;
        }
    }
    let dist = inst.sequences[winner.0].hamming_unchecked(&inst.sequences[winner.1]);
    Ok(PairResult {
        i: winner.0,
        j: winner.1,
        dist,
        trials_used: trials_total,
        algorithm: Algorithm::LightBulb,
        seed: Some(cfg.seed),
    })
}
