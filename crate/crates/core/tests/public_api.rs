//! Cross-module checks through the public surface only, the way a consumer
//! of the library would call it.

use codepair::bitvec::BitVector;
use codepair::codes::{BinaryCode, ConcatCode, GilbertCode, RsCode};
use codepair::lightbulb::{self, LightBulbInstance};
use codepair::solver::{
    brute_force, generate_planted, search_dmin, solve_bichromatic, solve_deterministic,
    solve_gapped, solve_randomized, Instance, SolveConfig,
};

#[test]
fn every_solver_agrees_with_brute_force_on_a_planted_instance() {
    let inst = generate_planted(48, 16, 2, 4, 0xA11CE).unwrap();
    let truth = brute_force(&inst);
    let meta = inst.meta().unwrap();
    assert_eq!((truth.i, truth.j, truth.dist), (meta.i, meta.j, meta.dist));
    let cfg = SolveConfig {
        seed: 3,
        ..SolveConfig::default()
    };
    let rand = solve_randomized(&inst, 2, &cfg).unwrap();
    let det = solve_deterministic(&inst, 2, &cfg).unwrap();
    let gapped = solve_gapped(&inst, 2, 4, &cfg).unwrap();
    let (found, search) = search_dmin(&inst, &cfg).unwrap();
    for got in [&rand, &det, &gapped, &search] {
        assert_eq!((got.i, got.j, got.dist), (truth.i, truth.j, truth.dist));
    }
    assert_eq!(found, 2);
}

#[test]
fn bichromatic_finds_the_closest_cross_pair() {
    let m = 14;
    let base = generate_planted(24, m, 3, 5, 0xB1C0).unwrap();
    let v = base.vectors();
    let red = Instance::new(v[..12].to_vec()).unwrap();
    let blue = Instance::new(v[12..].to_vec()).unwrap();
    let mut best = (0usize, 0usize, u32::MAX);
    for (i, r) in red.vectors().iter().enumerate() {
        for (j, b) in blue.vectors().iter().enumerate() {
            let d = r.hamming(b).unwrap();
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    let cfg = SolveConfig {
        seed: 9,
        ..SolveConfig::default()
    };
    let got = solve_bichromatic(&red, &blue, best.2, &cfg).unwrap();
    assert_eq!((got.i, got.j, got.dist), best);
}

#[test]
fn codes_compose_and_decode_through_the_trait() {
    let outer = RsCode::new(3, 7, 5).unwrap();
    let inner = GilbertCode::build(6, 2, 1).unwrap();
    let code = ConcatCode::new(outer, inner, 42).unwrap();
    assert_eq!(code.block_len(), 42);
    let msg = [1u16, 6, 3, 0, 7];
    let clean = code.encode(&msg).unwrap();
    let mut noisy = clean.clone();
    for k in [0usize, 17, 41] {
        noisy.flip(k);
    }
    assert_eq!(code.decode(&noisy).unwrap().unwrap(), clean);
}

#[test]
fn correlated_pair_comes_back_from_raw_sequences() {
    let generated = LightBulbInstance::generate(64, 0.97, 2048, 5).unwrap();
    let planted = generated.planted();
    let raw: Vec<BitVector> = generated.sequences().to_vec();
    let inst = LightBulbInstance::from_sequences(raw, 0.97, planted).unwrap();
    let cfg = SolveConfig {
        seed: 11,
        ..SolveConfig::default()
    };
    let got = lightbulb::solve_lightbulb(&inst, &cfg).unwrap();
    assert_eq!((got.i, got.j), planted);
}
