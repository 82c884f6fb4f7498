//! Seeded inputs shared by the benchmarks.

use acmint_core::{build_linear_pair, ConstructionPair, FieldSpec, FormMatrix, IdealPresentation, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p3() -> Ring {
    Ring::projective3(acmint_core::DEFAULT_PRIME).expect("default prime")
}

pub fn linear_matrix(rows: usize, cols: usize, seed: u64) -> FormMatrix {
    let ring = p3();
    let mut rng = rng(seed);
    FormMatrix::from_fn(ring, rows, cols, |_, _| ring.random_linear(&mut rng)).expect("shape")
}

pub fn pair(t: usize, r: usize, seed: u64) -> ConstructionPair {
    build_linear_pair(p3(), t, r, &mut rng(seed)).expect("valid parameters")
}

pub fn intersection(t: usize, r: usize, seed: u64) -> IdealPresentation {
    pair(t, r, seed).intersection_ideal().expect("minors")
}

/// Dense random rows over `F_p` of the given rank.
pub fn low_rank_rows(field: FieldSpec, rows: usize, cols: usize, rank: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = rng(seed);
    let p = field.modulus();
    let basis: Vec<Vec<u32>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect()).collect();
    (0..rows)
        .map(|_| {
            let coeffs: Vec<u32> = (0..rank).map(|_| rng.gen_range(0..p)).collect();
            (0..cols)
                .map(|j| {
                    coeffs
                        .iter()
                        .zip(&basis)
                        .fold(0, |acc, (&c, b)| field.add(acc, field.mul(c, b[j])))
                })
                .collect()
        })
        .collect()
}
