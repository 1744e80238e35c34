//! Shared fixtures for the pipeline benchmarks.

use rand::Rng;
use rand::SeedableRng;
use relmi::{Dataset, MiEmbedding, RelationshipClass};

/// A sorted noise-free line of `n` uniform samples.
pub fn line(n: usize, seed: u64) -> Dataset {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let ys = xs.iter().map(|x| 1.8 * x - 0.4).collect();
    Dataset::new(xs, ys).unwrap()
}

/// A sorted noise-free sinusoid of `n` uniform samples.
pub fn sinusoid(n: usize, seed: u64) -> Dataset {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let ys = xs
        .iter()
        .map(|x| (2.0 * std::f64::consts::PI * 0.8 * x).sin())
        .collect();
    Dataset::new(xs, ys).unwrap()
}

/// Sweep-only embeddings of a small labeled corpus.
pub fn corpus_embeddings(per_class: usize, seed: u64) -> Vec<MiEmbedding> {
    relmi::corpus(per_class, seed)
        .unwrap()
        .iter()
        .map(|d| relmi::embed(d, 16, None).unwrap())
        .collect()
}

pub fn classes() -> [RelationshipClass; 5] {
    RelationshipClass::ALL
}
