//! Seeded generators for the randomised test corpora.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Regression instance with `n <= 20` rows and `d <= 6` features.
pub fn random_regression(rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = rng.random_range(1..=20);
    let d = rng.random_range(1..=6);
    let x: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.random_range(-10.0..10.0)).collect()).collect();
    let y: Vec<f64> = (0..n).map(|_| rng.random_range(-100.0..100.0)).collect();
    (x, y)
}

/// Seeded k-means++ restarts layered over the farthest-point run. A single
/// farthest-point run lands above 1.05x the optimum on a few percent of
/// these small random datasets.
pub const CORPUS_RESTARTS: usize = 32;

/// Clustering instance with `n <= 8` points, `d <= 3` and `k <= 3`.
pub fn random_kmeans_case(rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, usize) {
    let k = rng.random_range(1..=3);
    let n = rng.random_range(k.max(2)..=8);
    let d = rng.random_range(1..=3);
    let pts = (0..n)
        .map(|_| (0..d).map(|_| (rng.random_range(0.0..10.0f64) * 10.0).round() / 10.0).collect())
        .collect();
    (pts, k)
}

/// 50 observations of `Q = 100 p^epsilon` with up to 1% multiplicative noise.
pub fn noisy_power_law(rng: &mut ChaCha8Rng, epsilon: f64) -> Vec<(f64, f64)> {
    (0..50)
        .map(|_| {
            let p: f64 = rng.random_range(10.0..500.0);
            let noise = 1.0 + rng.random_range(-0.01..0.01);
            (p, 100.0 * p.powf(epsilon) * noise)
        })
        .collect()
}
