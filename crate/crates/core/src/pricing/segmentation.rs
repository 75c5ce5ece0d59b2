//! Customer segmentation with Lloyd's k-means and segment fare multipliers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::Money;

pub const MAX_LLOYD_ITERATIONS: usize = 100;

/// Result of clustering customer feature vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    pub training_points: Vec<Vec<f64>>,
    pub assignments: Vec<usize>,
    pub sse: f64,
    /// SSE after each centroid update, in iteration order.
    pub sse_history: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentationOptions {
    pub max_iterations: usize,
    /// Extra seeded k-means++ starts; the lowest-SSE run is kept.
    pub restarts: usize,
}

impl Default for SegmentationOptions {
    fn default() -> Self {
        SegmentationOptions {
            max_iterations: MAX_LLOYD_ITERATIONS,
            restarts: 0,
        }
    }
}

pub fn segment_customers(points: &[Vec<f64>], k: usize, seed: u64) -> Result<Segmentation> {
    segment_customers_with(points, k, seed, SegmentationOptions::default())
}

pub fn segment_customers_with(
    points: &[Vec<f64>],
    k: usize,
    seed: u64,
    opts: SegmentationOptions,
) -> Result<Segmentation> {
    let n = points.len();
    if k < 1 || k > n {
        return Err(Error::invalid(format!("k = {k} must lie in [1, {n}]")));
    }
    let d = points[0].len();
    if let Some(i) = points.iter().position(|p| p.len() != d) {
        return Err(Error::invalid(format!("point {i} has dimension {}, expected {d}", points[i].len())));
    }
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite coordinate"));
    }

    let mut best = lloyd(points, farthest_point_init(points, k), opts.max_iterations);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.restarts {
        let run = lloyd(points, plus_plus_init(points, k, &mut rng), opts.max_iterations);
        if run.sse < best.sse {
            best = run;
        }
    }
    Ok(best)
}

/// First centroid is the largest-norm point, each next one the point
/// farthest from all centroids chosen so far. Ties go to the lowest index.
fn farthest_point_init(points: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    let first = argmax(points.iter().map(|p| p.iter().map(|x| x * x).sum::<f64>()));
    let mut centroids = vec![points[first].clone()];
    let mut nearest: Vec<f64> = points.iter().map(|p| dist2(p, &centroids[0])).collect();
    while centroids.len() < k {
        let next = argmax(nearest.iter().copied());
        centroids.push(points[next].clone());
        let c = centroids.last().unwrap();
        for (p, best) in points.iter().zip(nearest.iter_mut()) {
            *best = best.min(dist2(p, c));
        }
    }
    centroids
}

fn plus_plus_init(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut centroids = vec![points[rng.random_range(0..points.len())].clone()];
    while centroids.len() < k {
        let weights: Vec<f64> = points
            .iter()
            .map(|p| centroids.iter().map(|c| dist2(p, c)).fold(f64::INFINITY, f64::min))
            .collect();
        let total: f64 = weights.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.random::<f64>() * total;
            weights
                .iter()
                .position(|&w| {
                    r -= w;
                    r < 0.0
                })
                .unwrap_or(points.len() - 1)
        } else {
            rng.random_range(0..points.len())
        };
        centroids.push(points[pick].clone());
    }
    centroids
}

fn lloyd(points: &[Vec<f64>], mut centroids: Vec<Vec<f64>>, max_iterations: usize) -> Segmentation {
    let k = centroids.len();
    let mut assignments = assign_all(points, &centroids);
    let mut sse_history = Vec::new();
    let mut iterations = 0;
    loop {
        iterations += 1;
        update_means(points, &assignments, &mut centroids);
        sse_history.push(sse(points, &assignments, &centroids));
        let next = assign_all(points, &centroids);
        if next == assignments || iterations >= max_iterations {
            break;
        }
        assignments = next;
    }
    Segmentation {
        k,
        sse: *sse_history.last().unwrap(),
        centroids,
        training_points: points.to_vec(),
        assignments,
        sse_history,
        iterations,
    }
}

/// Empty clusters keep their previous centroid.
fn update_means(points: &[Vec<f64>], assignments: &[usize], centroids: &mut [Vec<f64>]) {
    let d = points[0].len();
    let mut sums = vec![vec![0.0; d]; centroids.len()];
    let mut counts = vec![0usize; centroids.len()];
    for (p, &a) in points.iter().zip(assignments) {
        counts[a] += 1;
        for (s, x) in sums[a].iter_mut().zip(p) {
            *s += x;
        }
    }
    for ((c, s), &n) in centroids.iter_mut().zip(sums).zip(&counts) {
        if n > 0 {
            *c = s.into_iter().map(|v| v / n as f64).collect();
        }
    }
}

fn assign_all(points: &[Vec<f64>], centroids: &[Vec<f64>]) -> Vec<usize> {
    points.iter().map(|p| nearest(centroids, p)).collect()
}

fn nearest(centroids: &[Vec<f64>], p: &[f64]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centroids.iter().enumerate() {
        let d = dist2(p, c);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

fn sse(points: &[Vec<f64>], assignments: &[usize], centroids: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .zip(assignments)
        .map(|(p, &a)| dist2(p, &centroids[a]))
        .sum()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (i, v) in values.enumerate() {
        if v > best_v {
            best = i;
            best_v = v;
        }
    }
    best
}

/// Nearest centroid by Euclidean distance, lowest index on ties.
pub fn assign_segment(seg: &Segmentation, point: &[f64]) -> Result<usize> {
    let d = seg.centroids[0].len();
    if point.len() != d {
        return Err(Error::invalid(format!("point has dimension {}, expected {d}", point.len())));
    }
    Ok(nearest(&seg.centroids, point))
}

pub fn segment_fare(base: Money, segment_multipliers: &BTreeMap<usize, f64>, segment: usize) -> Result<Money> {
    let mult = segment_multipliers
        .get(&segment)
        .ok_or_else(|| Error::invalid(format!("no multiplier for segment {segment}")))?;
    base.scale(*mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_points() -> Vec<Vec<f64>> {
        vec![vec![10.0, 1.0, 0.0], vec![30.0, 5.0, 1.0], vec![5.0, 2.0, 0.0]]
    }

    #[test]
    fn booking_profile_clusters() {
        let seg = segment_customers(&sample_points(), 2, 0).unwrap();
        assert_eq!(seg.assignments[0], seg.assignments[2]);
        assert_ne!(seg.assignments[0], seg.assignments[1]);
        let new_customer = assign_segment(&seg, &[20.0, 2.0, 1.0]).unwrap();
        assert_eq!(new_customer, seg.assignments[1]);
    }

    #[test]
    fn single_cluster_is_column_mean() {
        let seg = segment_customers(&sample_points(), 1, 0).unwrap();
        assert_eq!(seg.centroids[0], vec![15.0, 8.0 / 3.0, 1.0 / 3.0]);
        assert!(seg.assignments.iter().all(|&a| a == 0));
    }

    #[test]
    fn k_equals_n_has_zero_sse() {
        let seg = segment_customers(&sample_points(), 3, 0).unwrap();
        assert_eq!(seg.sse, 0.0);
        let mut a = seg.assignments.clone();
        a.sort();
        assert_eq!(a, vec![0, 1, 2]);
    }

    #[test]
    fn invalid_k() {
        assert!(segment_customers(&sample_points(), 0, 0).is_err());
        assert!(segment_customers(&sample_points(), 4, 0).is_err());
    }

    #[test]
    fn tie_goes_to_lower_index() {
        let seg = Segmentation {
            k: 2,
            centroids: vec![vec![0.0], vec![2.0]],
            training_points: vec![],
            assignments: vec![],
            sse: 0.0,
            sse_history: vec![],
            iterations: 0,
        };
        assert_eq!(assign_segment(&seg, &[1.0]).unwrap(), 0);
        assert_eq!(assign_segment(&seg, &[2.0]).unwrap(), 1);
        assert!(assign_segment(&seg, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn segment_multipliers() {
        let base = Money::from_cents(10000);
        let map = BTreeMap::from([(0, 1.0), (1, 1.2)]);
        assert_eq!(segment_fare(base, &map, 1).unwrap(), Money::from_cents(12000));
        assert_eq!(segment_fare(base, &map, 0).unwrap(), base);
        assert_eq!(
            segment_fare(base, &BTreeMap::from([(0, 0.9)]), 0).unwrap(),
            Money::from_cents(9000)
        );
        assert!(segment_fare(base, &map, 2).is_err());
    }

    #[test]
    fn restarts_never_worsen() {
        let pts: Vec<Vec<f64>> = (0..12).map(|i| vec![(i * 7 % 5) as f64, (i % 3) as f64]).collect();
        let plain = segment_customers(&pts, 3, 1).unwrap();
        let opts = SegmentationOptions { restarts: 5, ..Default::default() };
        let more = segment_customers_with(&pts, 3, 1, opts).unwrap();
        assert!(more.sse <= plain.sse);
    }
}
