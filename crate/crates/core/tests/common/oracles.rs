//! Reference implementations used to check the library from the outside.
//! They share no code with the crate under test.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// Lead-time fare written out branch by branch, in integer cents with
/// half-up rounding.
pub fn branch_fare_cents(base_cents: u64, departure_day: i64) -> u64 {
    let (num, den) = if departure_day > 60 {
        (8, 10)
    } else if 30 < departure_day && departure_day <= 60 {
        (1, 1)
    } else {
        (15, 10)
    };
    (base_cents * num * 2 + den) / (den * 2)
}

/// Minimum-norm least squares of `[x | 1]` against `y` through the
/// Moore-Penrose pseudo-inverse. Returns `(coefficients, intercept)`.
pub fn pinv_fit(x: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let n = x.len();
    let d = x[0].len();
    let a = DMatrix::from_fn(n, d + 1, |i, j| if j < d { x[i][j] } else { 1.0 });
    let b = DVector::from_column_slice(y);
    let pinv = a.pseudo_inverse(1e-10).expect("svd converges");
    let sol = pinv * b;
    (sol.as_slice()[..d].to_vec(), sol[d])
}

/// The same fit through the normal equations, for full-rank systems:
/// `(AᵀA)⁻¹Aᵀy` when tall, `Aᵀ(AAᵀ)⁻¹y` when wide.
pub fn normal_equations_fit(x: &[Vec<f64>], y: &[f64]) -> Option<(Vec<f64>, f64)> {
    let n = x.len();
    let d = x[0].len();
    let a = DMatrix::from_fn(n, d + 1, |i, j| if j < d { x[i][j] } else { 1.0 });
    let b = DVector::from_column_slice(y);
    let sol = if n > d {
        let ata = a.transpose() * &a;
        ata.try_inverse()? * a.transpose() * b
    } else {
        let aat = &a * a.transpose();
        a.transpose() * aat.try_inverse()? * b
    };
    Some((sol.as_slice()[..d].to_vec(), sol[d]))
}

pub fn residual_norm(x: &[Vec<f64>], y: &[f64], coef: &[f64], intercept: f64) -> f64 {
    x.iter()
        .zip(y)
        .map(|(row, t)| {
            let p = intercept + row.iter().zip(coef).map(|(a, b)| a * b).sum::<f64>();
            (p - t).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

pub fn sse_of_partition(points: &[Vec<f64>], labels: &[usize], k: usize) -> f64 {
    let d = points[0].len();
    let mut total = 0.0;
    for c in 0..k {
        let members: Vec<&Vec<f64>> = points.iter().zip(labels).filter(|(_, &l)| l == c).map(|(p, _)| p).collect();
        if members.is_empty() {
            continue;
        }
        let mean: Vec<f64> = (0..d)
            .map(|j| members.iter().map(|p| p[j]).sum::<f64>() / members.len() as f64)
            .collect();
        total += members
            .iter()
            .map(|p| p.iter().zip(&mean).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
            .sum::<f64>();
    }
    total
}

/// Minimum SSE over every labelling of `points` into exactly `k`
/// non-empty clusters, with one optimal labelling.
pub fn exhaustive_kmeans(points: &[Vec<f64>], k: usize) -> (f64, Vec<usize>) {
    let n = points.len();
    let mut labels = vec![0usize; n];
    let mut best = (f64::INFINITY, labels.clone());
    let total = (k as u64).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = (c % k as u64) as usize;
            c /= k as u64;
        }
        if (0..k).any(|cl| !labels.contains(&cl)) {
            continue;
        }
        let sse = sse_of_partition(points, &labels, k);
        if sse < best.0 {
            best = (sse, labels.clone());
        }
    }
    best
}

/// Canonical form of a labelling: the set of index groups, sorted.
pub fn partition_sets(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &l) in labels.iter().enumerate() {
        groups.entry(l).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Slope and intercept of `y` on `x` via the 2x2 normal equations.
pub fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let a = DMatrix::from_fn(x.len(), 2, |i, j| if j == 0 { x[i] } else { 1.0 });
    let b = DVector::from_column_slice(y);
    let sol = (a.transpose() * &a).try_inverse().expect("distinct x") * a.transpose() * b;
    (sol[0], sol[1])
}

pub fn rel_close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale.max(b.abs()).max(1.0)
}
