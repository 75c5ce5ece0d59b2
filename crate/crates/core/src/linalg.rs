//! Dense minimum-norm least squares via one-sided Jacobi SVD.

const MAX_SWEEPS: usize = 80;

/// Thin singular value decomposition of an `m x n` row-major matrix.
///
/// Returns `(u_columns, singular_values, v_columns)` where column `j` of
/// `u` has length `m` and column `j` of `v` has length `n`. Columns with a
/// zero singular value carry a zero `u` column.
fn jacobi_svd(a: &[f64], m: usize, n: usize) -> (Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>) {
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| a[i * n + j]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|x| x * x).sum();
                let beta: f64 = cols[q].iter().map(|x| x * x).sum();
                let gamma: f64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let u = cols
        .into_iter()
        .zip(&sigma)
        .map(|(c, &s)| {
            if s > 0.0 {
                c.into_iter().map(|x| x / s).collect()
            } else {
                vec![0.0; m]
            }
        })
        .collect();
    (u, sigma, v)
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Minimum-norm solution of `min ||A x - b||` for a row-major `m x n` matrix.
pub(crate) fn lstsq_min_norm(a: &[f64], m: usize, n: usize, b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), m * n);
    debug_assert_eq!(b.len(), m);
    let (u, sigma, v) = jacobi_svd(a, m, n);
    let s_max = sigma.iter().cloned().fold(0.0, f64::max);
    let tol = (m.max(n) as f64) * f64::EPSILON * s_max;
    let mut x = vec![0.0; n];
    for j in 0..n {
        if sigma[j] <= tol {
            continue;
        }
        let coef = u[j].iter().zip(b).map(|(ui, bi)| ui * bi).sum::<f64>() / sigma[j];
        for (xi, vi) in x.iter_mut().zip(&v[j]) {
            *xi += coef * vi;
        }
    }
    x
}

/// Ordinary least-squares line through `(x, y)` pairs: `(slope, intercept)`.
///
/// Returns `None` when there are fewer than two points or all `x` coincide.
pub(crate) fn simple_ols(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    // centring y on its first value keeps a flat series at exactly zero slope
    let y0 = ys[0];
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - y0)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}
