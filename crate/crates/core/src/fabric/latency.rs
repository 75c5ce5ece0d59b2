use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::time::SimTime;

/// Lognormal parameters over milliseconds: `ln(latency_ms) ~ N(mu, sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogNormalParams {
    pub mu: f64,
    pub sigma: f64,
}

impl LogNormalParams {
    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() || !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::invalid(format!(
                "lognormal parameters mu {} sigma {} invalid",
                self.mu, self.sigma
            )));
        }
        Ok(())
    }

    /// Median `median_ms` with log-scale spread `sigma`.
    pub fn from_median_ms(median_ms: f64, sigma: f64) -> Self {
        LogNormalParams {
            mu: median_ms.ln(),
            sigma,
        }
    }

    pub fn mean(&self) -> f64 {
        (self.mu + self.sigma * self.sigma / 2.0).exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        (self.mu + self.sigma * z).exp()
    }
}

/// Per service-pair latency, each pair drawing from its own seeded stream.
#[derive(Debug, Clone)]
pub struct LatencyModel {
    seed: u64,
    default: LogNormalParams,
    pairs: BTreeMap<(String, String), LogNormalParams>,
    streams: BTreeMap<(String, String), ChaCha8Rng>,
}

impl LatencyModel {
    pub fn new(seed: u64, default: LogNormalParams) -> Self {
        LatencyModel {
            seed,
            default,
            pairs: BTreeMap::new(),
            streams: BTreeMap::new(),
        }
    }

    pub fn with_pair(mut self, src: &str, dst: &str, params: LogNormalParams) -> Self {
        self.pairs.insert((src.to_string(), dst.to_string()), params);
        self
    }

    pub fn params(&self, src: &str, dst: &str) -> LogNormalParams {
        self.pairs
            .get(&(src.to_string(), dst.to_string()))
            .copied()
            .unwrap_or(self.default)
    }

    /// One latency draw in milliseconds; unconfigured pairs use the default.
    pub fn sample_ms(&mut self, src: &str, dst: &str) -> f64 {
        let params = self.params(src, dst);
        let seed = self.seed;
        let rng = self
            .streams
            .entry((src.to_string(), dst.to_string()))
            .or_insert_with(|| rng::stream(seed, &format!("latency:{src}->{dst}")));
        params.sample(rng)
    }

    /// One latency draw, at least one microsecond.
    pub fn sample_latency(&mut self, src: &str, dst: &str) -> SimTime {
        let ms = self.sample_ms(src, dst);
        SimTime(((ms * 1000.0).round() as u64).max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sigma_is_constant() {
        let p = LogNormalParams::from_median_ms(5.0, 0.0);
        let mut m = LatencyModel::new(1, p);
        for _ in 0..10 {
            assert!((m.sample_ms("a", "b") - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_sequence() {
        let p = LogNormalParams::from_median_ms(5.0, 0.5);
        let mut a = LatencyModel::new(9, p);
        let mut b = LatencyModel::new(9, p);
        let xs: Vec<f64> = (0..20).map(|_| a.sample_ms("g", "p")).collect();
        let ys: Vec<f64> = (0..20).map(|_| b.sample_ms("g", "p")).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn pairs_are_independent_streams() {
        let p = LogNormalParams::from_median_ms(5.0, 0.5);
        let mut a = LatencyModel::new(9, p);
        let mut b = LatencyModel::new(9, p);
        let first: Vec<f64> = (0..5).map(|_| a.sample_ms("g", "p")).collect();
        b.sample_ms("x", "y");
        let second: Vec<f64> = (0..5).map(|_| b.sample_ms("g", "p")).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn configured_pair_overrides_default() {
        let m = LatencyModel::new(0, LogNormalParams::from_median_ms(5.0, 0.1))
            .with_pair("a", "b", LogNormalParams::from_median_ms(2.0, 0.1));
        assert!((m.params("a", "b").mu - 2f64.ln()).abs() < 1e-12);
        assert!((m.params("b", "a").mu - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn sample_mean_matches_lognormal_mean() {
        let p = LogNormalParams { mu: 5f64.ln(), sigma: 0.5 };
        let mut m = LatencyModel::new(3, p);
        let mean = (0..10_000).map(|_| m.sample_ms("a", "b")).sum::<f64>() / 10_000.0;
        let expected = 5.0 * 0.125f64.exp();
        assert!((mean - expected).abs() / expected < 0.05, "{mean} vs {expected}");
    }
}
