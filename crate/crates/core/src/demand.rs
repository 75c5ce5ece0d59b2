//! Demand history, trend forecasting, forecast accuracy metrics and
//! log-log price elasticity.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::simple_ols;
use crate::time::SimTime;

/// Contiguous, equal-width booking-count buckets for one route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandHistory {
    pub route: String,
    pub start: SimTime,
    pub bucket_width: SimTime,
    pub counts: Vec<u64>,
}

impl DemandHistory {
    pub fn new(route: impl Into<String>, start: SimTime, bucket_width: SimTime) -> Result<Self> {
        if bucket_width == SimTime::ZERO {
            return Err(Error::invalid("bucket width must be positive"));
        }
        Ok(DemandHistory {
            route: route.into(),
            start,
            bucket_width,
            counts: Vec::new(),
        })
    }

    pub fn bucket_start(&self, index: usize) -> SimTime {
        SimTime(self.start.0 + index as u64 * self.bucket_width.0)
    }

    pub fn bucket_of(&self, time: SimTime) -> Option<usize> {
        (time >= self.start).then(|| ((time.0 - self.start.0) / self.bucket_width.0) as usize)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Adds `count` bookings at `time`, materialising empty buckets up to it.
    pub fn ingest_booking(&mut self, time: SimTime, count: u64) -> Result<()> {
        if count == 0 {
            return Err(Error::invalid("booking count must be at least 1"));
        }
        let idx = self
            .bucket_of(time)
            .ok_or_else(|| Error::invalid(format!("booking at {time} precedes history start {}", self.start)))?;
        self.ensure_buckets(idx + 1);
        self.counts[idx] += count;
        Ok(())
    }

    /// Extends the history with zero buckets so it holds at least `len`.
    pub fn ensure_buckets(&mut self, len: usize) {
        if self.counts.len() < len {
            self.counts.resize(len, 0);
        }
    }

    /// A copy holding only the first `len` buckets.
    pub fn truncated(&self, len: usize) -> DemandHistory {
        DemandHistory {
            counts: self.counts[..len.min(self.counts.len())].to_vec(),
            ..self.clone()
        }
    }
}

/// One line of a bookings feed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BookingRecord {
    /// Simulated minutes since the feed epoch.
    pub time: u64,
    pub route: String,
    pub count: u64,
}

/// Parses a JSON-lines bookings feed. Blank lines are skipped.
pub fn read_bookings_jsonl(reader: impl BufRead) -> Result<Vec<BookingRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: BookingRecord = serde_json::from_str(&line)
            .map_err(|e| Error::invalid(format!("line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

/// Loads feed records for `route` into a fresh history starting at minute 0.
pub fn history_from_records(records: &[BookingRecord], route: &str, bucket_width: SimTime) -> Result<DemandHistory> {
    let mut h = DemandHistory::new(route, SimTime::ZERO, bucket_width)?;
    for r in records.iter().filter(|r| r.route == route) {
        h.ingest_booking(SimTime::from_minutes(r.time), r.count)?;
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandForecast {
    pub horizon: usize,
    pub values: Vec<f64>,
    pub method: String,
}

pub const LINEAR_TREND: &str = "linear_trend_ols";

/// Extends the OLS trend of (bucket index, count) `horizon` buckets ahead,
/// clamping negative projections to zero.
pub fn forecast_demand(history: &DemandHistory, horizon: usize) -> Result<DemandForecast> {
    let n = history.counts.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("{n} buckets; at least 2 needed")));
    }
    if horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
    let ys: Vec<f64> = history.counts.iter().map(|&c| c as f64).collect();
    let (slope, intercept) = simple_ols(&xs, &ys).expect("distinct bucket indices");
    let values = (n..n + horizon)
        .map(|i| (intercept + slope * i as f64).max(0.0))
        .collect();
    Ok(DemandForecast {
        horizon,
        values,
        method: LINEAR_TREND.to_string(),
    })
}

/// Mean absolute percentage error, skipping points whose actual is zero.
pub fn mape(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_pair(actual, forecast)?;
    let (sum, n) = actual
        .iter()
        .zip(forecast)
        .filter(|(a, _)| **a != 0.0)
        .fold((0.0, 0usize), |(s, n), (a, f)| (s + ((a - f) / a).abs(), n + 1));
    if n == 0 {
        return Err(Error::Undefined("MAPE with all-zero actuals".into()));
    }
    Ok(sum / n as f64 * 100.0)
}

pub fn rmse(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_pair(actual, forecast)?;
    let mse = actual
        .iter()
        .zip(forecast)
        .map(|(a, f)| (a - f) * (a - f))
        .sum::<f64>()
        / actual.len() as f64;
    Ok(mse.sqrt())
}

fn check_pair(actual: &[f64], forecast: &[f64]) -> Result<()> {
    if actual.len() != forecast.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} actual vs {} forecast",
            actual.len(),
            forecast.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::invalid("empty series"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElasticityEstimate {
    pub epsilon: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Slope of ln(quantity) on ln(price).
pub fn estimate_elasticity(observations: &[(f64, f64)]) -> Result<ElasticityEstimate> {
    if observations.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} observations; at least 2 needed",
            observations.len()
        )));
    }
    if let Some((p, q)) = observations
        .iter()
        .find(|(p, q)| !(p.is_finite() && q.is_finite() && *p > 0.0 && *q > 0.0))
    {
        return Err(Error::invalid(format!("price {p} and quantity {q} must be positive")));
    }
    let xs: Vec<f64> = observations.iter().map(|(p, _)| p.ln()).collect();
    let ys: Vec<f64> = observations.iter().map(|(_, q)| q.ln()).collect();
    let (epsilon, intercept) = simple_ols(&xs, &ys)
        .ok_or_else(|| Error::InsufficientData("all prices identical".into()))?;

    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + epsilon * x);
            r * r
        })
        .sum();
    // constant quantity is fitted perfectly by a flat line
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(ElasticityEstimate {
        epsilon,
        intercept,
        r_squared,
        n_points: observations.len(),
    })
}
