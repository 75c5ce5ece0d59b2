//! Nonhomogeneous Poisson arrivals by thinning.

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateSegment {
    pub start_hour: f64,
    /// Arrivals per simulated hour from `start_hour` until the next segment.
    pub rate_per_hour: f64,
}

/// Piecewise-constant arrival rate over `[0, duration_hours)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrivalProfile {
    pub segments: Vec<RateSegment>,
    pub duration_hours: f64,
}

impl ArrivalProfile {
    pub fn constant(rate_per_hour: f64, duration_hours: f64) -> Self {
        ArrivalProfile {
            segments: vec![RateSegment {
                start_hour: 0.0,
                rate_per_hour,
            }],
            duration_hours,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration_hours.is_finite() && self.duration_hours > 0.0) {
            return Err(Error::invalid("duration must be positive"));
        }
        let first = self.segments.first().ok_or_else(|| Error::invalid("no rate segments"))?;
        if first.start_hour != 0.0 {
            return Err(Error::invalid("first segment must start at hour 0"));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !(s.rate_per_hour.is_finite() && s.rate_per_hour >= 0.0) {
                return Err(Error::invalid(format!("segment {i}: rate must be non-negative")));
            }
            if s.start_hour.is_nan() || s.start_hour >= self.duration_hours {
                return Err(Error::invalid(format!("segment {i}: starts at or after the end")));
            }
        }
        if let Some(i) = self
            .segments
            .windows(2)
            .position(|w| w[1].start_hour.is_nan() || w[1].start_hour <= w[0].start_hour)
        {
            return Err(Error::invalid(format!("segment {}: start hours must increase", i + 1)));
        }
        Ok(())
    }

    pub fn rate_at(&self, hour: f64) -> f64 {
        self.segments
            .iter()
            .rev()
            .find(|s| s.start_hour <= hour)
            .map_or(0.0, |s| s.rate_per_hour)
    }

    pub fn max_rate(&self) -> f64 {
        self.segments.iter().map(|s| s.rate_per_hour).fold(0.0, f64::max)
    }

    /// Integral of the rate over the whole duration.
    pub fn expected_count(&self) -> f64 {
        self.segments
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let end = self
                    .segments
                    .get(i + 1)
                    .map_or(self.duration_hours, |n| n.start_hour);
                s.rate_per_hour * (end - s.start_hour)
            })
            .sum()
    }
}

/// Arrival times in hours, sorted, all inside `[0, duration)`.
pub fn generate_arrivals(profile: &ArrivalProfile, seed: u64) -> Result<Vec<f64>> {
    generate_arrivals_with(profile, &mut rng::stream(seed, "arrivals"))
}

pub fn generate_arrivals_with<R: Rng + ?Sized>(profile: &ArrivalProfile, rng: &mut R) -> Result<Vec<f64>> {
    profile.validate()?;
    let lambda_max = profile.max_rate();
    let mut out = Vec::new();
    if lambda_max == 0.0 {
        return Ok(out);
    }
    let mut t = 0.0;
    loop {
        let gap: f64 = rng.sample(Exp1);
        t += gap / lambda_max;
        if t >= profile.duration_hours {
            break;
        }
        let u: f64 = rng.random();
        if u * lambda_max < profile.rate_at(t) {
            out.push(t);
        }
    }
    Ok(out)
}
