//! Rule-based fare tables: lead-time bands and load-factor bands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::Money;

/// One lead-time band covering `(min_days_exclusive, max_days_inclusive]`.
///
/// A missing lower bound means the band starts at day 0; a missing upper
/// bound means it is open-ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeadTimeBand {
    pub min_days_exclusive: Option<i64>,
    pub max_days_inclusive: Option<i64>,
    pub multiplier: f64,
}

impl LeadTimeBand {
    fn contains(&self, days: i64) -> bool {
        self.min_days_exclusive.is_none_or(|m| days > m)
            && self.max_days_inclusive.is_none_or(|m| days <= m)
    }
}

/// Ordered lead-time bands that partition `[0, inf)` days to departure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LeadTimeBand>", into = "Vec<LeadTimeBand>")]
pub struct LeadTimeBands(Vec<LeadTimeBand>);

impl LeadTimeBands {
    /// Validates that the bands are ordered and cover every day exactly once.
    pub fn new(bands: Vec<LeadTimeBand>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::invalid("lead-time band table is empty"));
        }
        for (i, b) in bands.iter().enumerate() {
            if !(b.multiplier.is_finite() && b.multiplier > 0.0) {
                return Err(Error::invalid(format!(
                    "band {i}: multiplier {} must be positive",
                    b.multiplier
                )));
            }
            if let (Some(lo), Some(hi)) = (b.min_days_exclusive, b.max_days_inclusive) {
                if hi <= lo {
                    return Err(Error::invalid(format!("band {i}: empty range ({lo}, {hi}]")));
                }
            }
        }
        match bands[0].min_days_exclusive {
            None => {}
            Some(lo) if lo < 0 => {}
            Some(lo) => {
                return Err(Error::invalid(format!(
                    "gap: no band covers days 0 to {lo} (first band starts at {})",
                    lo + 1
                )))
            }
        }
        for (i, pair) in bands.windows(2).enumerate() {
            let end = pair[0].max_days_inclusive.ok_or_else(|| {
                Error::invalid(format!("band {i} is open-ended but is not the last band"))
            })?;
            let next_lo = pair[1].min_days_exclusive.unwrap_or(-1);
            if next_lo > end {
                return Err(Error::invalid(format!(
                    "gap: no band covers days {} to {next_lo} (band ends at {end}, next starts at {})",
                    end + 1,
                    next_lo + 1
                )));
            }
            if next_lo < end {
                return Err(Error::invalid(format!(
                    "overlap: bands {i} and {} both cover days {} to {end}",
                    i + 1,
                    next_lo + 1
                )));
            }
        }
        if let Some(hi) = bands[bands.len() - 1].max_days_inclusive {
            return Err(Error::invalid(format!(
                "gap: no band covers days after {hi} (last band must be open-ended)"
            )));
        }
        Ok(LeadTimeBands(bands))
    }

    pub fn bands(&self) -> &[LeadTimeBand] {
        &self.0
    }

    pub fn multiplier(&self, days_to_departure: i64) -> Result<f64> {
        if days_to_departure < 0 {
            return Err(Error::invalid(format!(
                "days to departure {days_to_departure} is negative"
            )));
        }
        self.0
            .iter()
            .find(|b| b.contains(days_to_departure))
            .map(|b| b.multiplier)
            .ok_or_else(|| Error::invalid(format!("no band covers day {days_to_departure}")))
    }
}

impl Default for LeadTimeBands {
    /// Early-booking discount beyond 60 days, regular fare from 31 to 60,
    /// last-minute markup at 30 days and below.
    fn default() -> Self {
        LeadTimeBands(vec![
            LeadTimeBand {
                min_days_exclusive: None,
                max_days_inclusive: Some(30),
                multiplier: 1.5,
            },
            LeadTimeBand {
                min_days_exclusive: Some(30),
                max_days_inclusive: Some(60),
                multiplier: 1.0,
            },
            LeadTimeBand {
                min_days_exclusive: Some(60),
                max_days_inclusive: None,
                multiplier: 0.8,
            },
        ])
    }
}

impl TryFrom<Vec<LeadTimeBand>> for LeadTimeBands {
    type Error = Error;

    fn try_from(v: Vec<LeadTimeBand>) -> Result<Self> {
        LeadTimeBands::new(v)
    }
}

impl From<LeadTimeBands> for Vec<LeadTimeBand> {
    fn from(b: LeadTimeBands) -> Self {
        b.0
    }
}

/// Fare for a booking made `days_to_departure` days out.
pub fn rule_based_fare(base_fare: Money, days_to_departure: i64, bands: &LeadTimeBands) -> Result<Money> {
    let mult = bands.multiplier(days_to_departure)?;
    Money::from_f64(base_fare.as_f64() * mult)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadFactorBand {
    pub min_load_factor: f64,
    pub multiplier: f64,
}

/// Scarcity markups keyed by the fraction of seats already sold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LoadFactorBand>", into = "Vec<LoadFactorBand>")]
pub struct LoadFactorBands(Vec<LoadFactorBand>);

impl LoadFactorBands {
    pub fn new(bands: Vec<LoadFactorBand>) -> Result<Self> {
        let first = bands
            .first()
            .ok_or_else(|| Error::invalid("load-factor band table is empty"))?;
        if first.min_load_factor != 0.0 {
            return Err(Error::invalid(format!(
                "gap: first load-factor band must start at 0.0, found {}",
                first.min_load_factor
            )));
        }
        for (i, b) in bands.iter().enumerate() {
            if !(0.0..=1.0).contains(&b.min_load_factor) {
                return Err(Error::invalid(format!(
                    "band {i}: threshold {} outside [0, 1]",
                    b.min_load_factor
                )));
            }
            if !(b.multiplier.is_finite() && b.multiplier > 0.0) {
                return Err(Error::invalid(format!(
                    "band {i}: multiplier {} must be positive",
                    b.multiplier
                )));
            }
        }
        for (i, pair) in bands.windows(2).enumerate() {
            if pair[1].min_load_factor <= pair[0].min_load_factor {
                return Err(Error::invalid(format!(
                    "band {}: thresholds must be strictly increasing",
                    i + 1
                )));
            }
            if pair[1].multiplier < pair[0].multiplier {
                return Err(Error::invalid(format!(
                    "band {}: multipliers must be non-decreasing",
                    i + 1
                )));
            }
        }
        Ok(LoadFactorBands(bands))
    }

    pub fn bands(&self) -> &[LoadFactorBand] {
        &self.0
    }

    pub fn multiplier(&self, load_factor: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .find(|b| b.min_load_factor <= load_factor)
            .map_or(self.0[0].multiplier, |b| b.multiplier)
    }
}

impl Default for LoadFactorBands {
    fn default() -> Self {
        LoadFactorBands(vec![
            LoadFactorBand {
                min_load_factor: 0.0,
                multiplier: 1.0,
            },
            LoadFactorBand {
                min_load_factor: 0.5,
                multiplier: 1.1,
            },
            LoadFactorBand {
                min_load_factor: 0.8,
                multiplier: 1.3,
            },
        ])
    }
}

impl TryFrom<Vec<LoadFactorBand>> for LoadFactorBands {
    type Error = Error;

    fn try_from(v: Vec<LoadFactorBand>) -> Result<Self> {
        LoadFactorBands::new(v)
    }
}

impl From<LoadFactorBands> for Vec<LoadFactorBand> {
    fn from(b: LoadFactorBands) -> Self {
        b.0
    }
}

pub fn load_factor_multiplier(capacity: u32, seats_sold: u32, bands: &LoadFactorBands) -> Result<f64> {
    if capacity == 0 {
        return Err(Error::invalid("capacity must be positive"));
    }
    if seats_sold > capacity {
        return Err(Error::invalid(format!(
            "seats sold {seats_sold} exceeds capacity {capacity}"
        )));
    }
    Ok(bands.multiplier(seats_sold as f64 / capacity as f64))
}
