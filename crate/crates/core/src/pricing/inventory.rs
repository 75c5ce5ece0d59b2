//! Seat inventory, scarcity/glut triggers and fare-class allocation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryState {
    capacity: u32,
    seats_sold: u32,
    days_to_departure: u32,
    fare_class_limits: BTreeMap<String, u32>,
}

impl InventoryState {
    /// Inventory with a single fare class holding the whole cabin.
    pub fn new(capacity: u32, seats_sold: u32, days_to_departure: u32) -> Result<Self> {
        let limits = BTreeMap::from([("economy".to_string(), capacity)]);
        Self::with_fare_classes(capacity, seats_sold, days_to_departure, limits)
    }

    pub fn with_fare_classes(
        capacity: u32,
        seats_sold: u32,
        days_to_departure: u32,
        fare_class_limits: BTreeMap<String, u32>,
    ) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::invalid("capacity must be positive"));
        }
        if seats_sold > capacity {
            return Err(Error::invalid(format!(
                "seats sold {seats_sold} exceeds capacity {capacity}"
            )));
        }
        let total: u64 = fare_class_limits.values().map(|&v| v as u64).sum();
        if total != capacity as u64 {
            return Err(Error::invalid(format!(
                "fare class limits sum to {total}, capacity is {capacity}"
            )));
        }
        Ok(InventoryState {
            capacity,
            seats_sold,
            days_to_departure,
            fare_class_limits,
        })
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn seats_sold(&self) -> u32 {
        self.seats_sold
    }

    pub fn days_to_departure(&self) -> u32 {
        self.days_to_departure
    }

    pub fn fare_class_limits(&self) -> &BTreeMap<String, u32> {
        &self.fare_class_limits
    }

    pub fn load_factor(&self) -> f64 {
        self.seats_sold as f64 / self.capacity as f64
    }

    pub fn remaining(&self) -> u32 {
        self.capacity - self.seats_sold
    }

    pub fn remaining_fraction(&self) -> f64 {
        self.remaining() as f64 / self.capacity as f64
    }
}

/// Thresholds for the scarcity markup and last-minute glut discount.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HeuristicPolicy {
    /// Raise when the unsold fraction is at or below this.
    pub scarcity_threshold: f64,
    /// Discount when the unsold fraction is at or above this close to departure.
    pub glut_threshold: f64,
    pub last_minute_days: u32,
    pub raise_pct: f64,
    pub discount_pct: f64,
}

impl Default for HeuristicPolicy {
    fn default() -> Self {
        HeuristicPolicy {
            scarcity_threshold: 0.2,
            glut_threshold: 0.5,
            last_minute_days: 3,
            raise_pct: 0.10,
            discount_pct: 0.15,
        }
    }
}

impl HeuristicPolicy {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("scarcity_threshold", self.scarcity_threshold),
            ("glut_threshold", self.glut_threshold),
            ("raise_pct", self.raise_pct),
            ("discount_pct", self.discount_pct),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!("{name} {v} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "magnitude")]
pub enum PriceAction {
    Raise(f64),
    Discount(f64),
    Hold,
}

impl PriceAction {
    pub fn raise(magnitude: f64) -> Result<Self> {
        check_magnitude(magnitude).map(|_| PriceAction::Raise(magnitude))
    }

    pub fn discount(magnitude: f64) -> Result<Self> {
        check_magnitude(magnitude).map(|_| PriceAction::Discount(magnitude))
    }

    pub fn magnitude(&self) -> f64 {
        match *self {
            PriceAction::Raise(m) | PriceAction::Discount(m) => m,
            PriceAction::Hold => 0.0,
        }
    }

    /// Price multiplier implied by the action.
    pub fn factor(&self) -> f64 {
        match *self {
            PriceAction::Raise(m) => 1.0 + m,
            PriceAction::Discount(m) => 1.0 - m,
            PriceAction::Hold => 1.0,
        }
    }
}

fn check_magnitude(m: f64) -> Result<()> {
    if (0.0..=1.0).contains(&m) {
        Ok(())
    } else {
        Err(Error::invalid(format!("action magnitude {m} outside [0, 1]")))
    }
}

/// Scarcity raise or last-minute discount; raise wins when both fire.
pub fn heuristic_trigger(state: &InventoryState, policy: &HeuristicPolicy) -> PriceAction {
    let unsold = state.remaining_fraction();
    if unsold <= policy.scarcity_threshold {
        PriceAction::Raise(policy.raise_pct)
    } else if state.days_to_departure <= policy.last_minute_days && unsold >= policy.glut_threshold {
        PriceAction::Discount(policy.discount_pct)
    } else {
        PriceAction::Hold
    }
}

/// Splits `capacity` across fare classes in proportion to forecast demand,
/// using largest-remainder rounding so the limits sum to `capacity`.
///
/// Remainder ties go to the class that sorts first by name. An all-zero
/// forecast splits the cabin evenly.
pub fn reallocate_fare_classes(
    forecast_per_class: &BTreeMap<String, f64>,
    capacity: u32,
) -> Result<BTreeMap<String, u32>> {
    if forecast_per_class.is_empty() {
        return Err(Error::invalid("no fare classes to allocate"));
    }
    if capacity == 0 {
        return Err(Error::invalid("capacity must be positive"));
    }
    if let Some((name, v)) = forecast_per_class
        .iter()
        .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
    {
        return Err(Error::invalid(format!("class `{name}` has invalid demand {v}")));
    }
    let total: f64 = forecast_per_class.values().sum();
    let n = forecast_per_class.len() as f64;
    let quotas: Vec<(&String, f64)> = forecast_per_class
        .iter()
        .map(|(k, &v)| {
            let share = if total > 0.0 { v / total } else { 1.0 / n };
            (k, share * capacity as f64)
        })
        .collect();

    let mut limits: Vec<(&String, u32, f64)> = quotas
        .iter()
        .map(|&(k, q)| (k, q.floor() as u32, q - q.floor()))
        .collect();
    let assigned: u32 = limits.iter().map(|l| l.1).sum();
    let mut leftover = capacity.saturating_sub(assigned) as usize;

    let mut order: Vec<usize> = (0..limits.len()).collect();
    // stable sort keeps name order among equal remainders
    order.sort_by(|&a, &b| limits[b].2.total_cmp(&limits[a].2));
    for &i in order.iter().cycle() {
        if leftover == 0 {
            break;
        }
        limits[i].1 += 1;
        leftover -= 1;
    }
    Ok(limits.into_iter().map(|(k, v, _)| (k.clone(), v)).collect())
}
