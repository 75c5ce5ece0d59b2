//! The composed, auditable quote pipeline.
//!
//! Factors are applied in a fixed order: lead time, load factor, event,
//! competitor, then an optional promotion/markup action, then the floor and
//! ceiling clamp. Every factor is recorded so a quote can be replayed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::Money;
use crate::pricing::inventory::{InventoryState, PriceAction};
use crate::pricing::rules::{LeadTimeBands, LoadFactorBands};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    LeadTime,
    LoadFactor,
    Event,
    Competitor,
    Promotion,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepKind::LeadTime => "lead_time",
            StepKind::LoadFactor => "load_factor",
            StepKind::Event => "event",
            StepKind::Competitor => "competitor",
            StepKind::Promotion => "promotion",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PricingStep {
    pub step: StepKind,
    pub multiplier: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FareQuote {
    pub final_price: Money,
    pub base_fare: Money,
    pub applied_steps: Vec<PricingStep>,
    pub floor: Money,
    pub ceiling: Money,
    pub clamped: bool,
    /// Chain value before clamping and rounding.
    pub unclamped: f64,
}

impl FareQuote {
    /// Recomputes the final price from the recorded steps.
    pub fn replay(&self) -> Result<Money> {
        let raw = self
            .applied_steps
            .iter()
            .fold(self.base_fare.as_f64(), |acc, s| acc * s.multiplier);
        let (value, _) = clamp(raw, self.floor, self.ceiling);
        Money::from_f64(value)
    }
}

/// Band tables shared by every quote.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PricingBands {
    pub lead_time: LeadTimeBands,
    pub load_factor: LoadFactorBands,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuoteRequest<'a> {
    pub base: Money,
    pub days_to_departure: i64,
    pub inventory: &'a InventoryState,
    pub event_factor: f64,
    pub competitor_delta: f64,
    pub adjustment: PriceAction,
    pub floor: Money,
    pub ceiling: Money,
}

impl<'a> QuoteRequest<'a> {
    /// A request with neutral event, competitor and adjustment inputs.
    pub fn new(base: Money, days_to_departure: i64, inventory: &'a InventoryState, floor: Money, ceiling: Money) -> Self {
        QuoteRequest {
            base,
            days_to_departure,
            inventory,
            event_factor: 1.0,
            competitor_delta: 0.0,
            adjustment: PriceAction::Hold,
            floor,
            ceiling,
        }
    }
}

pub fn compose_quote(req: &QuoteRequest<'_>, bands: &PricingBands) -> Result<FareQuote> {
    if req.floor > req.ceiling {
        return Err(Error::invalid(format!("floor {} above ceiling {}", req.floor, req.ceiling)));
    }
    if !(req.event_factor.is_finite() && req.event_factor > 0.0) {
        return Err(Error::invalid(format!("event factor {} must be positive", req.event_factor)));
    }
    if !(-1.0..=1.0).contains(&req.competitor_delta) {
        return Err(Error::invalid(format!(
            "competitor delta {} outside [-1, 1]",
            req.competitor_delta
        )));
    }
    if !(0.0..=1.0).contains(&req.adjustment.magnitude()) {
        return Err(Error::invalid("adjustment magnitude outside [0, 1]"));
    }

    let lead = bands.lead_time.multiplier(req.days_to_departure)?;
    let inv = req.inventory;
    let load = crate::pricing::rules::load_factor_multiplier(inv.capacity(), inv.seats_sold(), &bands.load_factor)?;

    let mut steps = vec![
        PricingStep { step: StepKind::LeadTime, multiplier: lead },
        PricingStep { step: StepKind::LoadFactor, multiplier: load },
        PricingStep { step: StepKind::Event, multiplier: req.event_factor },
        PricingStep { step: StepKind::Competitor, multiplier: 1.0 + req.competitor_delta },
    ];
    if req.adjustment != PriceAction::Hold {
        steps.push(PricingStep {
            step: StepKind::Promotion,
            multiplier: req.adjustment.factor(),
        });
    }

    let raw = steps.iter().fold(req.base.as_f64(), |acc, s| acc * s.multiplier);
    let (value, clamped) = clamp(raw, req.floor, req.ceiling);
    Ok(FareQuote {
        final_price: Money::from_f64(value)?,
        base_fare: req.base,
        applied_steps: steps,
        floor: req.floor,
        ceiling: req.ceiling,
        clamped,
        unclamped: raw,
    })
}

fn clamp(raw: f64, floor: Money, ceiling: Money) -> (f64, bool) {
    if raw < floor.as_f64() {
        (floor.as_f64(), true)
    } else if raw > ceiling.as_f64() {
        (ceiling.as_f64(), true)
    } else {
        (raw, false)
    }
}
