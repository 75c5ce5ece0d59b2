//! Competitor quote store, market position and bounded price responses.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::Money;
use crate::time::SimTime;

pub const DEFAULT_PARITY_BAND: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompetitorQuote {
    pub competitor: String,
    pub route: String,
    pub price: Money,
    pub observed_at: SimTime,
}

/// Latest quote per (competitor, route).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuoteStore {
    quotes: BTreeMap<(String, String), CompetitorQuote>,
}

impl QuoteStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps `q` unless a strictly newer quote for the same key is held.
    pub fn ingest(&mut self, q: CompetitorQuote) -> Result<()> {
        if q.price == Money::ZERO {
            return Err(Error::invalid(format!(
                "quote from `{}` on `{}` has non-positive price",
                q.competitor, q.route
            )));
        }
        let key = (q.competitor.clone(), q.route.clone());
        match self.quotes.get(&key) {
            Some(held) if held.observed_at > q.observed_at => {}
            _ => {
                self.quotes.insert(key, q);
            }
        }
        Ok(())
    }

    pub fn get(&self, competitor: &str, route: &str) -> Option<&CompetitorQuote> {
        self.quotes.get(&(competitor.to_string(), route.to_string()))
    }

    /// Quotes for `route`, ordered by competitor id.
    pub fn for_route(&self, route: &str) -> Vec<CompetitorQuote> {
        self.quotes
            .values()
            .filter(|q| q.route == route)
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.quotes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotes.is_empty()
    }
}

pub fn ingest_competitor_quote(mut store: QuoteStore, q: CompetitorQuote) -> Result<QuoteStore> {
    store.ingest(q)?;
    Ok(store)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stance {
    Premium,
    Parity,
    Undercut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketPosition {
    pub our_price: Money,
    pub cheapest_rival: Money,
    pub median_rival: Money,
    /// `(our - cheapest) / cheapest`.
    pub gap_vs_cheapest: f64,
    pub stance: Stance,
}

pub fn market_position(our_price: Money, rivals: &[CompetitorQuote], parity_band: f64) -> Result<MarketPosition> {
    if rivals.is_empty() {
        return Err(Error::NoData("no rival quotes".into()));
    }
    let mut prices: Vec<Money> = rivals.iter().map(|q| q.price).collect();
    prices.sort();
    let cheapest = prices[0];
    // lower middle for even counts
    let median = prices[(prices.len() - 1) / 2];
    let gap = (our_price.as_f64() - cheapest.as_f64()) / cheapest.as_f64();
    let stance = if gap.abs() <= parity_band {
        Stance::Parity
    } else if gap > 0.0 {
        Stance::Premium
    } else {
        Stance::Undercut
    };
    Ok(MarketPosition {
        our_price,
        cheapest_rival: cheapest,
        median_rival: median,
        gap_vs_cheapest: gap,
        stance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjustmentPolicy {
    pub max_step: f64,
    pub floor: Money,
}

/// Signed fractional move of our price toward the cheapest rival, capped
/// at `max_step` and never taking the price below `floor`.
pub fn recommend_adjustment(pos: &MarketPosition, policy: &AdjustmentPolicy) -> f64 {
    if pos.stance == Stance::Parity || pos.our_price == Money::ZERO {
        return 0.0;
    }
    let ours = pos.our_price.as_f64();
    let toward = (pos.cheapest_rival.as_f64() - ours) / ours;
    let mut delta = toward.clamp(-policy.max_step, policy.max_step);
    if delta < 0.0 {
        let floor = policy.floor.as_f64();
        let to_floor = ((floor - ours) / ours).min(0.0);
        delta = delta.max(to_floor);
    }
    delta
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FeedLine {
    competitor: String,
    route: String,
    price: f64,
    /// Simulated minutes.
    observed_at: u64,
}

/// Parses a JSON-lines competitor feed. Errors carry the 1-based line number.
pub fn read_competitor_feed(reader: impl BufRead) -> Result<Vec<CompetitorQuote>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let f: FeedLine = serde_json::from_str(&line)
            .map_err(|e| Error::invalid(format!("line {lineno}: {e}")))?;
        if !(f.price.is_finite() && f.price > 0.0) {
            return Err(Error::invalid(format!("line {lineno}: price {} must be positive", f.price)));
        }
        out.push(CompetitorQuote {
            competitor: f.competitor,
            route: f.route,
            price: Money::from_f64(f.price)?,
            observed_at: SimTime::from_minutes(f.observed_at),
        });
    }
    Ok(out)
}
