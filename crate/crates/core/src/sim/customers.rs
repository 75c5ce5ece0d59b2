//! Simulated customers: who arrives, when, for which route, and what they
//! are willing to pay.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::fabric::LogNormalParams;
use crate::money::Money;
use crate::rng;
use crate::sim::arrivals::generate_arrivals_with;
use crate::time::{SimTime, MICROS_PER_DAY};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomerDraw {
    pub arrival_time: SimTime,
    pub route: String,
    pub wtp: Money,
    pub lead_days: u32,
    /// Trips per year.
    pub trip_frequency: u32,
    pub loyalty: bool,
}

impl CustomerDraw {
    pub fn profile_features(&self) -> [f64; 3] {
        [self.lead_days as f64, self.trip_frequency as f64, self.loyalty as u8 as f64]
    }
}

/// One willingness-to-pay draw, never below one cent.
pub fn sample_wtp<R: Rng + ?Sized>(params: &LogNormalParams, rng: &mut R) -> Money {
    let v = params.sample(rng);
    Money::from_f64(v).unwrap_or(Money::ZERO).max(Money::from_cents(1))
}

/// Whole days from `t` to departure at the end of the booking window.
pub fn days_to_departure(t: SimTime, horizon_days: u32) -> u32 {
    let end = horizon_days as u64 * MICROS_PER_DAY;
    (end.saturating_sub(t.0) / MICROS_PER_DAY) as u32
}

/// The full customer stream for `seed`. Pricing never feeds back into it,
/// so both arms of a comparison see identical customers.
pub fn draw_customers(cfg: &ScenarioConfig, seed: u64) -> Result<Vec<CustomerDraw>> {
    let arrivals = generate_arrivals_with(&cfg.arrival_profile(), &mut rng::stream(seed, "arrivals"))?;
    let mut route_rng = rng::stream(seed, "route-choice");
    let mut wtp_rng = rng::stream(seed, "wtp");
    let mut profile_rng = rng::stream(seed, "profile");
    let total_share: f64 = cfg.routes.iter().map(|r| r.demand_share).sum();

    let mut out = Vec::with_capacity(arrivals.len());
    for hours in arrivals {
        let arrival_time = SimTime::from_hours_f64(hours);
        let mut pick = route_rng.random::<f64>() * total_share;
        let route = cfg
            .routes
            .iter()
            .find(|r| {
                pick -= r.demand_share;
                pick < 0.0
            })
            .unwrap_or(cfg.routes.last().unwrap());
        let lead_days = days_to_departure(arrival_time, cfg.horizon_days);
        let mut params = route.wtp;
        if lead_days < route.late_booker_days {
            params.mu += route.late_mu_shift;
        }
        let wtp = sample_wtp(&params, &mut wtp_rng);
        let trip_frequency = profile_rng.random_range(0..=24);
        let loyalty = profile_rng.random_bool(0.3);
        out.push(CustomerDraw {
            arrival_time,
            route: route.id.clone(),
            wtp,
            lead_days,
            trip_frequency,
            loyalty,
        });
    }
    Ok(out)
}

/// Purchase outcome for one offer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Decision {
    /// Bought; satisfaction is the normalised consumer surplus.
    Purchase { satisfaction: f64 },
    NoSale,
}

/// Buys iff `price <= wtp`, scoring `(wtp - price) / wtp`.
pub fn satisfaction_score(price: Money, wtp: Money) -> Decision {
    if wtp == Money::ZERO || price > wtp {
        return Decision::NoSale;
    }
    let w = wtp.as_f64();
    Decision::Purchase {
        satisfaction: (w - price.as_f64()) / w,
    }
}
