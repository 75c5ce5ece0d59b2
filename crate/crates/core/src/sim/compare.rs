//! Dynamic-versus-fixed comparisons under common random numbers.

use serde::{Deserialize, Serialize};

use crate::config::{PricingMode, ScenarioConfig};
use crate::error::{Error, Result};
use crate::money::Money;
use crate::sim::customers::draw_customers;
use crate::sim::engine::{run_with_customers, ScenarioReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub dynamic_revenue: Money,
    pub fixed_revenue: Money,
    /// `None` when the fixed arm earned nothing.
    pub uplift_pct: Option<f64>,
    pub dynamic_bookings: u64,
    pub fixed_bookings: u64,
    pub dynamic_satisfaction: Option<f64>,
    pub fixed_satisfaction: Option<f64>,
    /// Both arms saw the same arrival times, routes and wtp draws.
    pub crn_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpliftReport {
    pub scenario: String,
    pub seeds: Vec<SeedOutcome>,
    /// Mean of the defined per-seed uplifts.
    pub mean_uplift_pct: Option<f64>,
    pub undefined_uplift_seeds: Vec<u64>,
    pub mean_dynamic_satisfaction: Option<f64>,
    pub mean_fixed_satisfaction: Option<f64>,
    pub crn_verified: bool,
}

/// Both arms of one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmPair {
    pub dynamic: ScenarioReport,
    pub fixed: ScenarioReport,
    pub crn_verified: bool,
}

fn with_mode(cfg: &ScenarioConfig, mode: PricingMode) -> ScenarioConfig {
    ScenarioConfig {
        pricing_mode: mode,
        ..cfg.clone()
    }
}

/// Runs the dynamic and fixed arms for one seed. Each arm draws its own
/// customer stream; the streams are then checked for equality.
pub fn run_arms(cfg: &ScenarioConfig, seed: u64) -> Result<ArmPair> {
    let dyn_cfg = with_mode(cfg, PricingMode::Dynamic);
    let fixed_cfg = with_mode(cfg, PricingMode::Fixed);
    let dyn_customers = draw_customers(&dyn_cfg, seed)?;
    let fixed_customers = draw_customers(&fixed_cfg, seed)?;
    let crn_verified = dyn_customers == fixed_customers;
    Ok(ArmPair {
        dynamic: run_with_customers(&dyn_cfg, seed, &dyn_customers)?,
        fixed: run_with_customers(&fixed_cfg, seed, &fixed_customers)?,
        crn_verified,
    })
}

fn outcome(seed: u64, pair: &ArmPair) -> SeedOutcome {
    let (d, f) = (&pair.dynamic, &pair.fixed);
    let uplift_pct = (f.total_revenue > Money::ZERO).then(|| {
        let fixed = f.total_revenue.cents() as f64;
        (d.total_revenue.cents() as f64 - fixed) / fixed * 100.0
    });
    SeedOutcome {
        seed,
        dynamic_revenue: d.total_revenue,
        fixed_revenue: f.total_revenue,
        uplift_pct,
        dynamic_bookings: d.bookings_accepted,
        fixed_bookings: f.bookings_accepted,
        dynamic_satisfaction: d.mean_satisfaction,
        fixed_satisfaction: f.mean_satisfaction,
        crn_verified: pair.crn_verified && d.customer_digest == f.customer_digest,
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Compares dynamic and fixed pricing over `seeds`. Seeds run on separate
/// threads with independent state; results are ordered as given.
pub fn compare_pricing_modes(cfg: &ScenarioConfig, seeds: &[u64]) -> Result<UpliftReport> {
    if seeds.is_empty() {
        return Err(Error::invalid("at least one seed is required"));
    }
    cfg.validate()?;
    let results: Vec<Result<SeedOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| scope.spawn(move || run_arms(cfg, seed).map(|p| outcome(seed, &p))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
    });
    let seeds_out = results.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(UpliftReport {
        scenario: cfg.name.clone(),
        mean_uplift_pct: mean(seeds_out.iter().filter_map(|s| s.uplift_pct)),
        undefined_uplift_seeds: seeds_out.iter().filter(|s| s.uplift_pct.is_none()).map(|s| s.seed).collect(),
        mean_dynamic_satisfaction: mean(seeds_out.iter().filter_map(|s| s.dynamic_satisfaction)),
        mean_fixed_satisfaction: mean(seeds_out.iter().filter_map(|s| s.fixed_satisfaction)),
        crn_verified: seeds_out.iter().all(|s| s.crn_verified),
        seeds: seeds_out,
    })
}
