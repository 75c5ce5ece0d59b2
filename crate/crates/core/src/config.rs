//! Scenario configuration: strict JSON parsing, defaults and validation.
//!
//! Unknown keys are rejected. Every error names the offending key as a
//! path such as `routes[1].floor`.

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::{EventCalendar, ExternalEvent};
use crate::fabric::{LogNormalParams, Strategy};
use crate::money::Money;
use crate::pricing::{HeuristicPolicy, LeadTimeBands, LoadFactorBands, PricingBands};
use crate::sim::arrivals::{ArrivalProfile, RateSegment};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PricingMode {
    #[default]
    Dynamic,
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub seed: u64,
    #[serde(default = "default_currency")]
    pub currency: String,
    #[serde(default)]
    pub pricing_mode: PricingMode,
    /// Date on which bookings open.
    #[serde(default = "default_start_date")]
    pub start_date: NaiveDate,
    /// Booking window length; every route departs at its end.
    #[serde(default = "default_horizon_days")]
    pub horizon_days: u32,
    pub routes: Vec<RouteConfig>,
    pub arrivals: ArrivalConfig,
    #[serde(default)]
    pub lead_time_bands: LeadTimeBands,
    #[serde(default)]
    pub load_factor_bands: LoadFactorBands,
    #[serde(default)]
    pub heuristic: HeuristicConfig,
    #[serde(default)]
    pub competitor: CompetitorConfig,
    #[serde(default)]
    pub events: EventsConfig,
    #[serde(default)]
    pub fabric: FabricConfig,
    #[serde(default)]
    pub reporting: ReportingConfig,
}

fn default_name() -> String {
    "scenario".into()
}

fn default_currency() -> String {
    "USD".into()
}

fn default_start_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2026, 1, 1).unwrap()
}

fn default_horizon_days() -> u32 {
    90
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteConfig {
    pub id: String,
    pub capacity: u32,
    pub base_fare: Money,
    #[serde(default)]
    pub floor: Money,
    pub ceiling: Money,
    /// Relative share of arrivals choosing this route.
    #[serde(default = "one")]
    pub demand_share: f64,
    /// Willingness to pay: `ln(wtp) ~ N(mu, sigma^2)` in currency units.
    pub wtp: LogNormalParams,
    /// Customers booking within this many days of departure draw from
    /// `ln(wtp) ~ N(mu + late_mu_shift, sigma^2)`.
    #[serde(default)]
    pub late_booker_days: u32,
    #[serde(default)]
    pub late_mu_shift: f64,
    /// Expected demand mix per fare class; limits are allocated from it.
    #[serde(default = "default_fare_classes")]
    pub fare_classes: BTreeMap<String, f64>,
}

fn one() -> f64 {
    1.0
}

fn default_fare_classes() -> BTreeMap<String, f64> {
    BTreeMap::from([("economy".to_string(), 1.0)])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrivalConfig {
    /// Piecewise-constant arrival rate, starting at hour 0.
    pub segments: Vec<RateSegment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HeuristicConfig {
    pub enabled: bool,
    pub policy: HeuristicPolicy,
    /// Use the demand forecast to project final sales for the trigger.
    pub use_forecast: bool,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            enabled: true,
            policy: HeuristicPolicy::default(),
            use_forecast: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptedQuote {
    pub competitor: String,
    pub route: String,
    /// Booking-window day (0 = opening day) on which the quote appears.
    pub day: u32,
    pub price: Money,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompetitorConfig {
    pub enabled: bool,
    pub parity_band: f64,
    pub max_step: f64,
    pub script: Vec<ScriptedQuote>,
}

impl Default for CompetitorConfig {
    fn default() -> Self {
        CompetitorConfig {
            enabled: true,
            parity_band: crate::competitor::DEFAULT_PARITY_BAND,
            max_step: 0.05,
            script: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EventsConfig {
    pub clamp_min: f64,
    pub clamp_max: f64,
    pub calendar: Vec<ExternalEvent>,
}

impl Default for EventsConfig {
    fn default() -> Self {
        EventsConfig {
            clamp_min: 0.5,
            clamp_max: 2.0,
            calendar: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkLatency {
    pub src: String,
    pub dst: String,
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outage {
    pub instance: String,
    pub from_hour: f64,
    pub to_hour: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FabricConfig {
    pub pricing_instances: u32,
    pub strategy: Strategy,
    pub heartbeat_interval_s: u64,
    pub heartbeat_ttl_s: u64,
    pub cache_ttl_s: u64,
    pub cache_capacity: usize,
    pub default_latency: LogNormalParams,
    pub latency: Vec<LinkLatency>,
    /// Fixed per-request compute cost per service, in milliseconds.
    pub compute_ms: BTreeMap<String, f64>,
    pub outages: Vec<Outage>,
}

impl Default for FabricConfig {
    fn default() -> Self {
        FabricConfig {
            pricing_instances: 3,
            strategy: Strategy::RoundRobin,
            heartbeat_interval_s: 900,
            heartbeat_ttl_s: 1800,
            cache_ttl_s: 300,
            cache_capacity: 256,
            default_latency: LogNormalParams::from_median_ms(5.0, 0.5),
            latency: Vec::new(),
            compute_ms: BTreeMap::from([
                ("gateway".to_string(), 0.5),
                ("pricing".to_string(), 2.0),
                ("demand".to_string(), 1.5),
                ("competitor".to_string(), 1.0),
                ("events".to_string(), 0.5),
            ]),
            outages: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReportingConfig {
    pub histogram_bin_ms: f64,
    pub throughput_window_minutes: u64,
    pub latency_window_minutes: u64,
}

impl Default for ReportingConfig {
    fn default() -> Self {
        ReportingConfig {
            histogram_bin_ms: 5.0,
            throughput_window_minutes: 60,
            latency_window_minutes: 1440,
        }
    }
}

pub const SERVICES: [&str; 5] = ["gateway", "pricing", "demand", "competitor", "events"];

impl ScenarioConfig {
    pub fn bands(&self) -> PricingBands {
        PricingBands {
            lead_time: self.lead_time_bands.clone(),
            load_factor: self.load_factor_bands.clone(),
        }
    }

    pub fn arrival_profile(&self) -> ArrivalProfile {
        ArrivalProfile {
            segments: self.arrivals.segments.clone(),
            duration_hours: self.horizon_days as f64 * 24.0,
        }
    }

    pub fn calendar(&self) -> Result<EventCalendar> {
        let mut cal = EventCalendar::with_clamp(self.events.clamp_min, self.events.clamp_max)?;
        for e in &self.events.calendar {
            cal.ingest(e.clone())?;
        }
        Ok(cal)
    }

    pub fn route(&self, id: &str) -> Option<&RouteConfig> {
        self.routes.iter().find(|r| r.id == id)
    }

    pub fn pricing_instance_ids(&self) -> Vec<String> {
        (0..self.fabric.pricing_instances).map(|i| format!("pricing-{i}")).collect()
    }

    /// Checks cross-field invariants that serde cannot express.
    pub fn validate(&self) -> Result<()> {
        if self.currency.len() != 3 || !self.currency.chars().all(|c| c.is_ascii_uppercase()) {
            return Err(Error::validation("currency", format!("`{}` is not an ISO-4217 code", self.currency)));
        }
        if self.horizon_days == 0 {
            return Err(Error::validation("horizon_days", "must be positive"));
        }
        if self.routes.is_empty() {
            return Err(Error::validation("routes", "at least one route is required"));
        }
        let mut ids = BTreeSet::new();
        for (i, r) in self.routes.iter().enumerate() {
            let key = |f: &str| format!("routes[{i}].{f}");
            if r.id.is_empty() {
                return Err(Error::validation(key("id"), "must not be empty"));
            }
            if !ids.insert(r.id.as_str()) {
                return Err(Error::validation(key("id"), format!("duplicate route `{}`", r.id)));
            }
            if r.capacity == 0 {
                return Err(Error::validation(key("capacity"), "must be positive"));
            }
            if r.floor > r.ceiling {
                return Err(Error::validation(key("floor"), format!("{} above ceiling {}", r.floor, r.ceiling)));
            }
            if r.base_fare == Money::ZERO {
                return Err(Error::validation(key("base_fare"), "must be positive"));
            }
            if r.base_fare < r.floor || r.base_fare > r.ceiling {
                return Err(Error::validation(
                    key("base_fare"),
                    format!("{} outside [{}, {}]", r.base_fare, r.floor, r.ceiling),
                ));
            }
            if !(r.demand_share.is_finite() && r.demand_share > 0.0) {
                return Err(Error::validation(key("demand_share"), "must be positive"));
            }
            r.wtp.validate().map_err(|e| Error::validation(key("wtp"), e.to_string()))?;
            if !r.late_mu_shift.is_finite() {
                return Err(Error::validation(key("late_mu_shift"), "must be finite"));
            }
            crate::pricing::reallocate_fare_classes(&r.fare_classes, r.capacity)
                .map_err(|e| Error::validation(key("fare_classes"), e.to_string()))?;
        }

        self.arrival_profile()
            .validate()
            .map_err(|e| Error::validation("arrivals.segments", e.to_string()))?;

        self.heuristic
            .policy
            .validate()
            .map_err(|e| Error::validation("heuristic.policy", e.to_string()))?;

        let c = &self.competitor;
        if !(0.0..1.0).contains(&c.parity_band) {
            return Err(Error::validation("competitor.parity_band", "must lie in [0, 1)"));
        }
        if !(c.max_step > 0.0 && c.max_step <= 1.0) {
            return Err(Error::validation("competitor.max_step", "must lie in (0, 1]"));
        }
        for (i, q) in c.script.iter().enumerate() {
            if self.route(&q.route).is_none() {
                return Err(Error::validation(format!("competitor.script[{i}].route"), format!("unknown route `{}`", q.route)));
            }
            if q.price == Money::ZERO {
                return Err(Error::validation(format!("competitor.script[{i}].price"), "must be positive"));
            }
        }

        EventCalendar::with_clamp(self.events.clamp_min, self.events.clamp_max)
            .map_err(|e| Error::validation("events.clamp_min", e.to_string()))?;
        for (i, e) in self.events.calendar.iter().enumerate() {
            e.validate().map_err(|err| Error::validation(format!("events.calendar[{i}]"), err.to_string()))?;
            if let Some(r) = e.routes.iter().find(|r| self.route(r).is_none()) {
                return Err(Error::validation(format!("events.calendar[{i}].routes"), format!("unknown route `{r}`")));
            }
        }

        let f = &self.fabric;
        if f.pricing_instances == 0 {
            return Err(Error::validation("fabric.pricing_instances", "must be positive"));
        }
        if f.heartbeat_interval_s == 0 {
            return Err(Error::validation("fabric.heartbeat_interval_s", "must be positive"));
        }
        if f.heartbeat_ttl_s < f.heartbeat_interval_s {
            return Err(Error::validation("fabric.heartbeat_ttl_s", "must be at least the heartbeat interval"));
        }
        if f.cache_ttl_s == 0 {
            return Err(Error::validation("fabric.cache_ttl_s", "must be positive"));
        }
        if f.cache_capacity == 0 {
            return Err(Error::validation("fabric.cache_capacity", "must be positive"));
        }
        f.default_latency
            .validate()
            .map_err(|e| Error::validation("fabric.default_latency", e.to_string()))?;
        for (i, l) in f.latency.iter().enumerate() {
            LogNormalParams { mu: l.mu, sigma: l.sigma }
                .validate()
                .map_err(|e| Error::validation(format!("fabric.latency[{i}]"), e.to_string()))?;
        }
        for (name, ms) in &f.compute_ms {
            if !SERVICES.contains(&name.as_str()) {
                return Err(Error::validation(format!("fabric.compute_ms.{name}"), "unknown service"));
            }
            if !(ms.is_finite() && *ms >= 0.0) {
                return Err(Error::validation(format!("fabric.compute_ms.{name}"), "must be non-negative"));
            }
        }
        let known: BTreeSet<String> = self
            .pricing_instance_ids()
            .into_iter()
            .chain(SERVICES.iter().filter(|s| **s != "pricing").map(|s| format!("{s}-0")))
            .collect();
        for (i, o) in f.outages.iter().enumerate() {
            if !known.contains(&o.instance) {
                return Err(Error::validation(format!("fabric.outages[{i}].instance"), format!("unknown instance `{}`", o.instance)));
            }
            if !(o.from_hour >= 0.0 && o.to_hour > o.from_hour) {
                return Err(Error::validation(format!("fabric.outages[{i}]"), "requires 0 <= from_hour < to_hour"));
            }
        }

        let rep = &self.reporting;
        if !(rep.histogram_bin_ms.is_finite() && rep.histogram_bin_ms > 0.0) {
            return Err(Error::validation("reporting.histogram_bin_ms", "must be positive"));
        }
        if rep.throughput_window_minutes == 0 {
            return Err(Error::validation("reporting.throughput_window_minutes", "must be positive"));
        }
        if rep.latency_window_minutes == 0 {
            return Err(Error::validation("reporting.latency_window_minutes", "must be positive"));
        }
        Ok(())
    }

    /// Fully-defaulted JSON form of this config.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario_config(text: &str) -> Result<ScenarioConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let msg = e.inner().to_string();
        let key = match missing_field(&msg) {
            Some(field) if path == "." => field.to_string(),
            Some(field) => format!("{path}.{field}"),
            None => path,
        };
        Error::validation(key, msg)
    })?;
    cfg.validate()?;
    Ok(cfg)
}

fn missing_field(msg: &str) -> Option<&str> {
    let rest = msg.strip_prefix("missing field `")?;
    rest.split('`').next()
}

/// Shipped scenarios addressable by name.
pub const BUILTIN_SCENARIOS: [(&str, &str); 2] = [
    ("peak_demo", include_str!("../scenarios/peak_demo.json")),
    ("offpeak_demo", include_str!("../scenarios/offpeak_demo.json")),
];

pub fn builtin_scenario(name: &str) -> Option<&'static str> {
    BUILTIN_SCENARIOS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "seed": 1,
        "routes": [{"id": "A-B", "capacity": 100, "base_fare": 200.0, "ceiling": 600.0,
                    "wtp": {"mu": 5.3, "sigma": 0.4}}],
        "arrivals": {"segments": [{"start_hour": 0.0, "rate_per_hour": 1.0}]}
    }"#;

    fn key_of(err: Error) -> String {
        match err {
            Error::Validation { key, .. } => key,
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn minimal_document_gets_defaults() {
        let cfg = parse_scenario_config(MINIMAL).unwrap();
        assert_eq!(cfg.competitor.parity_band, 0.01);
        assert_eq!(cfg.fabric.cache_ttl_s, 300);
        assert_eq!(cfg.lead_time_bands, LeadTimeBands::default());
        assert_eq!(cfg.load_factor_bands, LoadFactorBands::default());
        assert_eq!(cfg.pricing_mode, PricingMode::Dynamic);
        assert_eq!(cfg.routes[0].floor, Money::ZERO);
    }

    #[test]
    fn missing_seed_named() {
        let text = MINIMAL.replace("\"seed\": 1,", "");
        assert_eq!(key_of(parse_scenario_config(&text).unwrap_err()), "seed");
    }

    #[test]
    fn missing_nested_field_named() {
        let text = MINIMAL.replace("\"capacity\": 100, ", "");
        assert_eq!(key_of(parse_scenario_config(&text).unwrap_err()), "routes[0].capacity");
    }

    #[test]
    fn unknown_key_rejected() {
        let text = MINIMAL.replace("\"seed\": 1,", "\"seed\": 1, \"sede\": 2,");
        assert_eq!(key_of(parse_scenario_config(&text).unwrap_err()), "sede");
    }

    #[test]
    fn band_gap_rejected() {
        let text = MINIMAL.replace(
            "\"seed\": 1,",
            r#""seed": 1, "lead_time_bands": [
                {"min_days_exclusive": null, "max_days_inclusive": 60, "multiplier": 1.2},
                {"min_days_exclusive": 61, "max_days_inclusive": null, "multiplier": 0.8}],"#,
        );
        let err = parse_scenario_config(&text).unwrap_err();
        let msg = err.to_string();
        assert_eq!(key_of(err), "lead_time_bands");
        assert!(msg.contains("gap"), "{msg}");
    }

    #[test]
    fn cross_field_validation() {
        let text = MINIMAL.replace("\"ceiling\": 600.0", "\"ceiling\": 600.0, \"floor\": 700.0");
        assert_eq!(key_of(parse_scenario_config(&text).unwrap_err()), "routes[0].floor");
        let text = MINIMAL.replace("\"routes\": [", "\"competitor\": {\"script\": [{\"competitor\": \"x\", \"route\": \"nope\", \"day\": 0, \"price\": 10.0}]}, \"routes\": [");
        assert_eq!(key_of(parse_scenario_config(&text).unwrap_err()), "competitor.script[0].route");
    }

    #[test]
    fn echoed_defaults_reparse_equal() {
        let cfg = parse_scenario_config(MINIMAL).unwrap();
        let again = parse_scenario_config(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn builtin_scenarios_parse() {
        for (name, text) in BUILTIN_SCENARIOS {
            let cfg = parse_scenario_config(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(cfg.name, name);
        }
    }
}
