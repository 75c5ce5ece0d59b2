//! The scenario loop: customers arrive on the event clock, quote requests
//! travel through the fabric to a pricing instance and its dependencies,
//! and purchases update inventory, demand history and the report.

use std::collections::BTreeMap;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::competitor::{market_position, recommend_adjustment, AdjustmentPolicy, CompetitorQuote, QuoteStore};
use crate::config::{PricingMode, RouteConfig, ScenarioConfig, ScriptedQuote};
use crate::demand::{estimate_elasticity, forecast_demand, mape, rmse, DemandHistory, ElasticityEstimate};
use crate::error::Result;
use crate::events::EventCalendar;
use crate::fabric::{CacheStats, CacheStore, LatencyModel, LoadBalancer, LogNormalParams, Registry, SimClock};
use crate::money::Money;
use crate::pricing::{
    compose_quote, heuristic_trigger, reallocate_fare_classes, FareQuote, InventoryState, PriceAction, PricingBands,
    QuoteRequest, StepKind,
};
use crate::report::{histogram, HistogramBin};
use crate::sim::customers::{days_to_departure, draw_customers, satisfaction_score, CustomerDraw, Decision};
use crate::time::{SimTime, MICROS_PER_DAY, MICROS_PER_MINUTE, MICROS_PER_SECOND};

pub const SATISFACTION_LABEL: &str = "simulated satisfaction proxy";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteReport {
    pub route: String,
    pub capacity: u32,
    pub seats_sold: u32,
    pub revenue: Money,
    pub average_fare: Option<Money>,
    pub load_factor: f64,
    pub fare_class_limits: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputPoint {
    pub window_start_minutes: u64,
    pub requests: u64,
    pub completed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyPoint {
    pub window_start_minutes: u64,
    pub src: String,
    pub dst: String,
    pub samples: u64,
    pub mean_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DailyRevenue {
    pub day: u32,
    pub date: NaiveDate,
    pub revenue: Money,
    pub bookings: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DailySatisfaction {
    pub day: u32,
    pub date: NaiveDate,
    pub purchases: u64,
    pub mean_satisfaction: Option<f64>,
}

/// Everything measured in one simulated run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub seed: u64,
    pub pricing_mode: PricingMode,
    pub currency: String,
    pub arrivals: u64,
    pub offers_made: u64,
    pub bookings_accepted: u64,
    pub failed_requests: u64,
    pub degraded_requests: u64,
    pub total_revenue: Money,
    pub mean_satisfaction: Option<f64>,
    pub satisfaction_label: String,
    pub routes: Vec<RouteReport>,
    pub response_time_mean_ms: Option<f64>,
    pub response_time_p95_ms: Option<f64>,
    pub response_time_histogram: Vec<HistogramBin>,
    pub throughput_series: Vec<ThroughputPoint>,
    pub latency_series: Vec<LatencyPoint>,
    pub revenue_daily: Vec<DailyRevenue>,
    pub satisfaction_daily: Vec<DailySatisfaction>,
    pub demand_forecast_mape: Option<f64>,
    pub demand_forecast_rmse: Option<f64>,
    pub price_elasticity: Option<ElasticityEstimate>,
    pub cache: CacheStats,
    /// Sum over requests of time spent in flight on a pricing instance.
    pub in_flight_seconds: f64,
    pub instance_requests: BTreeMap<String, u64>,
    pub events_executed: u64,
    /// FNV-1a digest of the executed `(fire_time, seq)` trace.
    pub trace_digest: u64,
    /// FNV-1a digest of the customer stream (arrival times and wtp).
    pub customer_digest: u64,
}

#[derive(Debug, Clone)]
enum SimEvent {
    Arrival(usize),
    Complete { instance: String },
    Heartbeat { service: String, instance: String },
}

#[derive(Debug, Clone)]
enum Cached {
    Projection(Option<f64>),
    Rivals(Vec<CompetitorQuote>),
    Impact(f64),
}

struct RouteState {
    cfg: RouteConfig,
    sold: u32,
    revenue: Money,
    history: DemandHistory,
    fare_class_limits: BTreeMap<String, u32>,
}

#[derive(Default)]
struct DayStats {
    revenue: Money,
    bookings: u64,
    satisfaction_sum: f64,
    offered_price_sum: f64,
    offers: u64,
}

#[derive(Default)]
struct LatencyAcc {
    sum_ms: f64,
    samples: u64,
}

struct Sim<'a> {
    cfg: &'a ScenarioConfig,
    customers: &'a [CustomerDraw],
    bands: PricingBands,
    calendar: EventCalendar,
    routes: Vec<RouteState>,
    route_index: BTreeMap<String, usize>,
    registry: Registry,
    balancer: LoadBalancer,
    cache: CacheStore<String, Cached>,
    latency: LatencyModel,
    quotes: QuoteStore,
    script: Vec<ScriptedQuote>,
    script_pos: usize,
    horizon_end: SimTime,

    offers: u64,
    bookings: u64,
    failed: u64,
    degraded: u64,
    satisfaction: Vec<f64>,
    response_ms: Vec<f64>,
    in_flight_seconds: f64,
    instance_requests: BTreeMap<String, u64>,
    throughput: Vec<(u64, u64)>,
    latency_windows: BTreeMap<(u64, String, String), LatencyAcc>,
    days: Vec<DayStats>,
}

/// Runs `cfg` with its own seed.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    run_scenario_with_seed(cfg, cfg.seed)
}

pub fn run_scenario_with_seed(cfg: &ScenarioConfig, seed: u64) -> Result<ScenarioReport> {
    cfg.validate()?;
    let customers = draw_customers(cfg, seed)?;
    run_with_customers(cfg, seed, &customers)
}

/// Runs `cfg` against a pre-drawn customer stream.
pub fn run_with_customers(cfg: &ScenarioConfig, seed: u64, customers: &[CustomerDraw]) -> Result<ScenarioReport> {
    cfg.validate()?;
    let mut sim = Sim::new(cfg, seed, customers)?;
    let mut clock = SimClock::new(seed);
    sim.bootstrap(&mut clock)?;

    let mut failure = None;
    let trace = clock.run_until_idle(|clock, fired| {
        if failure.is_some() {
            return;
        }
        if let Err(e) = sim.handle(clock, fired.at, fired.event) {
            failure = Some(e);
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(sim.finish(seed, &trace))
}

impl<'a> Sim<'a> {
    fn new(cfg: &'a ScenarioConfig, seed: u64, customers: &'a [CustomerDraw]) -> Result<Self> {
        let mut routes = Vec::new();
        let mut route_index = BTreeMap::new();
        for (i, r) in cfg.routes.iter().enumerate() {
            route_index.insert(r.id.clone(), i);
            routes.push(RouteState {
                cfg: r.clone(),
                sold: 0,
                revenue: Money::ZERO,
                history: DemandHistory::new(&r.id, SimTime::ZERO, SimTime(MICROS_PER_DAY))?,
                fare_class_limits: reallocate_fare_classes(&r.fare_classes, r.capacity)?,
            });
        }

        let f = &cfg.fabric;
        let mut latency = LatencyModel::new(seed, f.default_latency);
        for l in &f.latency {
            latency = latency.with_pair(&l.src, &l.dst, LogNormalParams { mu: l.mu, sigma: l.sigma });
        }
        let mut script = cfg.competitor.script.clone();
        script.sort_by_key(|q| q.day);

        let horizon_end = SimTime::from_days(cfg.horizon_days as u64);
        let windows = horizon_end.0.div_ceil(cfg.reporting.throughput_window_minutes * MICROS_PER_MINUTE);
        Ok(Sim {
            cfg,
            customers,
            bands: cfg.bands(),
            calendar: cfg.calendar()?,
            routes,
            route_index,
            registry: Registry::new(SimTime::from_secs(f.heartbeat_ttl_s)),
            balancer: LoadBalancer::new(f.strategy),
            cache: CacheStore::new(f.cache_capacity),
            latency,
            quotes: QuoteStore::new(),
            script,
            script_pos: 0,
            horizon_end,
            offers: 0,
            bookings: 0,
            failed: 0,
            degraded: 0,
            satisfaction: Vec::new(),
            response_ms: Vec::new(),
            in_flight_seconds: 0.0,
            instance_requests: BTreeMap::new(),
            throughput: vec![(0, 0); windows as usize],
            latency_windows: BTreeMap::new(),
            days: (0..cfg.horizon_days).map(|_| DayStats::default()).collect(),
        })
    }

    fn bootstrap(&mut self, clock: &mut SimClock<SimEvent>) -> Result<()> {
        let interval = SimTime::from_secs(self.cfg.fabric.heartbeat_interval_s);
        let mut instances: Vec<(String, String)> = self
            .cfg
            .pricing_instance_ids()
            .into_iter()
            .map(|id| ("pricing".to_string(), id))
            .collect();
        for svc in ["demand", "competitor", "events"] {
            instances.push((svc.to_string(), format!("{svc}-0")));
        }
        for (service, instance) in instances {
            self.registry.register(&service, &instance, SimTime::ZERO)?;
            if interval < self.horizon_end {
                clock.schedule(interval, SimEvent::Heartbeat { service, instance });
            }
        }
        for (i, c) in self.customers.iter().enumerate() {
            clock.schedule_at(c.arrival_time, SimEvent::Arrival(i))?;
        }
        Ok(())
    }

    fn handle(&mut self, clock: &mut SimClock<SimEvent>, now: SimTime, event: SimEvent) -> Result<()> {
        match event {
            SimEvent::Heartbeat { service, instance } => {
                if !self.is_down(&instance, now) {
                    self.registry.heartbeat(&service, &instance, now)?;
                }
                let next = now + SimTime::from_secs(self.cfg.fabric.heartbeat_interval_s);
                if next < self.horizon_end {
                    clock.schedule_at(next, SimEvent::Heartbeat { service, instance })?;
                }
            }
            SimEvent::Complete { instance } => {
                self.registry.end_request("pricing", &instance)?;
                let w = self.throughput_window(now);
                if let Some(slot) = self.throughput.get_mut(w) {
                    slot.1 += 1;
                }
            }
            SimEvent::Arrival(i) => self.on_arrival(clock, now, i)?,
        }
        Ok(())
    }

    fn is_down(&self, instance: &str, now: SimTime) -> bool {
        let h = now.as_hours_f64();
        self.cfg
            .fabric
            .outages
            .iter()
            .any(|o| o.instance == instance && o.from_hour <= h && h < o.to_hour)
    }

    fn throughput_window(&self, t: SimTime) -> usize {
        (t.0 / (self.cfg.reporting.throughput_window_minutes * MICROS_PER_MINUTE)) as usize
    }

    fn hop(&mut self, src: &str, dst: &str, now: SimTime) -> SimTime {
        let lat = self.latency.sample_latency(src, dst);
        let w = now.0 / (self.cfg.reporting.latency_window_minutes * MICROS_PER_MINUTE)
            * self.cfg.reporting.latency_window_minutes;
        let acc = self
            .latency_windows
            .entry((w, src.to_string(), dst.to_string()))
            .or_default();
        acc.sum_ms += lat.as_millis_f64();
        acc.samples += 1;
        lat
    }

    fn compute_cost(&self, service: &str) -> SimTime {
        let ms = self.cfg.fabric.compute_ms.get(service).copied().unwrap_or(0.0);
        SimTime((ms * 1000.0).round() as u64)
    }

    fn on_arrival(&mut self, clock: &mut SimClock<SimEvent>, now: SimTime, idx: usize) -> Result<()> {
        let customers = self.customers;
        let customer = &customers[idx];
        let w = self.throughput_window(now);
        if let Some(slot) = self.throughput.get_mut(w) {
            slot.0 += 1;
        }
        let day = (now.0 / MICROS_PER_DAY) as usize;
        self.apply_script(day as u32)?;

        // gateway -> pricing
        let healthy = self.registry.resolve("pricing", now);
        let target = match self.balancer.route("pricing", &healthy) {
            Ok(i) => healthy[i].instance_id.clone(),
            Err(_) => {
                self.failed += 1;
                return Ok(());
            }
        };
        let mut elapsed = self.compute_cost("gateway") + self.hop("gateway", "pricing", now);
        if self.is_down(&target, now) {
            // stale registration: the request times out at the dead instance
            self.failed += 1;
            return Ok(());
        }
        elapsed = elapsed + self.compute_cost("pricing");
        *self.instance_requests.entry(target.clone()).or_insert(0) += 1;

        let ri = self.route_index[&customer.route];
        let days_out = days_to_departure(now, self.cfg.horizon_days);
        let quote = match self.cfg.pricing_mode {
            PricingMode::Fixed => self.fixed_quote(ri),
            PricingMode::Dynamic => {
                let (quote, extra) = self.dynamic_quote(ri, day, days_out, now)?;
                elapsed = elapsed + extra;
                quote
            }
        };

        self.registry.begin_request("pricing", &target)?;
        clock.schedule(elapsed, SimEvent::Complete { instance: target });
        self.response_ms.push(elapsed.as_millis_f64());
        self.in_flight_seconds += elapsed.0 as f64 / MICROS_PER_SECOND as f64;
        self.offers += 1;

        let price = quote.final_price;
        let stats = self.days.get_mut(day).expect("arrival inside horizon");
        stats.offers += 1;
        stats.offered_price_sum += price.as_f64();

        let route = &mut self.routes[ri];
        if route.sold >= route.cfg.capacity {
            return Ok(());
        }
        if let Decision::Purchase { satisfaction } = satisfaction_score(price, customer.wtp) {
            route.sold += 1;
            route.revenue = route.revenue + price;
            route.history.ingest_booking(now, 1)?;
            self.bookings += 1;
            self.satisfaction.push(satisfaction);
            stats.revenue = stats.revenue + price;
            stats.bookings += 1;
            stats.satisfaction_sum += satisfaction;
        }
        Ok(())
    }

    fn apply_script(&mut self, day: u32) -> Result<()> {
        while let Some(q) = self.script.get(self.script_pos) {
            if q.day > day {
                break;
            }
            self.quotes.ingest(CompetitorQuote {
                competitor: q.competitor.clone(),
                route: q.route.clone(),
                price: q.price,
                observed_at: SimTime::from_days(q.day as u64),
            })?;
            self.script_pos += 1;
        }
        Ok(())
    }

    fn fixed_quote(&self, ri: usize) -> FareQuote {
        let r = &self.routes[ri].cfg;
        FareQuote {
            final_price: r.base_fare,
            base_fare: r.base_fare,
            applied_steps: Vec::new(),
            floor: r.floor,
            ceiling: r.ceiling,
            clamped: false,
            unclamped: r.base_fare.as_f64(),
        }
    }

    /// Fetches a dependency value through the cache; a miss costs a round
    /// trip to the owning service. Unreachable services degrade to `fallback`.
    fn fetch(
        &mut self,
        service: &str,
        key: String,
        now: SimTime,
        fallback: Cached,
        compute: impl FnOnce(&Self) -> Result<Cached>,
    ) -> Result<(Cached, SimTime)> {
        if let Some(v) = self.cache.get(&key, now) {
            return Ok((v, SimTime::ZERO));
        }
        let instance = format!("{service}-0");
        let reachable = !self.registry.resolve(service, now).is_empty() && !self.is_down(&instance, now);
        let mut cost = self.hop("pricing", service, now);
        if !reachable {
            self.degraded += 1;
            return Ok((fallback, cost));
        }
        cost = cost + self.compute_cost(service) + self.hop(service, "pricing", now);
        let v = compute(self)?;
        let ttl = SimTime::from_secs(self.cfg.fabric.cache_ttl_s);
        self.cache.put(key, v.clone(), ttl, now);
        Ok((v, cost))
    }

    fn dynamic_quote(&mut self, ri: usize, day: usize, days_out: u32, now: SimTime) -> Result<(FareQuote, SimTime)> {
        let route_id = self.routes[ri].cfg.id.clone();
        let date = self.date_of(day as u32);
        let mut extra = SimTime::ZERO;

        let (impact, cost) = self.fetch("events", format!("events:{route_id}:{day}"), now, Cached::Impact(1.0), |s| {
            Ok(Cached::Impact(s.calendar.impact_factor(date, &route_id)))
        })?;
        extra = extra + cost;
        let event_factor = match impact {
            Cached::Impact(f) => f,
            _ => 1.0,
        };

        let heuristic = self.cfg.heuristic.clone();
        let mut projected_remaining = None;
        if heuristic.enabled && heuristic.use_forecast {
            let (proj, cost) = self.fetch(
                "demand",
                format!("demand:{route_id}:{day}"),
                now,
                Cached::Projection(None),
                |s| Ok(Cached::Projection(s.project_remaining(ri, day))),
            )?;
            extra = extra + cost;
            if let Cached::Projection(p) = proj {
                projected_remaining = p;
            }
        }

        let mut rivals = Vec::new();
        if self.cfg.competitor.enabled {
            let (r, cost) = self.fetch(
                "competitor",
                format!("competitor:{route_id}:{day}"),
                now,
                Cached::Rivals(Vec::new()),
                |s| Ok(Cached::Rivals(s.quotes.for_route(&route_id))),
            )?;
            extra = extra + cost;
            if let Cached::Rivals(r) = r {
                rivals = r;
            }
        }

        let state = &self.routes[ri];
        let r = &state.cfg;
        let inventory = InventoryState::with_fare_classes(r.capacity, state.sold, days_out, state.fare_class_limits.clone())?;

        let adjustment = if heuristic.enabled {
            let completed: u64 = state.history.counts.iter().take(day).sum();
            let projected_sold = match projected_remaining {
                Some(rem) => ((completed as f64 + rem).round() as u64)
                    .max(state.sold as u64)
                    .min(r.capacity as u64) as u32,
                None => state.sold,
            };
            let projected = InventoryState::new(r.capacity, projected_sold, days_out)?;
            heuristic_trigger(&projected, &heuristic.policy)
        } else {
            PriceAction::Hold
        };

        let mut req = QuoteRequest {
            event_factor,
            adjustment,
            ..QuoteRequest::new(r.base_fare, days_out as i64, &inventory, r.floor, r.ceiling)
        };
        if !rivals.is_empty() {
            let pre = compose_quote(&QuoteRequest { adjustment: PriceAction::Hold, ..req.clone() }, &self.bands)?;
            let before_competitor: f64 = pre
                .applied_steps
                .iter()
                .filter(|s| s.step != StepKind::Competitor)
                .fold(r.base_fare.as_f64(), |acc, s| acc * s.multiplier);
            let ours = Money::from_f64(before_competitor)?;
            let pos = market_position(ours, &rivals, self.cfg.competitor.parity_band)?;
            req.competitor_delta = recommend_adjustment(
                &pos,
                &AdjustmentPolicy {
                    max_step: self.cfg.competitor.max_step,
                    floor: r.floor,
                },
            );
        }
        let quote = compose_quote(&req, &self.bands)?;
        Ok((quote, extra))
    }

    /// Forecast bookings from `day` to departure, fitted on completed days.
    fn project_remaining(&self, ri: usize, day: usize) -> Option<f64> {
        if day < 2 {
            return None;
        }
        let mut history = self.routes[ri].history.truncated(day);
        history.ensure_buckets(day);
        let horizon = (self.cfg.horizon_days as usize).saturating_sub(day);
        if horizon == 0 {
            return None;
        }
        forecast_demand(&history, horizon).ok().map(|f| f.values.iter().sum())
    }

    fn date_of(&self, day: u32) -> NaiveDate {
        self.cfg
            .start_date
            .checked_add_days(Days::new(day as u64))
            .unwrap_or(self.cfg.start_date)
    }

    fn finish(mut self, seed: u64, trace: &[(SimTime, u64)]) -> ScenarioReport {
        let cfg = self.cfg;
        let total_revenue: Money = self.routes.iter().map(|r| r.revenue).sum();
        let routes = self
            .routes
            .iter_mut()
            .map(|r| {
                r.history.ensure_buckets(cfg.horizon_days as usize);
                RouteReport {
                    route: r.cfg.id.clone(),
                    capacity: r.cfg.capacity,
                    seats_sold: r.sold,
                    revenue: r.revenue,
                    average_fare: (r.sold > 0)
                        .then(|| Money::from_f64(r.revenue.as_f64() / r.sold as f64).unwrap_or(Money::ZERO)),
                    load_factor: r.sold as f64 / r.cfg.capacity as f64,
                    fare_class_limits: r.fare_class_limits.clone(),
                }
            })
            .collect();

        // walk-forward one-day-ahead forecasts over completed days
        let mut actual = Vec::new();
        let mut predicted = Vec::new();
        for r in &self.routes {
            for d in 2..r.history.counts.len() {
                if let Ok(f) = forecast_demand(&r.history.truncated(d), 1) {
                    actual.push(r.history.counts[d] as f64);
                    predicted.push(f.values[0]);
                }
            }
        }
        let demand_forecast_mape = mape(&actual, &predicted).ok();
        let demand_forecast_rmse = rmse(&actual, &predicted).ok();

        let observations: Vec<(f64, f64)> = self
            .days
            .iter()
            .filter(|d| d.bookings > 0 && d.offers > 0)
            .map(|d| (d.offered_price_sum / d.offers as f64, d.bookings as f64))
            .collect();
        let price_elasticity = estimate_elasticity(&observations).ok();

        let mut sorted = self.response_ms.clone();
        sorted.sort_by(f64::total_cmp);
        let response_time_mean_ms =
            (!sorted.is_empty()).then(|| sorted.iter().sum::<f64>() / sorted.len() as f64);
        let response_time_p95_ms = (!sorted.is_empty()).then(|| {
            let rank = ((0.95 * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
            sorted[rank - 1]
        });

        let tw = cfg.reporting.throughput_window_minutes;
        let throughput_series = self
            .throughput
            .iter()
            .enumerate()
            .map(|(i, &(requests, completed))| ThroughputPoint {
                window_start_minutes: i as u64 * tw,
                requests,
                completed,
            })
            .collect();
        let latency_series = self
            .latency_windows
            .iter()
            .map(|((w, src, dst), acc)| LatencyPoint {
                window_start_minutes: *w,
                src: src.clone(),
                dst: dst.clone(),
                samples: acc.samples,
                mean_ms: acc.sum_ms / acc.samples as f64,
            })
            .collect();

        let revenue_daily = self
            .days
            .iter()
            .enumerate()
            .map(|(i, d)| DailyRevenue {
                day: i as u32,
                date: self.date_of(i as u32),
                revenue: d.revenue,
                bookings: d.bookings,
            })
            .collect();
        let satisfaction_daily = self
            .days
            .iter()
            .enumerate()
            .map(|(i, d)| DailySatisfaction {
                day: i as u32,
                date: self.date_of(i as u32),
                purchases: d.bookings,
                mean_satisfaction: (d.bookings > 0).then(|| d.satisfaction_sum / d.bookings as f64),
            })
            .collect();

        let mean_satisfaction = (!self.satisfaction.is_empty())
            .then(|| self.satisfaction.iter().sum::<f64>() / self.satisfaction.len() as f64);

        ScenarioReport {
            scenario: cfg.name.clone(),
            seed,
            pricing_mode: cfg.pricing_mode,
            currency: cfg.currency.clone(),
            arrivals: self.customers.len() as u64,
            offers_made: self.offers,
            bookings_accepted: self.bookings,
            failed_requests: self.failed,
            degraded_requests: self.degraded,
            total_revenue,
            mean_satisfaction,
            satisfaction_label: SATISFACTION_LABEL.to_string(),
            routes,
            response_time_mean_ms,
            response_time_p95_ms,
            response_time_histogram: histogram(&self.response_ms, cfg.reporting.histogram_bin_ms),
            throughput_series,
            latency_series,
            revenue_daily,
            satisfaction_daily,
            demand_forecast_mape,
            demand_forecast_rmse,
            price_elasticity,
            cache: self.cache.stats(),
            in_flight_seconds: self.in_flight_seconds,
            instance_requests: self.instance_requests,
            events_executed: trace.len() as u64,
            trace_digest: digest_trace(trace),
            customer_digest: digest_customers(self.customers),
        }
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0100_0000_01b3;

fn fnv_mix(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

pub fn digest_trace(trace: &[(SimTime, u64)]) -> u64 {
    trace.iter().fold(FNV_OFFSET, |h, (t, seq)| {
        fnv_mix(fnv_mix(h, &t.0.to_le_bytes()), &seq.to_le_bytes())
    })
}

pub fn digest_customers(customers: &[CustomerDraw]) -> u64 {
    customers.iter().fold(FNV_OFFSET, |h, c| {
        let h = fnv_mix(h, &c.arrival_time.0.to_le_bytes());
        let h = fnv_mix(h, c.route.as_bytes());
        fnv_mix(h, &c.wtp.cents().to_le_bytes())
    })
}
