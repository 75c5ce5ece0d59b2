//! External event calendar and combined demand-impact factors.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Holiday,
    Festival,
    Weather,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalEvent {
    pub name: String,
    pub kind: EventKind,
    pub start: NaiveDate,
    pub end: NaiveDate,
    /// Routes affected; empty means every route.
    #[serde(default)]
    pub routes: Vec<String>,
    pub impact: f64,
}

impl ExternalEvent {
    pub fn validate(&self) -> Result<()> {
        if self.start > self.end {
            return Err(Error::invalid(format!(
                "event `{}` starts {} after it ends {}",
                self.name, self.start, self.end
            )));
        }
        if !(self.impact.is_finite() && self.impact > 0.0) {
            return Err(Error::invalid(format!(
                "event `{}` has non-positive impact {}",
                self.name, self.impact
            )));
        }
        Ok(())
    }

    fn applies(&self, date: NaiveDate, route: &str) -> bool {
        self.start <= date
            && date <= self.end
            && (self.routes.is_empty() || self.routes.iter().any(|r| r == route))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventCalendar {
    events: Vec<ExternalEvent>,
    clamp_range: (f64, f64),
}

impl Default for EventCalendar {
    fn default() -> Self {
        EventCalendar {
            events: Vec::new(),
            clamp_range: (0.5, 2.0),
        }
    }
}

impl EventCalendar {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_clamp(min_factor: f64, max_factor: f64) -> Result<Self> {
        if !(min_factor > 0.0 && min_factor <= 1.0 && 1.0 <= max_factor && max_factor.is_finite()) {
            return Err(Error::invalid(format!(
                "clamp range ({min_factor}, {max_factor}) must satisfy 0 < min <= 1 <= max"
            )));
        }
        Ok(EventCalendar {
            events: Vec::new(),
            clamp_range: (min_factor, max_factor),
        })
    }

    pub fn events(&self) -> &[ExternalEvent] {
        &self.events
    }

    pub fn clamp_range(&self) -> (f64, f64) {
        self.clamp_range
    }

    /// Appends `e`, dropping exact duplicates.
    pub fn ingest(&mut self, e: ExternalEvent) -> Result<()> {
        e.validate()?;
        if !self.events.contains(&e) {
            self.events.push(e);
        }
        Ok(())
    }

    /// Events covering `date` (inclusive on both ends) that apply to `route`.
    pub fn active_events(&self, date: NaiveDate, route: &str) -> Vec<&ExternalEvent> {
        self.events.iter().filter(|e| e.applies(date, route)).collect()
    }

    /// Product of active impacts, clamped; exactly 1.0 with nothing active.
    pub fn impact_factor(&self, date: NaiveDate, route: &str) -> f64 {
        let active = self.active_events(date, route);
        if active.is_empty() {
            return 1.0;
        }
        let raw: f64 = active.iter().map(|e| e.impact).product();
        raw.clamp(self.clamp_range.0, self.clamp_range.1)
    }
}

pub fn ingest_event(mut cal: EventCalendar, e: ExternalEvent) -> Result<EventCalendar> {
    cal.ingest(e)?;
    Ok(cal)
}

/// Reads a calendar file: a JSON array of events.
pub fn read_calendar_json(text: &str, clamp_range: (f64, f64)) -> Result<EventCalendar> {
    let events: Vec<ExternalEvent> =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("calendar: {e}")))?;
    let mut cal = EventCalendar::with_clamp(clamp_range.0, clamp_range.1)?;
    for e in events {
        cal.ingest(e)?;
    }
    Ok(cal)
}
