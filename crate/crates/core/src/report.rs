//! Histogramming and deterministic CSV/JSON report bundles.
//!
//! Column orders are fixed. Money is written with 2 decimals, fractions and
//! satisfaction with 6, milliseconds with 3. The same report always
//! produces the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{ScenarioReport, UpliftReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub low: f64,
    pub high: f64,
    pub count: u64,
}

/// Left-closed, right-open bins of `bin_width` anchored at 0, spanning the
/// lowest to the highest occupied bin.
pub fn histogram(values: &[f64], bin_width: f64) -> Vec<HistogramBin> {
    assert!(bin_width > 0.0, "bin width must be positive");
    if values.is_empty() {
        return Vec::new();
    }
    let index = |v: f64| {
        let mut i = (v / bin_width).floor().max(0.0) as u64;
        // keep the index consistent with the emitted edges under rounding
        if i > 0 && v < i as f64 * bin_width {
            i -= 1;
        } else if v >= (i + 1) as f64 * bin_width {
            i += 1;
        }
        i
    };
    let lo = values.iter().map(|&v| index(v)).min().unwrap();
    let hi = values.iter().map(|&v| index(v)).max().unwrap();
    let mut counts = vec![0u64; (hi - lo + 1) as usize];
    for &v in values {
        counts[(index(v) - lo) as usize] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let b = lo + i as u64;
            HistogramBin {
                low: b as f64 * bin_width,
                high: (b + 1) as f64 * bin_width,
                count,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
}

impl Default for Formats {
    fn default() -> Self {
        Formats { csv: true, json: true }
    }
}

impl Formats {
    /// Parses a comma-separated list such as `csv,json`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut f = Formats { csv: false, json: false };
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "csv" => f.csv = true,
                "json" => f.json = true,
                other => return Err(Error::invalid(format!("unknown format `{other}`"))),
            }
        }
        if !(f.csv || f.json) {
            return Err(Error::invalid("no output format selected"));
        }
        Ok(f)
    }
}

/// Paths written for one report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportBundle {
    pub files: Vec<PathBuf>,
}

pub const SUMMARY_FILE: &str = "summary.json";

fn money(m: crate::money::Money) -> String {
    m.to_string()
}

fn frac(v: f64) -> String {
    format!("{v:.6}")
}

fn ms(v: f64) -> String {
    format!("{v:.3}")
}

fn opt(v: Option<f64>, f: fn(f64) -> String) -> String {
    v.map(f).unwrap_or_default()
}

pub fn response_times_csv(r: &ScenarioReport) -> String {
    let mut s = String::from("bin_low_ms,bin_high_ms,count\n");
    for b in &r.response_time_histogram {
        writeln!(s, "{},{},{}", ms(b.low), ms(b.high), b.count).unwrap();
    }
    s
}

pub fn throughput_csv(r: &ScenarioReport) -> String {
    let mut s = String::from("window_start_minutes,requests,completed\n");
    for p in &r.throughput_series {
        writeln!(s, "{},{},{}", p.window_start_minutes, p.requests, p.completed).unwrap();
    }
    s
}

pub fn latency_csv(r: &ScenarioReport) -> String {
    let mut s = String::from("window_start_minutes,src,dst,samples,mean_ms\n");
    for p in &r.latency_series {
        writeln!(s, "{},{},{},{},{}", p.window_start_minutes, p.src, p.dst, p.samples, ms(p.mean_ms)).unwrap();
    }
    s
}

pub fn revenue_daily_csv(r: &ScenarioReport) -> String {
    let mut s = String::from("day,date,revenue,bookings\n");
    for d in &r.revenue_daily {
        writeln!(s, "{},{},{},{}", d.day, d.date, money(d.revenue), d.bookings).unwrap();
    }
    s
}

pub fn satisfaction_daily_csv(r: &ScenarioReport) -> String {
    let mut s = String::from("day,date,purchases,mean_satisfaction\n");
    for d in &r.satisfaction_daily {
        writeln!(s, "{},{},{},{}", d.day, d.date, d.purchases, opt(d.mean_satisfaction, frac)).unwrap();
    }
    s
}

pub fn uplift_csv(r: &UpliftReport) -> String {
    let mut s = String::from(
        "seed,dynamic_revenue,fixed_revenue,uplift_pct,dynamic_bookings,fixed_bookings,dynamic_satisfaction,fixed_satisfaction,crn_verified\n",
    );
    for o in &r.seeds {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            o.seed,
            money(o.dynamic_revenue),
            money(o.fixed_revenue),
            opt(o.uplift_pct, frac),
            o.dynamic_bookings,
            o.fixed_bookings,
            opt(o.dynamic_satisfaction, frac),
            opt(o.fixed_satisfaction, frac),
            o.crn_verified
        )
        .unwrap();
    }
    s
}

pub fn summary_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn write_all(out_dir: &Path, files: Vec<(&str, String)>) -> Result<ReportBundle> {
    fs::create_dir_all(out_dir).map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
    let mut written = Vec::new();
    for (name, body) in files {
        let path = out_dir.join(name);
        fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(ReportBundle { files: written })
}

/// Writes the scenario bundle: `summary.json` and five CSV series.
pub fn emit_report(report: &ScenarioReport, out_dir: &Path, formats: Formats) -> Result<ReportBundle> {
    let mut files = Vec::new();
    if formats.json {
        files.push((SUMMARY_FILE, summary_json(report)));
    }
    if formats.csv {
        files.push(("response_times.csv", response_times_csv(report)));
        files.push(("throughput.csv", throughput_csv(report)));
        files.push(("latency.csv", latency_csv(report)));
        files.push(("revenue_daily.csv", revenue_daily_csv(report)));
        files.push(("satisfaction_daily.csv", satisfaction_daily_csv(report)));
    }
    write_all(out_dir, files)
}

pub fn emit_uplift_report(report: &UpliftReport, out_dir: &Path, formats: Formats) -> Result<ReportBundle> {
    let mut files = Vec::new();
    if formats.json {
        files.push((SUMMARY_FILE, summary_json(report)));
    }
    if formats.csv {
        files.push(("uplift.csv", uplift_csv(report)));
    }
    write_all(out_dir, files)
}
