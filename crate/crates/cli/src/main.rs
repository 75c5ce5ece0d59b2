use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use fare_core::config::{builtin_scenario, parse_scenario_config, ScenarioConfig};
use fare_core::pricing::{compose_quote, InventoryState, PricingBands, QuoteRequest};
use fare_core::report::{emit_report, emit_uplift_report, Formats};
use fare_core::sim::{compare_pricing_modes, run_scenario_with_seed};
use fare_core::{Error, Money};

#[derive(Parser)]
#[command(name = "fare", version, about = "Simulate and compare airline fare pricing strategies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its report bundle.
    Run(RunArgs),
    /// Run dynamic and fixed pricing side by side over consecutive seeds.
    Compare(CompareArgs),
    /// Evaluate the pricing pipeline once and print the quote as JSON.
    Quote(QuoteArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file, or the name of a built-in scenario.
    #[arg(long)]
    config: String,
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated output formats.
    #[arg(long, default_value = "csv,json")]
    format: String,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    config: String,
    /// Number of seeds, counting up from the config seed.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    seeds: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "csv,json")]
    format: String,
}

#[derive(Args)]
struct QuoteArgs {
    #[arg(long)]
    base: f64,
    #[arg(long, allow_negative_numbers = true)]
    days: i64,
    #[arg(long)]
    capacity: u32,
    #[arg(long)]
    sold: u32,
    #[arg(long, default_value_t = 1.0)]
    event_factor: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    competitor_delta: f64,
    #[arg(long, default_value_t = 0.0)]
    floor: f64,
    #[arg(long, default_value_t = 1_000_000_000.0)]
    ceiling: f64,
}

fn load_config(spec: &str) -> anyhow::Result<ScenarioConfig> {
    let path = Path::new(spec);
    let text = if path.exists() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else if let Some(text) = builtin_scenario(spec) {
        text.to_string()
    } else {
        anyhow::bail!("no config file or built-in scenario named `{spec}`");
    };
    Ok(parse_scenario_config(&text)?)
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let cfg = load_config(&args.config)?;
    let formats = Formats::parse(&args.format)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let report = run_scenario_with_seed(&cfg, seed)?;
    let bundle = emit_report(&report, &args.out, formats)?;
    println!(
        "{} seed {}: {} bookings of {} offers, revenue {} {}",
        report.scenario, seed, report.bookings_accepted, report.offers_made, report.total_revenue, report.currency
    );
    for f in bundle.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn compare(args: CompareArgs) -> anyhow::Result<()> {
    let cfg = load_config(&args.config)?;
    let formats = Formats::parse(&args.format)?;
    let seeds: Vec<u64> = (0..args.seeds).map(|i| cfg.seed.wrapping_add(i)).collect();
    let report = compare_pricing_modes(&cfg, &seeds)?;
    let bundle = emit_uplift_report(&report, &args.out, formats)?;
    match report.mean_uplift_pct {
        Some(u) => println!("{}: mean uplift {u:+.2}% over {} seeds", report.scenario, seeds.len()),
        None => println!("{}: uplift undefined (fixed arm earned nothing)", report.scenario),
    }
    println!("common random numbers verified: {}", report.crn_verified);
    for f in bundle.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn quote(args: QuoteArgs) -> anyhow::Result<()> {
    let inventory = InventoryState::new(args.capacity, args.sold, args.days.max(0) as u32)?;
    let ceiling = Money::from_f64(args.ceiling)?;
    let req = QuoteRequest {
        event_factor: args.event_factor,
        competitor_delta: args.competitor_delta,
        ..QuoteRequest::new(Money::from_f64(args.base)?, args.days, &inventory, Money::from_f64(args.floor)?, ceiling)
    };
    let q = compose_quote(&req, &PricingBands::default())?;
    println!("{}", serde_json::to_string_pretty(&q)?);
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Validation { .. } | Error::InvalidInput(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Compare(a) => compare(a),
        Command::Quote(a) => quote(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
