//! Controlled-environment scenario simulation.

pub mod arrivals;
pub mod compare;
pub mod customers;
pub mod engine;

pub use arrivals::{generate_arrivals, ArrivalProfile, RateSegment};
pub use compare::{compare_pricing_modes, run_arms, ArmPair, SeedOutcome, UpliftReport};
pub use customers::{draw_customers, sample_wtp, satisfaction_score, CustomerDraw, Decision};
pub use engine::{run_scenario, run_scenario_with_seed, run_with_customers, ScenarioReport};
