//! Dynamic fare pricing for travel: pricing algorithms, the supporting
//! demand, competitor and event services, a deterministic in-process
//! service fabric, and a scenario harness comparing dynamic with fixed
//! pricing.

pub mod competitor;
pub mod config;
pub mod demand;
pub mod error;
pub mod events;
pub mod fabric;
mod linalg;
pub mod money;
pub mod pricing;
pub mod report;
pub mod rng;
pub mod sim;
pub mod time;

pub use error::{Error, Result};
pub use money::Money;
pub use time::SimTime;
