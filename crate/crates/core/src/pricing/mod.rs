//! Pricing algorithms: rule tables, regression, segmentation, inventory
//! heuristics and the composed quote pipeline. Everything here is a pure
//! function of its inputs.

pub mod inventory;
pub mod quote;
pub mod regression;
pub mod rules;
pub mod segmentation;

pub use inventory::{heuristic_trigger, reallocate_fare_classes, HeuristicPolicy, InventoryState, PriceAction};
pub use quote::{compose_quote, FareQuote, PricingBands, PricingStep, QuoteRequest, StepKind};
pub use regression::{fit_price_regression, predict_price, RegressionModel, PRICE_FEATURES};
pub use rules::{
    load_factor_multiplier, rule_based_fare, LeadTimeBand, LeadTimeBands, LoadFactorBand, LoadFactorBands,
};
pub use segmentation::{
    assign_segment, segment_customers, segment_customers_with, segment_fare, Segmentation, SegmentationOptions,
};
