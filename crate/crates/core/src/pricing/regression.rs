//! Regression-based price recommendation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::lstsq_min_norm;
use crate::money::Money;

/// Feature order used by the booking-context price model.
pub const PRICE_FEATURES: [&str; 4] = [
    "days_to_departure",
    "remaining_seats_pct",
    "competitor_price",
    "seasonality_flag",
];

/// A linear price model `intercept + coefficients . features`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionModel {
    pub feature_names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub intercept: f64,
}

impl RegressionModel {
    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn with_feature_names(mut self, names: &[&str]) -> Result<Self> {
        if names.len() != self.coefficients.len() {
            return Err(Error::invalid(format!(
                "{} feature names for {} coefficients",
                names.len(),
                self.coefficients.len()
            )));
        }
        self.feature_names = names.iter().map(|s| s.to_string()).collect();
        Ok(self)
    }

    /// Unclamped model output.
    pub fn predict_raw(&self, features: &[f64]) -> Result<f64> {
        if features.len() != self.coefficients.len() {
            return Err(Error::invalid(format!(
                "expected {} features, got {}",
                self.coefficients.len(),
                features.len()
            )));
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite feature value"));
        }
        Ok(self.intercept
            + self
                .coefficients
                .iter()
                .zip(features)
                .map(|(c, x)| c * x)
                .sum::<f64>())
    }
}

/// Fits the minimum-norm least-squares model of `targets` on
/// `[features | 1]`. The intercept takes part in the norm being minimised.
///
/// Feature names default to [`PRICE_FEATURES`] for four-column inputs and
/// to `x0, x1, ...` otherwise.
pub fn fit_price_regression(features: &[Vec<f64>], targets: &[f64]) -> Result<RegressionModel> {
    let n = features.len();
    if n == 0 {
        return Err(Error::InsufficientData("empty training set".into()));
    }
    if targets.len() != n {
        return Err(Error::invalid(format!("{n} feature rows but {} targets", targets.len())));
    }
    let d = features[0].len();
    if d == 0 {
        return Err(Error::invalid("feature rows are empty"));
    }
    if let Some(i) = features.iter().position(|r| r.len() != d) {
        return Err(Error::invalid(format!("row {i} has {} entries, expected {d}", features[i].len())));
    }
    if features.iter().flatten().chain(targets).any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite training value"));
    }

    let cols = d + 1;
    let mut design = Vec::with_capacity(n * cols);
    for row in features {
        design.extend_from_slice(row);
        design.push(1.0);
    }
    let mut solution = lstsq_min_norm(&design, n, cols, targets);
    let intercept = solution.pop().expect("intercept column");
    let feature_names = if d == PRICE_FEATURES.len() {
        PRICE_FEATURES.iter().map(|s| s.to_string()).collect()
    } else {
        (0..d).map(|i| format!("x{i}")).collect()
    };
    Ok(RegressionModel {
        feature_names,
        coefficients: solution,
        intercept,
    })
}

/// Model prediction clamped to `[floor, ceiling]`.
pub fn predict_price(model: &RegressionModel, features: &[f64], floor: Money, ceiling: Money) -> Result<Money> {
    if floor > ceiling {
        return Err(Error::invalid(format!("floor {floor} above ceiling {ceiling}")));
    }
    let raw = model.predict_raw(features)?;
    Money::from_f64(raw.clamp(floor.as_f64(), ceiling.as_f64()))
}
