//! Cent-precision monetary amounts.
//!
//! Amounts are stored as whole cents. Pricing math runs in `f64` and is
//! rounded half-up to cents once, when a price leaves the pipeline.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative amount in a single scenario currency.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Money {
    cents: u64,
}

impl Money {
    pub const ZERO: Money = Money { cents: 0 };

    pub const fn from_cents(cents: u64) -> Self {
        Money { cents }
    }

    /// Rounds `amount` half-up to the nearest cent.
    pub fn from_f64(amount: f64) -> Result<Self> {
        if !amount.is_finite() {
            return Err(Error::invalid(format!("non-finite amount {amount}")));
        }
        if amount < 0.0 {
            return Err(Error::invalid(format!("negative amount {amount}")));
        }
        Ok(Money {
            cents: round_half_up_cents(amount),
        })
    }

    pub const fn cents(self) -> u64 {
        self.cents
    }

    pub fn as_f64(self) -> f64 {
        self.cents as f64 / 100.0
    }

    /// Multiplies by a non-negative factor and rounds back to cents.
    pub fn scale(self, factor: f64) -> Result<Self> {
        Money::from_f64(self.as_f64() * factor)
    }
}

/// Half-up rounding that treats values within a few ulps of a half cent as
/// exactly on the half, so `1.005` rounds to `1.01`.
fn round_half_up_cents(amount: f64) -> u64 {
    let scaled = amount * 100.0;
    let floor = scaled.floor();
    let frac = scaled - floor;
    let tol = 1e-9 * scaled.abs().max(1.0);
    if frac + tol >= 0.5 {
        floor as u64 + 1
    } else {
        floor as u64
    }
}

impl Add for Money {
    type Output = Money;

    fn add(self, rhs: Money) -> Money {
        Money {
            cents: self.cents + rhs.cents,
        }
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.cents / 100, self.cents % 100)
    }
}

impl Serialize for Money {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Money {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Money::from_f64(v).map_err(serde::de::Error::custom)
    }
}
