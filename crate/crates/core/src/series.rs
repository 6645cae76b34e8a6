//! Monthly time-series container and the transforms applied before testing:
//! natural logs, first differences, seasonal (year-over-year) differences,
//! and iterated higher-order differences.
//!
//! A seasonal difference `x_t - x_{t-12}` is not the same operator as the
//! first difference applied twelve times; both are provided so callers can
//! pick deliberately.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A calendar month `(year, month)`, month in `1..=12`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonthDate {
    pub year: i32,
    pub month: u8,
}

impl MonthDate {
    pub fn new(year: i32, month: u8) -> Self {
        assert!((1..=12).contains(&month), "month must be in 1..=12");
        Self { year, month }
    }

    /// The month `n` steps later.
    pub fn plus_months(self, n: usize) -> Self {
        let total = (self.year as i64) * 12 + (self.month as i64 - 1) + n as i64;
        Self {
            year: total.div_euclid(12) as i32,
            month: (total.rem_euclid(12) + 1) as u8,
        }
    }

    /// The immediately following month.
    pub fn next(self) -> Self {
        self.plus_months(1)
    }
}

impl fmt::Display for MonthDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for MonthDate {
    type Err = String;

    /// Parses `YYYY-MM`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (y, m) = s
            .split_once('-')
            .ok_or_else(|| format!("`{s}` is not of the form YYYY-MM"))?;
        let year: i32 = y.parse().map_err(|_| format!("bad year in `{s}`"))?;
        let month: u8 = m.parse().map_err(|_| format!("bad month in `{s}`"))?;
        if !(1..=12).contains(&month) {
            return Err(format!("month {month} out of range in `{s}`"));
        }
        Ok(Self { year, month })
    }
}

/// A named, monthly-indexed sequence of finite real observations.
///
/// Values are immutable after construction; every transform returns a new
/// series with its start month advanced by the observations consumed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TimeSeries {
    name: String,
    start: MonthDate,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series, rejecting empty input and non-finite values.
    pub fn new(name: impl Into<String>, start: MonthDate, values: Vec<f64>) -> Result<Self> {
        let name = name.into();
        if values.is_empty() {
            return Err(Error::TooShort {
                name,
                required: 1,
                actual: 0,
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { name, index });
        }
        Ok(Self {
            name,
            start,
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn start(&self) -> MonthDate {
        self.start
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First difference `x_{t+1} - x_t`; output is one observation shorter.
    pub fn first_difference(&self) -> Result<TimeSeries> {
        self.seasonal_difference(1).map(|mut s| {
            s.name = format!("D.{}", self.name);
            s
        })
    }

    /// Difference against the observation `period` months earlier,
    /// `x_{t+period} - x_t`. With `period = 12` this is the year-over-year
    /// seasonal difference.
    pub fn seasonal_difference(&self, period: usize) -> Result<TimeSeries> {
        if period == 0 {
            return Err(Error::InvalidConfig(
                "difference period must be positive".into(),
            ));
        }
        if self.len() <= period {
            return Err(Error::TooShort {
                name: self.name.clone(),
                required: period + 1,
                actual: self.len(),
            });
        }
        let values = self
            .values
            .windows(period + 1)
            .map(|w| w[period] - w[0])
            .collect();
        Ok(TimeSeries {
            name: format!("S{period}.{}", self.name),
            start: self.start.plus_months(period),
            values,
        })
    }

    /// Applies the first difference `order` times; output is `order`
    /// observations shorter. Distinct from [`seasonal_difference`] with the
    /// same argument.
    ///
    /// [`seasonal_difference`]: TimeSeries::seasonal_difference
    pub fn iterated_difference(&self, order: usize) -> Result<TimeSeries> {
        if order == 0 {
            return Err(Error::InvalidConfig(
                "difference order must be positive".into(),
            ));
        }
        if self.len() <= order {
            return Err(Error::TooShort {
                name: self.name.clone(),
                required: order + 1,
                actual: self.len(),
            });
        }
        let mut out = self.first_difference()?;
        for _ in 1..order {
            out = out.first_difference()?;
        }
        out.name = format!("D{order}.{}", self.name);
        Ok(out)
    }

    /// Elementwise natural log. Fails on the first value that is not
    /// strictly positive.
    pub fn log_transform(&self) -> Result<TimeSeries> {
        if let Some(index) = self.values.iter().position(|&v| v <= 0.0) {
            return Err(Error::NonPositive {
                name: self.name.clone(),
                index,
                value: self.values[index],
            });
        }
        Ok(TimeSeries {
            name: format!("log({})", self.name),
            start: self.start,
            values: self.values.iter().map(|v| v.ln()).collect(),
        })
    }
}
