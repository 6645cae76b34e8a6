//! Dickey-Fuller and augmented Dickey-Fuller unit-root tests.
//!
//! The test regresses the first difference of a series on its lagged level,
//! optional lagged differences, and optional deterministic terms:
//!
//! ```text
//! Δy_t = (ρ − 1) y_{t−1} + Σ_{j=1..lags} φ_j Δy_{t−j} [+ const] [+ trend] + u_t
//! ```
//!
//! The statistic is the t-ratio on the lagged level. A value near zero is
//! consistent with a unit root; large negative values reject it. Significance
//! comes from the MacKinnon response surfaces, never from Student-t p-values.

use serde::Serialize;

use crate::critvals::{self, CriticalValues, Deterministic, Grade};
use crate::error::{Error, Result};
use crate::ols::{self, DesignSpec, RegressionFit};
use crate::series::TimeSeries;

/// Lag count and deterministic terms for a unit-root test regression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitRootConfig {
    /// Number of lagged-difference augmentation terms.
    pub lags: usize,
    pub deterministic: Deterministic,
}

impl UnitRootConfig {
    pub fn new(lags: usize, deterministic: Deterministic) -> Self {
        Self { lags, deterministic }
    }
}

/// Outcome of a unit-root test.
#[derive(Clone, Debug, Serialize)]
pub struct UnitRootReport {
    /// t-statistic on the lagged-level coefficient.
    pub statistic: f64,
    /// Effective regression sample size: T − 1 − lags.
    pub nobs: usize,
    pub config: UnitRootConfig,
    /// Graded thresholds, absent when no table applies (no deterministic
    /// terms, or a sample smaller than the surfaces support).
    pub critical_values: Option<CriticalValues>,
    pub grade: Option<Grade>,
    /// The full test regression, for residual diagnostics.
    pub fit: RegressionFit,
}

impl UnitRootReport {
    /// Re-grades the statistic against a different critical-value table.
    /// The Engle-Granger second stage uses this to apply the two-variable
    /// cointegration surfaces to a regression that has no deterministic
    /// terms of its own.
    pub fn graded_against(mut self, critical_values: CriticalValues) -> Self {
        self.grade = Some(critical_values.grade(self.statistic));
        self.critical_values = Some(critical_values);
        self
    }
}

/// Runs the (augmented) Dickey-Fuller test on a series.
pub fn df_test(s: &TimeSeries, config: UnitRootConfig) -> Result<UnitRootReport> {
    let v = s.values();
    let t_len = v.len();
    let lags = config.lags;
    let det_terms = match config.deterministic {
        Deterministic::None => 0,
        Deterministic::Constant => 1,
        Deterministic::ConstantTrend => 2,
    };
    let k = 1 + lags + det_terms;
    // The regression needs T − 1 − lags rows and at least two residual
    // degrees of freedom.
    let required = k + 3 + lags;
    if t_len < required {
        return Err(Error::InsufficientObservations {
            required,
            available: t_len,
        });
    }

    let diffs: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let nobs = t_len - 1 - lags;

    // Rows are observations t = lags + 2 .. T (1-based): the response is
    // Δy_t, so every row has its lagged level and all `lags` lagged
    // differences available.
    let response: Vec<f64> = diffs[lags..].to_vec();
    let lagged_level: Vec<f64> = v[lags..t_len - 1].to_vec();

    let mut design = DesignSpec::new();
    if det_terms >= 1 {
        design = design.with_intercept();
    }
    if det_terms == 2 {
        design = design.with_trend();
    }
    let level_name = format!("L.{}", s.name());
    design = design.push_column(level_name.clone(), lagged_level);
    for j in 1..=lags {
        design = design.push_column(
            format!("LD{j}.{}", s.name()),
            diffs[lags - j..lags - j + nobs].to_vec(),
        );
    }

    let fit = ols::fit(&response, &design)?;
    debug_assert_eq!(fit.nobs, nobs);
    let idx = fit
        .index_of(&level_name)
        .expect("lagged level is always in the design");
    let statistic = fit.t_statistics[idx];

    let critical_values = match config.deterministic {
        Deterministic::None => None,
        det => critvals::critical_values(1, det, nobs).ok(),
    };
    let grade = critical_values.map(|cv| cv.grade(statistic));

    Ok(UnitRootReport {
        statistic,
        nobs,
        config,
        critical_values,
        grade,
        fit,
    })
}
