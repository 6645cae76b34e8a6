//! Engle-Granger residual-based cointegration tests.
//!
//! Stage one regresses `y` on `x` (intercept by default, optional trend) and
//! stage two runs a Dickey-Fuller test on the stage-one residuals without
//! deterministic terms:
//!
//! ```text
//! y_t = β₁ + β₂ x_t [+ δ t] + ε_t          (cointegrating regression)
//! Δe_t = (ρ − 1) e_{t−1} + Σ φ_j Δe_{t−j} + u_t
//! ```
//!
//! The stage-two statistic is graded against the two-variable MacKinnon
//! surfaces. Failing to reject is consistent with no cointegrating
//! relationship between the series.
//!
//! [`engle_granger_first_diff`] is the deliberately misspecified variant that
//! first-differences both series before running the same procedure. Applied
//! to independent random walks it rejects essentially always, because the
//! differenced pair is white noise on white noise: the "cointegrating"
//! residual is stationary by construction whether or not the levels share a
//! stochastic trend.

use serde::Serialize;

use crate::critvals::{self, CriticalValues, Deterministic, SignificanceLevel};
use crate::error::{Error, Result};
use crate::ols::{self, DesignSpec, RegressionFit};
use crate::series::TimeSeries;
use crate::unitroot::{self, UnitRootConfig, UnitRootReport};

/// Which form of the test produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Standard Engle-Granger on levels.
    Levels,
    /// The misspecified first-difference form.
    FirstDifferences,
}

/// Whether the inputs were log-transformed before testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    Raw,
    Log,
}

/// Reject / fail-to-reject at each graded level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionSet {
    pub one_pct: bool,
    pub five_pct: bool,
    pub ten_pct: bool,
}

impl DecisionSet {
    fn from_statistic(statistic: f64, cv: &CriticalValues) -> Self {
        Self {
            one_pct: statistic < cv.one_pct,
            five_pct: statistic < cv.five_pct,
            ten_pct: statistic < cv.ten_pct,
        }
    }

    pub fn at(&self, level: SignificanceLevel) -> bool {
        match level {
            SignificanceLevel::OnePercent => self.one_pct,
            SignificanceLevel::FivePercent => self.five_pct,
            SignificanceLevel::TenPercent => self.ten_pct,
        }
    }
}

/// Knobs for the Engle-Granger procedure.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CointegrationConfig {
    /// Lagged-difference terms in the stage-two regression.
    pub lags: usize,
    /// Adds a linear trend to the stage-one regression and switches grading
    /// to the constant-and-trend table.
    pub trend: bool,
    /// Stage-one intercept; on by default.
    pub intercept: bool,
}

impl Default for CointegrationConfig {
    fn default() -> Self {
        Self {
            lags: 0,
            trend: false,
            intercept: true,
        }
    }
}

/// Outcome of a cointegration test.
#[derive(Clone, Debug, Serialize)]
pub struct CointegrationReport {
    /// The cointegrating regression of `y` on `x`.
    pub first_stage: RegressionFit,
    /// Unit-root test on the first-stage residuals, graded against the
    /// two-variable critical values.
    pub second_stage: UnitRootReport,
    /// Rejections per level; absent when the sample is too small for the
    /// critical-value surfaces.
    pub decision: Option<DecisionSet>,
    pub variant: Variant,
    pub transform: Transform,
}

impl CointegrationReport {
    /// The headline test statistic (stage two).
    pub fn statistic(&self) -> f64 {
        self.second_stage.statistic
    }

    /// Effective sample size of the stage-two regression.
    pub fn nobs(&self) -> usize {
        self.second_stage.nobs
    }
}

fn check_aligned(y: &TimeSeries, x: &TimeSeries) -> Result<()> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            left_name: y.name().to_string(),
            left: y.len(),
            right_name: x.name().to_string(),
            right: x.len(),
        });
    }
    if y.start() != x.start() {
        return Err(Error::InvalidConfig(format!(
            "series are not aligned: {} starts {} but {} starts {}",
            y.name(),
            y.start(),
            x.name(),
            x.start()
        )));
    }
    Ok(())
}

fn is_logged(s: &TimeSeries) -> bool {
    s.name().starts_with("log(")
}

/// Engle-Granger with explicit configuration.
pub fn engle_granger_with(
    y: &TimeSeries,
    x: &TimeSeries,
    config: CointegrationConfig,
) -> Result<CointegrationReport> {
    check_aligned(y, x)?;

    let mut design = DesignSpec::new();
    if config.intercept {
        design = design.with_intercept();
    }
    if config.trend {
        design = design.with_trend();
    }
    design = design.push_column(x.name(), x.values().to_vec());
    let first_stage = ols::fit(y.values(), &design)?;

    let residuals = TimeSeries::new("e", y.start(), first_stage.residuals.clone())?;
    let second_stage = unitroot::df_test(
        &residuals,
        UnitRootConfig::new(config.lags, Deterministic::None),
    )?;

    let table = if config.trend {
        Deterministic::ConstantTrend
    } else {
        Deterministic::Constant
    };
    let (second_stage, decision) =
        match critvals::critical_values(2, table, second_stage.nobs) {
            Ok(cv) => {
                let graded = second_stage.graded_against(cv);
                let decision = DecisionSet::from_statistic(graded.statistic, &cv);
                (graded, Some(decision))
            }
            Err(Error::UnsupportedSampleSize { .. }) => (second_stage, None),
            Err(e) => return Err(e),
        };

    let transform = if is_logged(y) && is_logged(x) {
        Transform::Log
    } else {
        Transform::Raw
    };

    Ok(CointegrationReport {
        first_stage,
        second_stage,
        decision,
        variant: Variant::Levels,
        transform,
    })
}

/// The standard Engle-Granger test: stage one with intercept (plus trend
/// when requested), stage two with `lags` lagged differences.
pub fn engle_granger(
    y: &TimeSeries,
    x: &TimeSeries,
    lags: usize,
    trend: bool,
) -> Result<CointegrationReport> {
    engle_granger_with(
        y,
        x,
        CointegrationConfig {
            lags,
            trend,
            intercept: true,
        },
    )
}

/// The misspecified first-difference form: both series are differenced once
/// and the plain Engle-Granger procedure (no lags, no trend) runs on the
/// differences. The stage-two sample is T − 2.
pub fn engle_granger_first_diff(
    y: &TimeSeries,
    x: &TimeSeries,
) -> Result<CointegrationReport> {
    check_aligned(y, x)?;
    let dy = y.first_difference()?;
    let dx = x.first_difference()?;
    let mut report = engle_granger(&dy, &dx, 0, false)?;
    report.variant = Variant::FirstDifferences;
    // The differenced names hide any log() wrapper; recover the label from
    // the original inputs.
    report.transform = if is_logged(y) && is_logged(x) {
        Transform::Log
    } else {
        Transform::Raw
    };
    Ok(report)
}
