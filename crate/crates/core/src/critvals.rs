//! Finite-sample critical values for unit-root and cointegration statistics.
//!
//! Dickey-Fuller-type statistics do not follow a Student-t distribution, so
//! regression p-values are useless for them. Significance is instead decided
//! against response-surface critical values of the form
//!
//! ```text
//! C(T) = beta_inf + beta_1 / T + beta_2 / T^2
//! ```
//!
//! evaluated at the effective sample size of the final test regression. The
//! coefficients below are from MacKinnon (2010), "Critical Values for
//! Cointegration Tests", Queen's Economics Department Working Paper No. 1227,
//! Table 1, for one variable (plain unit-root test) and two variables (one
//! cointegrating regressor), with a constant or a constant plus linear trend.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest effective sample size the response surfaces are served for.
pub const MIN_EFFECTIVE_T: usize = 20;

/// Deterministic terms included in a test regression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deterministic {
    /// No intercept, no trend. No critical-value table is published for
    /// this case here; reports leave the grade empty.
    None,
    Constant,
    ConstantTrend,
}

/// Significance level of a critical value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignificanceLevel {
    OnePercent,
    FivePercent,
    TenPercent,
}

impl SignificanceLevel {
    pub const ALL: [SignificanceLevel; 3] = [
        SignificanceLevel::OnePercent,
        SignificanceLevel::FivePercent,
        SignificanceLevel::TenPercent,
    ];
}

/// One row of the MacKinnon response-surface table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResponseSurface {
    pub beta_inf: f64,
    pub beta_1: f64,
    pub beta_2: f64,
}

impl ResponseSurface {
    /// C(T) = beta_inf + beta_1/T + beta_2/T².
    pub fn evaluate(&self, effective_t: usize) -> f64 {
        let t = effective_t as f64;
        self.beta_inf + self.beta_1 / t + self.beta_2 / (t * t)
    }
}

/// Lookup key for one critical value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestContext {
    /// 1 for a unit-root test, 2 for a single-regressor cointegration test.
    pub n_variables: usize,
    pub deterministic: Deterministic,
    pub level: SignificanceLevel,
    /// Sample size of the final test regression, after differencing and lag
    /// consumption — not the raw series length.
    pub effective_t: usize,
}

// MacKinnon (2010, Table 1), tau statistics, levels 1%/5%/10%.
// Rows are (beta_inf, beta_1, beta_2); the published beta_3 term is dropped,
// which changes nothing at the sample sizes served here (and is exactly zero
// for the N=2 rows).
const N1_CONSTANT: [ResponseSurface; 3] = [
    ResponseSurface { beta_inf: -3.43035, beta_1: -6.5393, beta_2: -16.786 },
    ResponseSurface { beta_inf: -2.86154, beta_1: -2.8903, beta_2: -4.234 },
    ResponseSurface { beta_inf: -2.56677, beta_1: -1.5384, beta_2: -2.809 },
];
const N1_CONSTANT_TREND: [ResponseSurface; 3] = [
    ResponseSurface { beta_inf: -3.95877, beta_1: -9.0531, beta_2: -28.428 },
    ResponseSurface { beta_inf: -3.41049, beta_1: -4.3904, beta_2: -9.036 },
    ResponseSurface { beta_inf: -3.12705, beta_1: -2.5856, beta_2: -3.925 },
];
const N2_CONSTANT: [ResponseSurface; 3] = [
    ResponseSurface { beta_inf: -3.89644, beta_1: -10.9519, beta_2: -22.527 },
    ResponseSurface { beta_inf: -3.33613, beta_1: -6.1101, beta_2: -6.823 },
    ResponseSurface { beta_inf: -3.04445, beta_1: -4.2412, beta_2: -2.720 },
];
const N2_CONSTANT_TREND: [ResponseSurface; 3] = [
    ResponseSurface { beta_inf: -4.32739, beta_1: -15.531, beta_2: -34.03 },
    ResponseSurface { beta_inf: -3.78061, beta_1: -9.421, beta_2: -15.06 },
    ResponseSurface { beta_inf: -3.49631, beta_1: -7.203, beta_2: -4.01 },
];

/// The response-surface row for a table cell, before evaluation at any T.
pub fn response_surface(
    n_variables: usize,
    deterministic: Deterministic,
    level: SignificanceLevel,
) -> Result<ResponseSurface> {
    let table = match (n_variables, deterministic) {
        (1, Deterministic::Constant) => &N1_CONSTANT,
        (1, Deterministic::ConstantTrend) => &N1_CONSTANT_TREND,
        (2, Deterministic::Constant) => &N2_CONSTANT,
        (2, Deterministic::ConstantTrend) => &N2_CONSTANT_TREND,
        (n, Deterministic::None) => {
            return Err(Error::InvalidConfig(format!(
                "no critical-value table for N={n} without deterministic terms"
            )));
        }
        (n, _) => {
            return Err(Error::InvalidConfig(format!(
                "no critical-value table for N={n}; only N=1 and N=2 are embedded"
            )));
        }
    };
    let row = match level {
        SignificanceLevel::OnePercent => table[0],
        SignificanceLevel::FivePercent => table[1],
        SignificanceLevel::TenPercent => table[2],
    };
    Ok(row)
}

/// One critical value C(effective_T). Errors on effective_T < 20 or a table
/// cell that is not embedded.
pub fn critical_value(ctx: TestContext) -> Result<f64> {
    if ctx.effective_t < MIN_EFFECTIVE_T {
        return Err(Error::UnsupportedSampleSize {
            effective_t: ctx.effective_t,
        });
    }
    let surface = response_surface(ctx.n_variables, ctx.deterministic, ctx.level)?;
    Ok(surface.evaluate(ctx.effective_t))
}

/// The three graded thresholds for one table cell at one sample size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalValues {
    pub n_variables: usize,
    pub deterministic: Deterministic,
    pub effective_t: usize,
    pub one_pct: f64,
    pub five_pct: f64,
    pub ten_pct: f64,
}

impl CriticalValues {
    pub fn at(&self, level: SignificanceLevel) -> f64 {
        match level {
            SignificanceLevel::OnePercent => self.one_pct,
            SignificanceLevel::FivePercent => self.five_pct,
            SignificanceLevel::TenPercent => self.ten_pct,
        }
    }

    /// Strongest level at which `statistic` rejects (statistic < C), if any.
    pub fn grade(&self, statistic: f64) -> Grade {
        if statistic < self.one_pct {
            Grade::OnePercent
        } else if statistic < self.five_pct {
            Grade::FivePercent
        } else if statistic < self.ten_pct {
            Grade::TenPercent
        } else {
            Grade::None
        }
    }
}

/// All three critical values for a table cell.
pub fn critical_values(
    n_variables: usize,
    deterministic: Deterministic,
    effective_t: usize,
) -> Result<CriticalValues> {
    let mut cv = [0.0; 3];
    for (slot, level) in cv.iter_mut().zip(SignificanceLevel::ALL) {
        *slot = critical_value(TestContext {
            n_variables,
            deterministic,
            level,
            effective_t,
        })?;
    }
    Ok(CriticalValues {
        n_variables,
        deterministic,
        effective_t,
        one_pct: cv[0],
        five_pct: cv[1],
        ten_pct: cv[2],
    })
}

/// Significance grade of a statistic, reported with the usual star notation:
/// `***` 1%, `**` 5%, `*` 10%.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grade {
    None,
    TenPercent,
    FivePercent,
    OnePercent,
}

impl Grade {
    pub fn stars(&self) -> &'static str {
        match self {
            Grade::None => "",
            Grade::TenPercent => "*",
            Grade::FivePercent => "**",
            Grade::OnePercent => "***",
        }
    }

    pub fn from_stars(stars: &str) -> Option<Grade> {
        match stars {
            "" => Some(Grade::None),
            "*" => Some(Grade::TenPercent),
            "**" => Some(Grade::FivePercent),
            "***" => Some(Grade::OnePercent),
            _ => None,
        }
    }
}

/// Grades a statistic against the full set of levels for one table cell.
pub fn grade(
    statistic: f64,
    n_variables: usize,
    deterministic: Deterministic,
    effective_t: usize,
) -> Result<Grade> {
    Ok(critical_values(n_variables, deterministic, effective_t)?.grade(statistic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(
        n_variables: usize,
        deterministic: Deterministic,
        level: SignificanceLevel,
        effective_t: usize,
    ) -> TestContext {
        TestContext {
            n_variables,
            deterministic,
            level,
            effective_t,
        }
    }

    #[test]
    fn published_anchor_values() {
        // N=2, constant, 5%, T=47 → −3.469
        let cv = critical_value(ctx(2, Deterministic::Constant, SignificanceLevel::FivePercent, 47))
            .unwrap();
        assert!((cv - (-3.469)).abs() < 1e-3, "got {cv}");
        // N=2, constant, 1%, T=46 → −4.145
        let cv = critical_value(ctx(2, Deterministic::Constant, SignificanceLevel::OnePercent, 46))
            .unwrap();
        assert!((cv - (-4.145)).abs() < 1e-3, "got {cv}");
    }

    #[test]
    fn limit_is_beta_inf() {
        for n in [1, 2] {
            for det in [Deterministic::Constant, Deterministic::ConstantTrend] {
                for level in SignificanceLevel::ALL {
                    let surface = response_surface(n, det, level).unwrap();
                    let far = critical_value(ctx(n, det, level, 1_000_000)).unwrap();
                    assert!((far - surface.beta_inf).abs() < 1e-4);
                }
            }
        }
    }

    #[test]
    fn levels_are_ordered_and_negative() {
        for n in [1, 2] {
            for det in [Deterministic::Constant, Deterministic::ConstantTrend] {
                for t in [20, 35, 46, 47, 48, 120, 480, 5000] {
                    let cv = critical_values(n, det, t).unwrap();
                    assert!(cv.one_pct < cv.five_pct);
                    assert!(cv.five_pct < cv.ten_pct);
                    assert!(cv.ten_pct < 0.0);
                }
            }
        }
    }

    #[test]
    fn surfaces_are_monotone_in_t() {
        for n in [1, 2] {
            for det in [Deterministic::Constant, Deterministic::ConstantTrend] {
                for level in SignificanceLevel::ALL {
                    let surface = response_surface(n, det, level).unwrap();
                    let mut prev = surface.evaluate(20);
                    for t in 21..=10_000 {
                        let cur = surface.evaluate(t);
                        assert!(
                            cur > prev,
                            "C(T) not increasing at T={t} for N={n} {det:?} {level:?}"
                        );
                        prev = cur;
                    }
                }
            }
        }
    }

    #[test]
    fn grade_examples() {
        let cv = critical_values(2, Deterministic::Constant, 47).unwrap();
        assert_eq!(cv.grade(-3.54), Grade::FivePercent);
        assert_eq!(cv.grade(-2.72), Grade::None);
        assert_eq!(cv.grade(0.0), Grade::None);
    }

    #[test]
    fn stars_roundtrip() {
        for g in [Grade::None, Grade::TenPercent, Grade::FivePercent, Grade::OnePercent] {
            assert_eq!(Grade::from_stars(g.stars()), Some(g));
        }
        assert_eq!(Grade::from_stars("****"), None);
    }

    #[test]
    fn small_samples_and_unknown_cells_error() {
        let err =
            critical_value(ctx(2, Deterministic::Constant, SignificanceLevel::FivePercent, 19))
                .unwrap_err();
        assert!(matches!(err, Error::UnsupportedSampleSize { effective_t: 19 }));

        let err = critical_value(ctx(2, Deterministic::None, SignificanceLevel::FivePercent, 47))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));

        let err =
            critical_value(ctx(3, Deterministic::Constant, SignificanceLevel::FivePercent, 47))
                .unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
    }

    proptest! {
        #[test]
        fn grading_is_monotone_in_the_statistic(
            a in -8.0f64..2.0,
            b in -8.0f64..2.0,
            t in 20usize..2000,
            n in 1usize..=2,
            trend in proptest::bool::ANY,
        ) {
            let det = if trend { Deterministic::ConstantTrend } else { Deterministic::Constant };
            let cv = critical_values(n, det, t).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            // more negative statistic → at least as strong a grade
            prop_assert!(cv.grade(lo) >= cv.grade(hi));
        }
    }
}
