//! Ordinary least squares engine behind every test regression.
//!
//! Coefficients are estimated through a Householder QR decomposition of the
//! design matrix rather than explicit normal equations; rank deficiency is
//! flagged when a diagonal of `R` falls below `1e-10` of the largest one.
//! The residual variance uses the degrees-of-freedom divisor `n - k`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Relative tolerance on `R` diagonal magnitudes below which the design is
/// declared rank deficient.
const RANK_TOLERANCE: f64 = 1e-10;

/// A regression design: optional intercept, optional linear trend
/// (`1, 2, ..., n`), and named regressor columns of common length.
#[derive(Clone, Debug, Default)]
pub struct DesignSpec {
    pub intercept: bool,
    pub trend: bool,
    columns: Vec<(String, Vec<f64>)>,
}

impl DesignSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_intercept(mut self) -> Self {
        self.intercept = true;
        self
    }

    pub fn with_trend(mut self) -> Self {
        self.trend = true;
        self
    }

    pub fn push_column(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.columns.push((name.into(), values));
        self
    }

    /// Total regressor count including intercept and trend.
    pub fn k(&self) -> usize {
        self.columns.len() + usize::from(self.intercept) + usize::from(self.trend)
    }

    pub fn columns(&self) -> &[(String, Vec<f64>)] {
        &self.columns
    }

    /// Regressor names in design-matrix order: intercept, trend, columns.
    pub fn names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.k());
        if self.intercept {
            names.push("const".to_string());
        }
        if self.trend {
            names.push("trend".to_string());
        }
        names.extend(self.columns.iter().map(|(n, _)| n.clone()));
        names
    }

    fn matrix(&self, n: usize) -> Result<DMatrix<f64>> {
        for (name, col) in &self.columns {
            if col.len() != n {
                return Err(Error::LengthMismatch {
                    left_name: "y".into(),
                    left: n,
                    right_name: name.clone(),
                    right: col.len(),
                });
            }
            if let Some(index) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    name: name.clone(),
                    index,
                });
            }
        }
        let k = self.k();
        let mut x = DMatrix::zeros(n, k);
        let mut j = 0;
        if self.intercept {
            x.column_mut(j).fill(1.0);
            j += 1;
        }
        if self.trend {
            for i in 0..n {
                x[(i, j)] = (i + 1) as f64;
            }
            j += 1;
        }
        for (_, col) in &self.columns {
            for (i, &v) in col.iter().enumerate() {
                x[(i, j)] = v;
            }
            j += 1;
        }
        Ok(x)
    }
}

/// OLS output: one entry per regressor, in design-matrix order.
#[derive(Clone, Debug, Serialize)]
pub struct RegressionFit {
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_statistics: Vec<f64>,
    /// Two-sided p-values from a Student-t reference with `dof` degrees of
    /// freedom. Meaningful for ordinary regressions only; unit-root
    /// statistics are graded against dedicated critical values instead.
    pub p_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub nobs: usize,
    pub dof: usize,
    /// Residual variance SSR / (n - k).
    pub sigma2: f64,
}

impl RegressionFit {
    /// Index of a regressor by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Fits `y` on the given design by least squares.
pub fn fit(y: &[f64], design: &DesignSpec) -> Result<RegressionFit> {
    let n = y.len();
    let k = design.k();
    if k == 0 {
        return Err(Error::InvalidDesign("no regressors".into()));
    }
    if n <= k {
        return Err(Error::InsufficientObservations {
            required: k + 1,
            available: n,
        });
    }
    if let Some(index) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            name: "y".into(),
            index,
        });
    }

    let x = design.matrix(n)?;
    let yv = DVector::from_column_slice(y);

    let qr = x.clone().qr();
    let r = qr.r();
    let max_diag = (0..k).map(|i| r[(i, i)].abs()).fold(0.0f64, f64::max);
    if max_diag == 0.0 {
        return Err(Error::SingularDesign {
            detail: "all regressors are zero".into(),
        });
    }
    let names = design.names();
    for i in 0..k {
        if r[(i, i)].abs() < RANK_TOLERANCE * max_diag {
            return Err(Error::SingularDesign {
                detail: format!(
                    "pivot {} of {} is {:.3e} relative to the largest",
                    i + 1,
                    names[i],
                    r[(i, i)].abs() / max_diag
                ),
            });
        }
    }

    let beta = qr.solve(&yv).ok_or_else(|| Error::SingularDesign {
        detail: "triangular solve failed".into(),
    })?;

    let fitted = &x * &beta;
    let residuals: Vec<f64> = yv.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let dof = n - k;
    let sigma2 = ssr / dof as f64;

    // (X'X)^{-1} = R^{-1} R^{-T} from the same decomposition.
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or_else(|| Error::SingularDesign {
            detail: "R is not invertible".into(),
        })?;
    let xtx_inv = &r_inv * r_inv.transpose();

    let t_dist = StudentsT::new(0.0, 1.0, dof as f64)
        .map_err(|e| Error::InvalidDesign(format!("bad degrees of freedom: {e}")))?;

    let mut coefficients = Vec::with_capacity(k);
    let mut standard_errors = Vec::with_capacity(k);
    let mut t_statistics = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for i in 0..k {
        let coef = beta[i];
        let se = (sigma2 * xtx_inv[(i, i)]).max(0.0).sqrt();
        let t = if se > 0.0 { coef / se } else { f64::INFINITY * coef.signum() };
        coefficients.push(coef);
        standard_errors.push(se);
        t_statistics.push(t);
        p_values.push((2.0 * (1.0 - t_dist.cdf(t.abs()))).clamp(0.0, 1.0));
    }

    Ok(RegressionFit {
        names,
        coefficients,
        standard_errors,
        t_statistics,
        p_values,
        residuals,
        nobs: n,
        dof,
        sigma2,
    })
}
