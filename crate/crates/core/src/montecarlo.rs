//! Monte Carlo study of spurious cointegration findings.
//!
//! The data-generating process is a pair of independent driftless random
//! walks, `x_t = x_{t−1} + u_{1t}` and `y_t = y_{t−1} + u_{2t}` with
//! independent standard-normal innovations: unit-root processes that are not
//! cointegrated by construction. Each replication runs the Engle-Granger
//! test twice — correctly on levels, and misspecified on first differences —
//! and the summary contrasts the two arms. The levels arm rejects at roughly
//! the nominal rate; the first-difference arm rejects essentially always,
//! and its mean statistic drifts toward −∞ as T grows (see
//! [`sweep_sample_sizes`]).
//!
//! # Reproducibility contract
//!
//! All randomness comes from `ChaCha8Rng` seeded with the 64-bit
//! user-supplied seed via `seed_from_u64`. Replication `i` reads from stream
//! `i` of that generator (`set_stream(i)`), so any replication can be
//! regenerated in isolation and results do not depend on scheduling. Normal
//! deviates use the Box-Muller transform over uniforms mapped from the top
//! 53 bits of each 64-bit draw: `u1 = (bits53 + 1)·2⁻⁵³ ∈ (0, 1]` and
//! `u2 = bits53·2⁻⁵³ ∈ [0, 1)`, giving `z₀ = √(−2 ln u1)·cos(2π u2)` and
//! `z₁` the sine variant. Each series draws its innovations contiguously —
//! all of x first, then all of y; an odd count discards the buffered second
//! deviate of the final pair.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::cointegration::{self, CointegrationReport};
use crate::critvals::{self, Deterministic, SignificanceLevel};
use crate::error::{Error, Result};
use crate::series::{MonthDate, TimeSeries};

/// Histogram layout for the statistic distributions: bins of width 0.5
/// spanning [−12, +2]; out-of-range values clamp to the edge bins.
const HISTOGRAM_LO: f64 = -12.0;
const HISTOGRAM_HI: f64 = 2.0;
const HISTOGRAM_WIDTH: f64 = 0.5;
const HISTOGRAM_BINS: usize = ((HISTOGRAM_HI - HISTOGRAM_LO) / HISTOGRAM_WIDTH) as usize;

/// Configuration of one Monte Carlo experiment.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct McConfig {
    pub replications: usize,
    /// Length of each simulated series.
    pub t: usize,
    pub seed: u64,
    /// Level used for rejection counting.
    pub level: SignificanceLevel,
}

impl McConfig {
    /// The defaults of the study: 1,000 replications of length-48 series,
    /// rejections counted at 5%.
    pub fn new(seed: u64) -> Self {
        Self {
            replications: 1000,
            t: 48,
            seed,
            level: SignificanceLevel::FivePercent,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidConfig(
                "replications must be at least 1".into(),
            ));
        }
        if self.t < 10 {
            return Err(Error::InvalidConfig(format!(
                "series length {} is below the minimum of 10",
                self.t
            )));
        }
        Ok(())
    }
}

/// Summary of one test arm over all included replications.
#[derive(Clone, Debug, Serialize)]
pub struct ArmSummary {
    /// Effective sample size of the second-stage regression.
    pub effective_t: usize,
    /// Critical value rejections were counted against.
    pub critical_value: f64,
    /// Mean of the statistic distribution.
    pub mean: f64,
    /// Standard deviation of the statistic distribution (divisor m − 1;
    /// zero when only one replication is included).
    pub sd: f64,
    /// Share of included replications with statistic < critical_value.
    pub rejection_rate: f64,
    /// One statistic per included replication, in replication order.
    pub statistics: Vec<f64>,
}

impl ArmSummary {
    fn from_statistics(statistics: Vec<f64>, effective_t: usize, critical_value: f64) -> Self {
        let m = statistics.len();
        let mean = statistics.iter().sum::<f64>() / m as f64;
        let sd = if m >= 2 {
            let ss: f64 = statistics.iter().map(|s| (s - mean).powi(2)).sum();
            (ss / (m - 1) as f64).sqrt()
        } else {
            0.0
        };
        let rejections = statistics.iter().filter(|&&s| s < critical_value).count();
        Self {
            effective_t,
            critical_value,
            mean,
            sd,
            rejection_rate: rejections as f64 / m as f64,
            statistics,
        }
    }
}

/// One histogram bin with per-arm counts.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub levels: usize,
    pub first_differences: usize,
}

/// Side-by-side distribution of the two arms' statistics.
#[derive(Clone, Debug, Serialize)]
pub struct Histogram {
    pub bins: Vec<HistogramBin>,
}

impl Histogram {
    /// Bins two statistic lists; values outside [−12, 2] land in the
    /// nearest edge bin so counts always conserve the inputs.
    pub fn from_statistics(levels: &[f64], first_differences: &[f64]) -> Self {
        let mut counts = [[0usize; 2]; HISTOGRAM_BINS];
        for (arm, stats) in [levels, first_differences].into_iter().enumerate() {
            for &s in stats {
                let bin = ((s - HISTOGRAM_LO) / HISTOGRAM_WIDTH).floor();
                let idx = (bin.max(0.0) as usize).min(HISTOGRAM_BINS - 1);
                counts[idx][arm] += 1;
            }
        }
        let bins = counts
            .iter()
            .enumerate()
            .map(|(i, c)| HistogramBin {
                lo: HISTOGRAM_LO + i as f64 * HISTOGRAM_WIDTH,
                hi: HISTOGRAM_LO + (i + 1) as f64 * HISTOGRAM_WIDTH,
                levels: c[0],
                first_differences: c[1],
            })
            .collect();
        Self { bins }
    }

    /// CSV rendering with header `bin_lo,bin_hi,count_levels,count_diffs`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count_levels,count_diffs\n");
        for bin in &self.bins {
            out.push_str(&format!(
                "{:.1},{:.1},{},{}\n",
                bin.lo, bin.hi, bin.levels, bin.first_differences
            ));
        }
        out
    }
}

/// Aggregated result of a Monte Carlo experiment.
#[derive(Clone, Debug, Serialize)]
pub struct McSummary {
    pub config: McConfig,
    pub levels: ArmSummary,
    pub first_differences: ArmSummary,
    pub histogram: Histogram,
    /// Replications excluded because a test regression was degenerate
    /// (never observed under this DGP, but recorded rather than dropped).
    pub degenerate_replications: Vec<usize>,
}

impl McSummary {
    pub fn degenerate_count(&self) -> usize {
        self.degenerate_replications.len()
    }
}

fn standard_normals(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count + 1);
    while out.len() < count {
        let u1 = ((rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64);
        let u2 = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        out.push(r * theta.cos());
        out.push(r * theta.sin());
    }
    out.truncate(count);
    out
}

fn accumulate(name: &str, innovations: Vec<f64>) -> TimeSeries {
    let mut level = 0.0;
    let values: Vec<f64> = innovations
        .into_iter()
        .map(|u| {
            level += u;
            level
        })
        .collect();
    TimeSeries::new(name, MonthDate::new(2000, 1), values)
        .expect("simulated walks are nonempty and finite")
}

/// Generates one independent random-walk pair `(x, y)` of length `t` from
/// stream `stream` of the seeded generator. Both walks start at level 0 and
/// accumulate standard-normal innovations.
pub fn simulate_random_walk_pair(seed: u64, stream: u64, t: usize) -> (TimeSeries, TimeSeries) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let x = accumulate("x", standard_normals(&mut rng, t));
    let y = accumulate("y", standard_normals(&mut rng, t));
    (x, y)
}

enum RepOutcome {
    Statistics { levels: f64, first_differences: f64 },
    Degenerate,
}

fn run_replication(seed: u64, rep: usize, t: usize) -> Result<RepOutcome> {
    let (x, y) = simulate_random_walk_pair(seed, rep as u64, t);
    let levels = cointegration::engle_granger(&y, &x, 0, false);
    let diffs = cointegration::engle_granger_first_diff(&y, &x);
    match (levels, diffs) {
        (Ok(l), Ok(d)) => Ok(RepOutcome::Statistics {
            levels: l.statistic(),
            first_differences: d.statistic(),
        }),
        (Err(e), _) | (_, Err(e))
            if matches!(e, Error::SingularDesign { .. } | Error::DegenerateInput(_)) =>
        {
            Ok(RepOutcome::Degenerate)
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

fn summarize(config: McConfig, outcomes: Vec<RepOutcome>) -> Result<McSummary> {
    let mut levels = Vec::with_capacity(outcomes.len());
    let mut diffs = Vec::with_capacity(outcomes.len());
    let mut degenerate = Vec::new();
    for (rep, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            RepOutcome::Statistics {
                levels: l,
                first_differences: d,
            } => {
                levels.push(l);
                diffs.push(d);
            }
            RepOutcome::Degenerate => degenerate.push(rep),
        }
    }
    if levels.is_empty() {
        return Err(Error::DegenerateInput(
            "every replication produced a degenerate regression".into(),
        ));
    }

    // Both arms grade against the two-variable constant-case table at their
    // own effective sample size: T−1 for levels, T−2 for first differences.
    let cv_levels = critvals::critical_values(2, Deterministic::Constant, config.t - 1)?;
    let cv_diffs = critvals::critical_values(2, Deterministic::Constant, config.t - 2)?;

    let histogram = Histogram::from_statistics(&levels, &diffs);
    Ok(McSummary {
        config,
        levels: ArmSummary::from_statistics(levels, config.t - 1, cv_levels.at(config.level)),
        first_differences: ArmSummary::from_statistics(
            diffs,
            config.t - 2,
            cv_diffs.at(config.level),
        ),
        histogram,
        degenerate_replications: degenerate,
    })
}

/// Runs the experiment with replications fanned out across threads.
/// Identical configurations produce identical summaries regardless of
/// scheduling: outcomes are collected in replication order.
pub fn run_experiment(config: McConfig) -> Result<McSummary> {
    config.validate()?;
    let outcomes: Vec<RepOutcome> = (0..config.replications)
        .into_par_iter()
        .map(|rep| run_replication(config.seed, rep, config.t))
        .collect::<Result<_>>()?;
    summarize(config, outcomes)
}

/// Single-threaded variant of [`run_experiment`], bit-identical to it.
pub fn run_experiment_serial(config: McConfig) -> Result<McSummary> {
    config.validate()?;
    let outcomes: Vec<RepOutcome> = (0..config.replications)
        .map(|rep| run_replication(config.seed, rep, config.t))
        .collect::<Result<_>>()?;
    summarize(config, outcomes)
}

/// Repeats the experiment across sample sizes to trace how the
/// first-difference arm degrades: its mean statistic falls without bound in
/// T while the levels arm stays near its nominal size. Each sample size gets
/// an independent seed derived as `seed + index·0x9E3779B97F4A7C15` (wrapping
/// golden-ratio stride), so sweeps are reproducible but arms at different T
/// share no innovations.
pub fn sweep_sample_sizes(
    t_values: &[usize],
    replications: usize,
    seed: u64,
) -> Result<Vec<McSummary>> {
    t_values
        .iter()
        .enumerate()
        .map(|(index, &t)| {
            let config = McConfig {
                replications,
                t,
                seed: seed.wrapping_add((index as u64).wrapping_mul(0x9E3779B97F4A7C15)),
                level: SignificanceLevel::FivePercent,
            };
            run_experiment(config)
        })
        .collect()
}

/// Convenience accessor used by the CLI: the full two-arm report of a
/// single replication, for drill-down output.
pub fn replication_reports(
    seed: u64,
    rep: usize,
    t: usize,
) -> Result<(CointegrationReport, CointegrationReport)> {
    let (x, y) = simulate_random_walk_pair(seed, rep as u64, t);
    Ok((
        cointegration::engle_granger(&y, &x, 0, false)?,
        cointegration::engle_granger_first_diff(&y, &x)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_generation_is_deterministic_per_stream() {
        let (x1, y1) = simulate_random_walk_pair(42, 3, 48);
        let (x2, y2) = simulate_random_walk_pair(42, 3, 48);
        assert_eq!(x1.values(), x2.values());
        assert_eq!(y1.values(), y2.values());

        let (x3, _) = simulate_random_walk_pair(42, 4, 48);
        assert_ne!(x1.values(), x3.values());
        let (x4, _) = simulate_random_walk_pair(43, 3, 48);
        assert_ne!(x1.values(), x4.values());
    }

    #[test]
    fn innovation_moments_match_the_standard_normal() {
        // one million draws per series; the walk's first differences
        // recover the innovations
        let t = 1_000_000;
        let (x, y) = simulate_random_walk_pair(7, 0, t);
        let dx = x.first_difference().unwrap();
        let dy = y.first_difference().unwrap();
        // the first innovation is values[0] itself (walks start at 0)
        let mut ux = vec![x.values()[0]];
        ux.extend_from_slice(dx.values());
        let mut uy = vec![y.values()[0]];
        uy.extend_from_slice(dy.values());

        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let mx = mean(&ux);
        let my = mean(&uy);
        let var = |v: &[f64], m: f64| v.iter().map(|u| (u - m).powi(2)).sum::<f64>() / v.len() as f64;
        let vx = var(&ux, mx);
        let vy = var(&uy, my);
        assert!(mx.abs() < 0.01, "mean {mx}");
        assert!(my.abs() < 0.01, "mean {my}");
        assert!((vx - 1.0).abs() < 0.01, "variance {vx}");
        assert!((vy - 1.0).abs() < 0.01, "variance {vy}");

        let cov: f64 = ux
            .iter()
            .zip(&uy)
            .map(|(a, b)| (a - mx) * (b - my))
            .sum::<f64>()
            / t as f64;
        let corr = cov / (vx * vy).sqrt();
        assert!(corr.abs() < 0.01, "correlation {corr}");
    }

    #[test]
    fn parallel_and_serial_runs_are_identical() {
        let config = McConfig {
            replications: 200,
            t: 48,
            seed: 42,
            level: SignificanceLevel::FivePercent,
        };
        let parallel = run_experiment(config).unwrap();
        let serial = run_experiment_serial(config).unwrap();
        assert_eq!(parallel.levels.statistics.len(), serial.levels.statistics.len());
        for (a, b) in parallel
            .levels
            .statistics
            .iter()
            .zip(&serial.levels.statistics)
        {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        for (a, b) in parallel
            .first_differences
            .statistics
            .iter()
            .zip(&serial.first_differences.statistics)
        {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(parallel.levels.mean.to_bits(), serial.levels.mean.to_bits());
    }

    #[test]
    fn single_replication_summary_is_degenerate_but_valid() {
        let config = McConfig {
            replications: 1,
            t: 48,
            seed: 5,
            level: SignificanceLevel::FivePercent,
        };
        let summary = run_experiment(config).unwrap();
        assert_eq!(summary.levels.sd, 0.0);
        assert!(summary.levels.rejection_rate == 0.0 || summary.levels.rejection_rate == 1.0);
        assert_eq!(summary.histogram.bins.iter().map(|b| b.levels).sum::<usize>(), 1);
    }

    #[test]
    fn first_difference_arm_sits_far_below_the_levels_arm() {
        for seed in [1u64, 99, 2024] {
            let summary = run_experiment(McConfig {
                replications: 300,
                t: 48,
                seed,
                level: SignificanceLevel::FivePercent,
            })
            .unwrap();
            assert!(
                summary.first_differences.mean < summary.levels.mean,
                "seed {seed}: {} !< {}",
                summary.first_differences.mean,
                summary.levels.mean
            );
        }
    }

    #[test]
    fn arm_critical_values_use_each_arms_effective_t() {
        let summary = run_experiment(McConfig {
            replications: 2,
            t: 48,
            seed: 1,
            level: SignificanceLevel::FivePercent,
        })
        .unwrap();
        assert_eq!(summary.levels.effective_t, 47);
        assert_eq!(summary.first_differences.effective_t, 46);
        let cv47 = critvals::critical_values(2, Deterministic::Constant, 47).unwrap();
        let cv46 = critvals::critical_values(2, Deterministic::Constant, 46).unwrap();
        assert_eq!(summary.levels.critical_value, cv47.five_pct);
        assert_eq!(summary.first_differences.critical_value, cv46.five_pct);
    }

    #[test]
    fn histogram_clamps_and_conserves_counts() {
        let levels = vec![-50.0, -12.3, -6.1, 0.0, 1.99, 7.5];
        let diffs = vec![-11.99, 2.0, 3.0];
        let hist = Histogram::from_statistics(&levels, &diffs);
        assert_eq!(hist.bins.len(), 28);
        assert_eq!(hist.bins.iter().map(|b| b.levels).sum::<usize>(), levels.len());
        assert_eq!(
            hist.bins.iter().map(|b| b.first_differences).sum::<usize>(),
            diffs.len()
        );
        // -50 and -12.3 clamp into the first bin; 7.5 into the last
        assert_eq!(hist.bins[0].levels, 2);
        assert_eq!(hist.bins[27].levels, 2); // 1.99 and 7.5
        assert_eq!(hist.bins[0].first_differences, 1); // -11.99
        assert_eq!(hist.bins[27].first_differences, 2); // 2.0 clamps in, 3.0 clamps in
    }

    #[test]
    fn histogram_csv_has_the_documented_header() {
        let hist = Histogram::from_statistics(&[-2.0], &[-7.0]);
        let csv = hist.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("bin_lo,bin_hi,count_levels,count_diffs"));
        assert_eq!(lines.clone().count(), 28);
        assert!(lines.next().unwrap().starts_with("-12.0,-11.5,"));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut config = McConfig::new(1);
        config.replications = 0;
        assert!(matches!(
            run_experiment(config).unwrap_err(),
            Error::InvalidConfig(_)
        ));
        let mut config = McConfig::new(1);
        config.t = 9;
        assert!(matches!(
            run_experiment(config).unwrap_err(),
            Error::InvalidConfig(_)
        ));
    }

    #[test]
    fn sweep_uses_distinct_seeds_and_reports_each_t() {
        let summaries = sweep_sample_sizes(&[48, 60], 20, 9).unwrap();
        assert_eq!(summaries.len(), 2);
        assert_eq!(summaries[0].config.t, 48);
        assert_eq!(summaries[1].config.t, 60);
        assert_ne!(summaries[0].config.seed, summaries[1].config.seed);
    }
}
