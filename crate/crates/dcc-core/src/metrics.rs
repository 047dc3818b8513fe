//! Fairness and transient-duration metrics over completed runs.
//!
//! Three questions recur when comparing control variants: how evenly the
//! channel is shared (Jain fairness index), how long the channel load needs
//! to drop below the target after a disturbance, and how long a group needs
//! to reach the neighbourhood of its final duty cycle. This module answers
//! them from a [`TimeSeries`], plus a bundled summary for merge
//! experiments.

use core::fmt;

use crate::engine::TimeSeries;
use crate::params::DccParams;

/// Relative half-width of the convergence band used by [`merge_metrics`]:
/// a group counts as converged once its mean duty cycle stays within
/// ±10% of the predicted final value.
pub const CONVERGENCE_BAND: f64 = 0.10;

/// Dwell requirement for band entry, in ticks (1 s). A crossing only
/// counts as convergence if the mean stays in the band this long, so a
/// transient swing through the band does not register.
const DWELL_TICKS: usize = 10;

/// Slack used when comparing tick times against a requested start time,
/// absorbing the rounding of the 0.1 s grid.
const TIME_EPS: f64 = 1e-9;

/// Rejected metric inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricsError {
    /// The input list or series has no elements.
    EmptyInput,
    /// A duty cycle was zero, negative, NaN, or infinite.
    NonPositiveDelta {
        /// The offending value.
        value: f64,
    },
    /// The band half-width was zero, negative, NaN, or infinite.
    NonPositiveBand {
        /// The offending value.
        value: f64,
    },
    /// The series has no group with this index.
    UnknownGroup {
        /// The requested group index.
        group: usize,
    },
    /// The series ends before the requested sample time.
    SeriesTooShort {
        /// Tick index that would have to exist.
        tick: usize,
        /// Number of ticks actually present.
        len: usize,
    },
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::EmptyInput => f.write_str("input is empty"),
            MetricsError::NonPositiveDelta { value } => {
                write!(f, "duty cycles must be positive and finite, got {value}")
            }
            MetricsError::NonPositiveBand { value } => {
                write!(f, "band must be positive and finite, got {value}")
            }
            MetricsError::UnknownGroup { group } => {
                write!(f, "series has no group {group}")
            }
            MetricsError::SeriesTooShort { tick, len } => {
                write!(f, "series has {len} ticks, sample at tick {tick} not recorded")
            }
        }
    }
}

impl core::error::Error for MetricsError {}

/// Jain fairness index of a duty-cycle allocation:
/// `(sum)^2 / (n * sum of squares)`.
///
/// The result lies in `(0, 1]`, reaching 1 exactly when all shares are
/// equal and falling towards `1/n` as one station dominates. The index is
/// scale-free: multiplying every share by the same positive factor does
/// not change it.
pub fn jain_index(deltas: &[f64]) -> Result<f64, MetricsError> {
    if deltas.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for &d in deltas {
        if !(d.is_finite() && d > 0.0) {
            return Err(MetricsError::NonPositiveDelta { value: d });
        }
        sum += d;
        sum_sq += d * d;
    }
    Ok(sum * sum / (deltas.len() as f64 * sum_sq))
}

/// Seconds from `from_t` until the smoothed CBR first drops below
/// `target`; `None` when it never does within the series.
///
/// A series already below the target at `from_t` yields 0.
pub fn time_below_target(series: &TimeSeries, target: f64, from_t: f64) -> Option<f64> {
    series
        .ticks
        .iter()
        .find(|r| r.t >= from_t - TIME_EPS && r.cbr_smoothed < target)
        .map(|r| r.t - from_t)
}

/// Seconds until `group`'s mean duty cycle enters the band
/// `[center * (1 - band), center * (1 + band)]` and stays there for at
/// least one second; `None` when that never happens within the series.
pub fn time_to_band(
    series: &TimeSeries,
    group: usize,
    center: f64,
    band: f64,
) -> Result<Option<f64>, MetricsError> {
    time_to_band_from(series, group, center, band, 0.0)
}

/// [`time_to_band`] measured from `from_t` instead of the series start.
///
/// Ticks before `from_t` are ignored and the returned duration is relative
/// to `from_t`, which suits merges that happen mid-run.
pub fn time_to_band_from(
    series: &TimeSeries,
    group: usize,
    center: f64,
    band: f64,
    from_t: f64,
) -> Result<Option<f64>, MetricsError> {
    if series.ticks.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    if group >= series.group_count() {
        return Err(MetricsError::UnknownGroup { group });
    }
    if !(band.is_finite() && band > 0.0) {
        return Err(MetricsError::NonPositiveBand { value: band });
    }
    let lo = center * (1.0 - band);
    let hi = center * (1.0 + band);
    let in_band = |r: &crate::engine::TickRecord| {
        let mean = r.groups[group].mean;
        lo <= mean && mean <= hi
    };
    let n = series.ticks.len();
    for entry in 0..n {
        let r = &series.ticks[entry];
        if r.t < from_t - TIME_EPS {
            continue;
        }
        if in_band(r) {
            let end = (entry + DWELL_TICKS).min(n - 1);
            if series.ticks[entry..=end].iter().all(|r| in_band(r)) {
                return Ok(Some(r.t - from_t));
            }
        }
    }
    Ok(None)
}

/// Summary of a merge experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeMetrics {
    /// Jain index sampled 10 s after the merge.
    pub jain_at: f64,
    /// Seconds from the merge until the designated group's mean duty cycle
    /// settles within the convergence band; `None` if it never does.
    pub t_conv: Option<f64>,
    /// Seconds from the merge until the smoothed CBR first drops below the
    /// target; `None` if it never does.
    pub t_below_target: Option<f64>,
}

/// Computes the three merge metrics in one pass over the series.
///
/// `larger_group` designates the group whose convergence is timed,
/// `merged_delta_conv` is the predicted duty cycle of the combined
/// population, and `merge_time` is when the joining group appeared. The
/// Jain sample is taken at the tick nearest `merge_time + 10` s.
pub fn merge_metrics(
    series: &TimeSeries,
    larger_group: usize,
    merged_delta_conv: f64,
    merge_time: f64,
    p: &DccParams,
) -> Result<MergeMetrics, MetricsError> {
    let sample = ((merge_time + 10.0) * 10.0 + 0.5) as usize;
    if sample >= series.ticks.len() {
        return Err(MetricsError::SeriesTooShort {
            tick: sample,
            len: series.ticks.len(),
        });
    }
    let t_conv = time_to_band_from(
        series,
        larger_group,
        merged_delta_conv,
        CONVERGENCE_BAND,
        merge_time,
    )?;
    Ok(MergeMetrics {
        jain_at: series.ticks[sample].jain,
        t_conv,
        t_below_target: time_below_target(series, p.cbr_target, merge_time),
    })
}
