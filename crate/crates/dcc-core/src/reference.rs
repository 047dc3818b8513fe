//! Bundled reference results and comparison tolerances.
//!
//! The published measurements the simulator is validated against: cold-start
//! convergence times for both control variants and the fairness metrics of
//! the 25-station merge experiment. The comparison reports and the
//! acceptance tests read these tables and tolerances so that every check in
//! the project applies the same bounds.

/// Reference convergence times for a cold start of `k` stations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColdStartRow {
    /// Station count.
    pub k: usize,
    /// Seconds until the smoothed CBR first drops below the target,
    /// single-gain variant.
    pub etsi_s: f64,
    /// Same measurement for the dual-gain variant.
    pub dual_s: f64,
}

/// Reference cold-start convergence times.
pub const COLD_START: [ColdStartRow; 6] = [
    ColdStartRow { k: 100, etsi_s: 9.4, dual_s: 2.4 },
    ColdStartRow { k: 300, etsi_s: 11.8, dual_s: 3.8 },
    ColdStartRow { k: 500, etsi_s: 12.4, dual_s: 4.2 },
    ColdStartRow { k: 700, etsi_s: 12.6, dual_s: 4.4 },
    ColdStartRow { k: 900, etsi_s: 12.8, dual_s: 4.4 },
    ColdStartRow { k: 1100, etsi_s: 13.0, dual_s: 4.6 },
];

/// Reference metrics for merging 25 stations with a group of `k_large`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeRow {
    /// Size of the larger group.
    pub k_large: usize,
    /// Jain fairness index 10 s after the merge.
    pub jain_10s: f64,
    /// Seconds for the larger group to enter the convergence band.
    pub t_conv_s: f64,
    /// Seconds until the smoothed CBR first drops below the target.
    pub t_below_s: f64,
}

/// Reference merge metrics, single-gain variant.
pub const MERGE_ETSI: [MergeRow; 6] = [
    MergeRow { k_large: 100, jain_10s: 0.86, t_conv_s: 19.4, t_below_s: 2.0 },
    MergeRow { k_large: 300, jain_10s: 0.53, t_conv_s: 22.2, t_below_s: 1.0 },
    MergeRow { k_large: 500, jain_10s: 0.39, t_conv_s: 22.4, t_below_s: 1.2 },
    MergeRow { k_large: 700, jain_10s: 0.34, t_conv_s: 20.6, t_below_s: 4.6 },
    MergeRow { k_large: 900, jain_10s: 0.39, t_conv_s: 16.0, t_below_s: 8.4 },
    MergeRow { k_large: 1100, jain_10s: 0.70, t_conv_s: 0.0, t_below_s: 17.8 },
];

/// Reference merge metrics, dual-gain variant.
pub const MERGE_DUAL: [MergeRow; 6] = [
    MergeRow { k_large: 100, jain_10s: 0.998, t_conv_s: 6.0, t_below_s: 0.6 },
    MergeRow { k_large: 300, jain_10s: 0.994, t_conv_s: 3.8, t_below_s: 0.6 },
    MergeRow { k_large: 500, jain_10s: 0.988, t_conv_s: 3.4, t_below_s: 0.4 },
    MergeRow { k_large: 700, jain_10s: 0.980, t_conv_s: 3.4, t_below_s: 1.0 },
    MergeRow { k_large: 900, jain_10s: 0.974, t_conv_s: 3.0, t_below_s: 2.0 },
    MergeRow { k_large: 1100, jain_10s: 1.0, t_conv_s: 0.0, t_below_s: 4.8 },
];

/// Tolerance on times-below-target, in seconds. Reference values are
/// quoted on a 0.2 s grid and depend on measurement-timing conventions the
/// source does not pin down; three update intervals absorb both.
pub const TOL_TIME_BELOW_S: f64 = 0.6;

/// Tolerance on group convergence times, in seconds.
pub const TOL_T_CONV_S: f64 = 1.0;

/// Tolerance on the Jain fairness index (quoted to two or three decimals).
pub const TOL_JAIN: f64 = 0.03;

/// Bounds on the dual-to-single-gain convergence-time ratio for cold
/// starts; the dual variant is expected to need roughly a quarter to a
/// third of the time.
pub const RATIO_MIN: f64 = 0.20;
/// Upper bound companion to [`RATIO_MIN`].
pub const RATIO_MAX: f64 = 0.40;

/// Relative tolerance on steady-state duty cycles versus the closed-form
/// prediction.
pub const TOL_STEADY_REL: f64 = 0.01;

/// Additive slack applied to every tolerance comparison so that a
/// difference landing exactly on the bound is not rejected for the last
/// bit of floating-point rounding.
pub const FP_SLACK: f64 = 1e-9;

/// True when `measured` is within `tol` of `reference`, with [`FP_SLACK`]
/// absorbing boundary rounding.
pub fn within(measured: f64, reference: f64, tol: f64) -> bool {
    (measured - reference).abs() <= tol + FP_SLACK
}
