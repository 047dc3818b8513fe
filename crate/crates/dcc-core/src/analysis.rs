//! Closed-form convergence analysis of the shared-channel control loop.
//!
//! For `k` stations running the single-gain law on an ideal channel, the
//! loop has a known fixed point. [`conv_value`] evaluates it, and
//! [`classify_convergence`] reports which regime the loop actually settles
//! in once the duty-cycle clamps and the gain cap are taken into account.
//! These predictions serve as an independent oracle for the simulator and
//! produce the steady-state CBR curve via [`cbr_convergence_curve`].

use alloc::vec::Vec;
use core::fmt;

use crate::params::DccParams;
use crate::DomainError;

/// Regime the control loop settles in for a given station count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceKind {
    /// The unconstrained fixed point lies inside the duty-cycle bounds.
    Interior,
    /// The positive-offset cap `g_plus_max` limits the fixed point.
    GainLimited,
    /// The fixed point exceeds `delta_max`; every station pins there.
    ClampedMax,
    /// The fixed point falls below `delta_min`; every station pins there.
    ClampedMin,
    /// The loop gain is too large for guaranteed convergence.
    NoGuarantee,
}

impl fmt::Display for ConvergenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConvergenceKind::Interior => "Interior",
            ConvergenceKind::GainLimited => "GainLimited",
            ConvergenceKind::ClampedMax => "ClampedMax",
            ConvergenceKind::ClampedMin => "ClampedMin",
            ConvergenceKind::NoGuarantee => "NoGuarantee",
        };
        f.write_str(name)
    }
}

/// Outcome of [`classify_convergence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceResult {
    /// Regime the loop settles in.
    pub kind: ConvergenceKind,
    /// Steady-state per-station duty cycle; `None` when convergence is not
    /// guaranteed.
    pub delta_conv: Option<f64>,
    /// Steady-state channel load, `k * delta_conv` capped at 1; `None`
    /// exactly when `delta_conv` is.
    pub predicted_cbr: Option<f64>,
}

fn check_count(k: f64) -> Result<(), DomainError> {
    if k >= 1.0 && k.is_finite() {
        Ok(())
    } else {
        Err(DomainError { name: "k", value: k })
    }
}

/// Unconstrained fixed-point duty cycle for `k` stations.
///
/// Evaluates `min(g_plus_max / alpha, beta * cbr_target / (alpha + k * beta))`.
/// `k` may be fractional; it must be at least 1. Once the second term binds,
/// the value is strictly decreasing in `k`.
pub fn conv_value(k: f64, p: &DccParams) -> Result<f64, DomainError> {
    check_count(k)?;
    let gain_term = p.g_plus_max / p.alpha;
    let share_term = p.beta * p.cbr_target / (p.alpha + k * p.beta);
    Ok(gain_term.min(share_term))
}

/// Classifies the steady-state regime for `k` stations.
///
/// The case conditions are checked in a fixed order and the first match
/// wins, so overlapping conditions resolve deterministically:
///
/// 1. `Interior` when the total loop gain `alpha + k * beta` is below 2 and
///    the fixed point lies within the duty-cycle bounds;
/// 2. `GainLimited` when `g_plus_max / alpha` binds the fixed point and
///    itself lies within the bounds;
/// 3. `ClampedMax` when the fixed point exceeds `delta_max`;
/// 4. `ClampedMin` when the fixed point falls below `delta_min`;
/// 5. `NoGuarantee` otherwise.
pub fn classify_convergence(k: f64, p: &DccParams) -> Result<ConvergenceResult, DomainError> {
    let conv = conv_value(k, p)?;
    let loop_gain = p.alpha + k * p.beta;
    let gain_term = p.g_plus_max / p.alpha;
    let share_term = p.beta * p.cbr_target / loop_gain;

    let (kind, delta_conv) = if loop_gain < 2.0 && conv <= p.delta_max && conv >= p.delta_min {
        (ConvergenceKind::Interior, Some(conv))
    } else if gain_term <= share_term && gain_term <= p.delta_max && gain_term >= p.delta_min {
        (ConvergenceKind::GainLimited, Some(gain_term))
    } else if conv > p.delta_max {
        (ConvergenceKind::ClampedMax, Some(p.delta_max))
    } else if conv < p.delta_min {
        (ConvergenceKind::ClampedMin, Some(p.delta_min))
    } else {
        (ConvergenceKind::NoGuarantee, None)
    };

    Ok(ConvergenceResult {
        kind,
        delta_conv,
        predicted_cbr: delta_conv.map(|d| (k * d).min(1.0)),
    })
}

/// Smallest station count at which the fixed point reaches `delta_min`,
/// solved in closed form: `(beta * cbr_target / delta_min - alpha) / beta`.
///
/// Above this count every station pins at `delta_min` and the channel load
/// grows as `k * delta_min`; it crosses `cbr_target` later, at
/// `cbr_target / delta_min` stations.
pub fn capacity_threshold(p: &DccParams) -> f64 {
    (p.beta * p.cbr_target / p.delta_min - p.alpha) / p.beta
}

/// Predicted steady-state CBR at each station count in `ks`.
///
/// Each point is `classify_convergence(k, p).predicted_cbr`; counts in the
/// `NoGuarantee` regime yield `None`.
pub fn cbr_convergence_curve(
    ks: &[f64],
    p: &DccParams,
) -> Result<Vec<(f64, Option<f64>)>, DomainError> {
    let mut curve = Vec::with_capacity(ks.len());
    for &k in ks {
        curve.push((k, classify_convergence(k, p)?.predicted_cbr));
    }
    Ok(curve)
}
