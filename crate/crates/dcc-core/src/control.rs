//! The pure per-station control law.
//!
//! Every 200 ms a station smooths its last two 100 ms channel-busy
//! measurements, derives a bounded duty-cycle offset from the gap to the
//! target CBR, and applies a linear update with a decay gain. The dual-gain
//! variant swaps in a larger decay gain for steps in which the duty cycle
//! would fall by more than a threshold, which speeds up convergence from
//! over-allocation without disturbing steady state.
//!
//! All functions here are side-effect free and deterministic; identical
//! inputs produce bit-identical outputs.

use crate::params::{DccParams, DualAlphaParams};
use crate::DomainError;

/// The two most recent 100 ms channel-busy measurements feeding one update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbrPair {
    /// Most recent measurement, in [0, 1].
    pub cbr_m: f64,
    /// Measurement taken 100 ms before `cbr_m`, in [0, 1].
    pub cbr_m_p: f64,
}

impl CbrPair {
    /// Builds a pair after checking both measurements lie in [0, 1].
    pub fn new(cbr_m: f64, cbr_m_p: f64) -> Result<Self, DomainError> {
        check_unit("cbr_m", cbr_m)?;
        check_unit("cbr_m_p", cbr_m_p)?;
        Ok(Self { cbr_m, cbr_m_p })
    }

    /// Mean of the two measurements.
    pub fn mean(&self) -> f64 {
        (self.cbr_m + self.cbr_m_p) / 2.0
    }
}

/// One station's evolving controller memory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationState {
    /// Current allowed duty cycle, kept in [`delta_min`, `delta_max`].
    ///
    /// [`delta_min`]: DccParams::delta_min
    /// [`delta_max`]: DccParams::delta_max
    pub delta: f64,
    /// Smoothed CBR from the station's previous update, in [0, 1].
    pub cbr_smoothed: f64,
    /// True once the first smoothing step has run.
    ///
    /// While false, the next update seeds the smoothed CBR with the plain
    /// mean of the incoming pair instead of blending with `cbr_smoothed`,
    /// so a freshly started station carries no fictitious channel history.
    pub bootstrapped: bool,
}

impl StationState {
    /// A fresh station that has not yet observed the channel.
    pub fn new(initial_delta: f64) -> Self {
        Self {
            delta: initial_delta,
            cbr_smoothed: 0.0,
            bootstrapped: false,
        }
    }
}

/// Algorithm variant executed by [`step_station`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// Single-gain law: the decay gain is always [`DccParams::alpha`].
    Etsi,
    /// Dual-gain law: the decay gain is chosen per step by [`select_alpha`].
    DualAlpha(DualAlphaParams),
}

fn check_unit(name: &'static str, value: f64) -> Result<(), DomainError> {
    if value >= 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(DomainError { name, value })
    }
}

fn smooth_unchecked(prev: f64, pair: CbrPair) -> f64 {
    0.5 * prev + 0.5 * pair.mean()
}

/// Exponentially smooths the CBR: equal-weight blend of the previous
/// smoothed value and the mean of the two new measurements.
///
/// All inputs must lie in [0, 1]; the result then does too.
pub fn smooth_cbr(prev: f64, pair: CbrPair) -> Result<f64, DomainError> {
    check_unit("prev", prev)?;
    check_unit("cbr_m", pair.cbr_m)?;
    check_unit("cbr_m_p", pair.cbr_m_p)?;
    Ok(smooth_unchecked(prev, pair))
}

fn offset_unchecked(cbr_s: f64, p: &DccParams) -> f64 {
    if p.cbr_target > cbr_s {
        (p.beta * (p.cbr_target - cbr_s)).min(p.g_plus_max)
    } else {
        (p.beta * (p.cbr_target - cbr_s)).max(p.g_minus_min)
    }
}

/// Duty-cycle correction for one step: proportional to the gap between the
/// target and the smoothed CBR, capped at `g_plus_max` above and
/// `g_minus_min` below.
///
/// The result is positive exactly when `cbr_s` is below the target.
pub fn compute_offset(cbr_s: f64, p: &DccParams) -> Result<f64, DomainError> {
    check_unit("cbr_s", cbr_s)?;
    Ok(offset_unchecked(cbr_s, p))
}

/// Applies one linear duty-cycle update and the terminal clamp.
///
/// The unbounded value is `(1 - alpha) * prev_delta + offset`; anything at or
/// above `delta_max` maps to `delta_max`, anything at or below `delta_min`
/// maps to `delta_min`.
pub fn update_delta(prev_delta: f64, offset: f64, alpha: f64, p: &DccParams) -> f64 {
    let wb = (1.0 - alpha) * prev_delta + offset;
    if wb >= p.delta_max {
        p.delta_max
    } else if wb <= p.delta_min {
        p.delta_min
    } else {
        wb
    }
}

/// Chooses the decay gain for the dual-gain variant.
///
/// Evaluates the clamped low-gain update and returns `alpha_high` when it
/// would drop the duty cycle by strictly more than `th`, `alpha_low`
/// otherwise. Because the comparison uses the clamped value, a station
/// pinned at `delta_min` never selects the high gain.
pub fn select_alpha(prev_delta: f64, offset: f64, p: &DccParams, d: &DualAlphaParams) -> f64 {
    let delta_low = update_delta(prev_delta, offset, d.alpha_low, p);
    if prev_delta - delta_low > d.th {
        d.alpha_high
    } else {
        d.alpha_low
    }
}

/// Executes one full 200 ms update for a station.
///
/// Smooths the CBR (or seeds it, on the first update), computes the offset
/// from the new smoothed value, picks the gain according to `variant`, and
/// applies the clamped duty-cycle update.
pub fn step_station(
    state: StationState,
    pair: CbrPair,
    p: &DccParams,
    variant: Variant,
) -> StationState {
    let cbr_s = if state.bootstrapped {
        smooth_unchecked(state.cbr_smoothed, pair)
    } else {
        pair.mean()
    };
    let offset = offset_unchecked(cbr_s, p);
    let alpha = match variant {
        Variant::Etsi => p.alpha,
        Variant::DualAlpha(d) => select_alpha(state.delta, offset, p, &d),
    };
    StationState {
        delta: update_delta(state.delta, offset, alpha, p),
        cbr_smoothed: cbr_s,
        bootstrapped: true,
    }
}
