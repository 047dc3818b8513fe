//! Synchronous multi-station simulator over an ideal shared channel.
//!
//! Time advances in 100 ms ticks. Every tick the channel load is the capped
//! sum of the active stations' duty cycles; every second tick each station
//! that has seen two measurements runs one control update. Duty cycles set
//! by an update take effect on the channel from the following tick. The
//! whole run is sequential and deterministic, so identical inputs replay
//! bit-for-bit, including runs with seeded measurement noise.

use alloc::vec::Vec;
use core::fmt;

use crate::control::{step_station, CbrPair, StationState, Variant};
use crate::params::{DccParams, ParamError};
use crate::rng::SplitMix64;
use crate::scenario::{resolve, InitialDelta, ScenarioError, ScenarioSpec};

#[cfg(feature = "serde")]
use serde::Serialize;

/// Length of one simulation tick in seconds.
pub const TICK_SECONDS: f64 = 0.1;

/// Optional measurement-noise injection.
///
/// When configured, every station update perturbs the two CBR measurements
/// it consumes with independent uniform draws from
/// `[-amplitude, amplitude]`, clamping the results to [0, 1]. The draws
/// come from one seeded generator, so a given seed replays exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    /// Half-width of the uniform perturbation; 0 disables it in effect.
    pub amplitude: f64,
    /// Generator seed.
    pub seed: u64,
}

/// Duty-cycle summary of one group at one tick.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize))]
pub struct GroupStats {
    /// Mean duty cycle over the group's stations.
    pub mean: f64,
    /// Smallest duty cycle in the group.
    pub min: f64,
    /// Largest duty cycle in the group.
    pub max: f64,
}

/// Full channel and per-group state at one tick.
///
/// Values reflect the state after any update scheduled at this tick, except
/// `cbr_raw`, which is the load measured at the start of the tick and is
/// therefore what the updates themselves consumed.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize))]
pub struct TickRecord {
    /// Simulation time in seconds.
    pub t: f64,
    /// Channel load measured this tick: capped sum of active duty cycles.
    pub cbr_raw: f64,
    /// Noise-free smoothed CBR, maintained at the update cadence exactly as
    /// a station present from the start would compute it. Before the first
    /// update it mirrors `cbr_raw`.
    pub cbr_smoothed: f64,
    /// Jain fairness index over all active duty cycles; 1 when no station
    /// is active yet.
    pub jain: f64,
    /// Per-group duty-cycle summaries, indexed like the scenario's groups.
    /// A group that has not joined yet reports its resolved initial value.
    pub groups: Vec<GroupStats>,
}

/// A completed run: the parameters it used and one record per tick.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize))]
pub struct TimeSeries {
    /// Controller parameters the run used.
    pub params: DccParams,
    /// Records at t = 0.0, 0.1, ..., duration.
    pub ticks: Vec<TickRecord>,
}

impl TimeSeries {
    /// Number of groups each record carries.
    pub fn group_count(&self) -> usize {
        self.ticks.first().map_or(0, |r| r.groups.len())
    }
}

/// Rejected run configurations.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    /// The scenario failed validation or resolution.
    Scenario(ScenarioError),
    /// The variant's parameters failed validation.
    Params(ParamError),
    /// The requested duration is not a positive finite number.
    InvalidDuration {
        /// The rejected value.
        value: f64,
    },
    /// The noise amplitude is negative, NaN, or infinite.
    InvalidNoise {
        /// The rejected amplitude.
        amplitude: f64,
    },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Scenario(e) => write!(f, "invalid scenario: {e}"),
            EngineError::Params(e) => write!(f, "invalid variant parameters: {e}"),
            EngineError::InvalidDuration { value } => {
                write!(f, "duration must be positive and finite, got {value}")
            }
            EngineError::InvalidNoise { amplitude } => {
                write!(f, "noise amplitude must be finite and non-negative, got {amplitude}")
            }
        }
    }
}

impl core::error::Error for EngineError {}

impl From<ScenarioError> for EngineError {
    fn from(e: ScenarioError) -> Self {
        EngineError::Scenario(e)
    }
}

/// Channel load for one tick: the capped sum of the given duty cycles.
///
/// Models ideal airtime aggregation with no collision losses; any excess
/// over full occupancy is simply hidden by the cap.
pub fn measure_channel(deltas: &[f64]) -> f64 {
    deltas.iter().fold(0.0, |acc, d| acc + d).min(1.0)
}

#[derive(Clone, Copy)]
struct Slot {
    group: usize,
    join_tick: usize,
    state: StationState,
}

fn tick_index(seconds: f64) -> usize {
    (seconds * 10.0 + 0.5) as usize
}

/// Simulates `spec` for `duration` seconds under `variant` and `p`.
///
/// The scenario is resolved first (symbolic start values filled in,
/// out-of-range values clamped); callers that want the clamp warnings should
/// resolve beforehand and pass the resolved scenario, which resolves again
/// to itself. The explicit `duration` is used, not `spec.duration`, so front
/// ends can override the scenario default without rewriting it.
pub fn run(
    spec: &ScenarioSpec,
    p: &DccParams,
    variant: Variant,
    duration: f64,
    noise: Option<NoiseConfig>,
) -> Result<TimeSeries, EngineError> {
    if !(duration.is_finite() && duration > 0.0) {
        return Err(EngineError::InvalidDuration { value: duration });
    }
    if let Some(n) = &noise {
        if !(n.amplitude.is_finite() && n.amplitude >= 0.0) {
            return Err(EngineError::InvalidNoise {
                amplitude: n.amplitude,
            });
        }
    }
    if let Variant::DualAlpha(d) = &variant {
        d.validate().map_err(EngineError::Params)?;
    }
    let resolved = resolve(spec, p)?.spec;

    let initial: Vec<f64> = resolved
        .groups
        .iter()
        .map(|g| match g.initial_delta {
            InitialDelta::Fixed(v) => v,
            InitialDelta::Converged => unreachable!("resolve leaves only fixed values"),
        })
        .collect();

    // Stations sorted by join tick, preserving group order within a tick.
    let mut pending: Vec<Slot> = Vec::with_capacity(resolved.total_stations());
    for (gi, g) in resolved.groups.iter().enumerate() {
        let slot = Slot {
            group: gi,
            join_tick: tick_index(g.join_time),
            state: StationState::new(initial[gi]),
        };
        pending.extend(core::iter::repeat(slot).take(g.count));
    }
    pending.sort_by_key(|s| s.join_tick);

    let mut rng = noise.as_ref().map(|n| SplitMix64::new(n.seed));
    let amplitude = noise.map_or(0.0, |n| n.amplitude);

    let n_ticks = tick_index(duration);
    let mut ticks = Vec::with_capacity(n_ticks + 1);
    let mut active: Vec<Slot> = Vec::with_capacity(pending.len());
    let mut next_join = 0;
    let mut prev_raw = 0.0;
    let mut reference: Option<f64> = None;

    for i in 0..=n_ticks {
        while next_join < pending.len() && pending[next_join].join_tick <= i {
            active.push(pending[next_join]);
            next_join += 1;
        }

        let raw = active
            .iter()
            .fold(0.0, |acc, s| acc + s.state.delta)
            .min(1.0);

        if i >= 2 && i % 2 == 0 {
            let pair = CbrPair {
                cbr_m: raw,
                cbr_m_p: prev_raw,
            };
            reference = Some(match reference {
                None => pair.mean(),
                Some(r) => 0.5 * r + 0.5 * pair.mean(),
            });
            for slot in active.iter_mut() {
                // A station needs two measurements taken since it joined.
                if i >= slot.join_tick + 2 {
                    let seen = match rng.as_mut() {
                        Some(rng) => CbrPair {
                            cbr_m: (raw + rng.next_symmetric(amplitude)).clamp(0.0, 1.0),
                            cbr_m_p: (prev_raw + rng.next_symmetric(amplitude)).clamp(0.0, 1.0),
                        },
                        None => pair,
                    };
                    slot.state = step_station(slot.state, seen, p, variant);
                }
            }
        }

        let mut groups = Vec::with_capacity(resolved.groups.len());
        for gi in 0..resolved.groups.len() {
            let mut count = 0usize;
            let mut sum = 0.0;
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for s in active.iter().filter(|s| s.group == gi) {
                count += 1;
                sum += s.state.delta;
                min = min.min(s.state.delta);
                max = max.max(s.state.delta);
            }
            groups.push(if count == 0 {
                GroupStats {
                    mean: initial[gi],
                    min: initial[gi],
                    max: initial[gi],
                }
            } else {
                GroupStats {
                    mean: sum / count as f64,
                    min,
                    max,
                }
            });
        }

        let jain = if active.is_empty() {
            1.0
        } else {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for s in &active {
                sum += s.state.delta;
                sum_sq += s.state.delta * s.state.delta;
            }
            sum * sum / (active.len() as f64 * sum_sq)
        };

        ticks.push(TickRecord {
            t: i as f64 / 10.0,
            cbr_raw: raw,
            cbr_smoothed: reference.unwrap_or(raw),
            jain,
            groups,
        });
        prev_raw = raw;
    }

    Ok(TimeSeries { params: *p, ticks })
}
