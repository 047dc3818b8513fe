//! Declarative run descriptions: station groups, start conditions, timing.
//!
//! A [`ScenarioSpec`] says who is on the channel, when they appear, and at
//! which duty cycle they start. Construction helpers cover the two standard
//! experiments (a cold start from `delta_max` and the merge of two
//! separately converged groups); [`resolve`] turns symbolic start values
//! into numbers and bounds-checks the result so the engine only ever sees
//! fully numeric specs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::analysis::conv_value;
use crate::params::{DccParams, ParamError};

#[cfg(feature = "serde")]
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Duration used by the built-in scenarios, long enough for every reference
/// transient (the slowest is around 22 s) to finish well before the end.
const BUILTIN_DURATION_S: f64 = 40.0;

/// Which control law a scenario runs by default.
///
/// Serialized as the lowercase strings `"etsi"` and `"dual"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Algorithm {
    /// Single-gain law.
    Etsi,
    /// Dual-gain law.
    Dual,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Etsi => "etsi",
            Algorithm::Dual => "dual",
        })
    }
}

impl core::str::FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, UnknownAlgorithm> {
        match s {
            "etsi" => Ok(Algorithm::Etsi),
            "dual" => Ok(Algorithm::Dual),
            _ => Err(UnknownAlgorithm),
        }
    }
}

/// Error returned when parsing an [`Algorithm`] from a string fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownAlgorithm;

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown algorithm: expected \"etsi\" or \"dual\"")
    }
}

impl core::error::Error for UnknownAlgorithm {}

/// A group's starting duty cycle.
///
/// In scenario files this is either a plain number or the string
/// `"converged"`, which [`resolve`] replaces with the group's standalone
/// fixed-point duty cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialDelta {
    /// Explicit starting duty cycle.
    Fixed(f64),
    /// Placeholder for the group's own fixed point, resolved later.
    Converged,
}

#[cfg(feature = "serde")]
impl Serialize for InitialDelta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            InitialDelta::Fixed(v) => s.serialize_f64(*v),
            InitialDelta::Converged => s.serialize_str("converged"),
        }
    }
}

#[cfg(feature = "serde")]
impl<'de> Deserialize<'de> for InitialDelta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Visitor;

        impl<'de> de::Visitor<'de> for Visitor {
            type Value = InitialDelta;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a duty-cycle number or the string \"converged\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<InitialDelta, E> {
                Ok(InitialDelta::Fixed(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<InitialDelta, E> {
                Ok(InitialDelta::Fixed(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<InitialDelta, E> {
                Ok(InitialDelta::Fixed(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<InitialDelta, E> {
                if v == "converged" {
                    Ok(InitialDelta::Converged)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(Visitor)
    }
}

/// One homogeneous group of stations.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct GroupSpec {
    /// Number of stations, at least 1.
    pub count: usize,
    /// Starting duty cycle for every station in the group.
    pub initial_delta: InitialDelta,
    /// Time in seconds at which the group appears on the channel.
    #[cfg_attr(feature = "serde", serde(default))]
    pub join_time: f64,
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ScenarioSpec {
    /// Station groups, in a fixed order that group indices refer to.
    pub groups: Vec<GroupSpec>,
    /// Default run length in seconds; front ends may override it.
    pub duration: f64,
    /// Default control law; front ends may override it.
    pub algorithm: Algorithm,
    /// Optional controller-parameter override carried with the scenario.
    /// Consumers decide how it combines with their own configuration; the
    /// functions in this module only use the parameter set they are handed.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub params: Option<DccParams>,
}

impl ScenarioSpec {
    /// Total station count across all groups.
    pub fn total_stations(&self) -> usize {
        self.groups.iter().map(|g| g.count).sum()
    }
}

/// Index of the group with the greatest station count; ties go to the
/// earliest group. `None` when the scenario has no groups.
pub fn larger_group(spec: &ScenarioSpec) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (i, g) in spec.groups.iter().enumerate() {
        if best.map_or(true, |(_, c)| g.count > c) {
            best = Some((i, g.count));
        }
    }
    best.map(|(i, _)| i)
}

/// A [`resolve`] result: the fully numeric spec plus any clamping notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    /// Spec with every `initial_delta` turned into an in-bounds number.
    pub spec: ScenarioSpec,
    /// Human-readable notes, one per clamped start value.
    pub warnings: Vec<String>,
}

/// Rejected scenario configurations.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioError {
    /// The group list is empty.
    NoGroups,
    /// A group has a station count of zero.
    ZeroCount {
        /// Index of the offending group.
        group: usize,
    },
    /// A fixed starting duty cycle is NaN or infinite.
    NonFiniteDelta {
        /// Index of the offending group.
        group: usize,
    },
    /// A join time is negative, NaN, or infinite.
    BadJoinTime {
        /// Index of the offending group.
        group: usize,
    },
    /// The duration is not a positive finite number.
    BadDuration {
        /// The rejected value.
        value: f64,
    },
    /// The controller parameters failed validation.
    Params(ParamError),
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::NoGroups => f.write_str("scenario has no groups"),
            ScenarioError::ZeroCount { group } => {
                write!(f, "group {group}: count must be at least 1")
            }
            ScenarioError::NonFiniteDelta { group } => {
                write!(f, "group {group}: initial_delta must be finite")
            }
            ScenarioError::BadJoinTime { group } => {
                write!(f, "group {group}: join_time must be finite and non-negative")
            }
            ScenarioError::BadDuration { value } => {
                write!(f, "duration must be positive and finite, got {value}")
            }
            ScenarioError::Params(e) => write!(f, "invalid parameters: {e}"),
        }
    }
}

impl core::error::Error for ScenarioError {}

impl From<ParamError> for ScenarioError {
    fn from(e: ParamError) -> Self {
        ScenarioError::Params(e)
    }
}

/// Scenario for `k` stations that all start transmitting at the maximum
/// duty cycle at t = 0, the worst-case congestion onset.
pub fn cold_start_scenario(k: usize, p: &DccParams) -> ScenarioSpec {
    ScenarioSpec {
        groups: vec![GroupSpec {
            count: k,
            initial_delta: InitialDelta::Fixed(p.delta_max),
            join_time: 0.0,
        }],
        duration: BUILTIN_DURATION_S,
        algorithm: Algorithm::Etsi,
        params: None,
    }
}

/// Scenario for two groups that each converged on their own and then share
/// one channel.
///
/// Group 0 holds `k_small` stations and appears at `merge_time`; group 1
/// holds `k_large` stations and is present from t = 0. With `merge_time` of
/// zero both groups interact from the first tick; a positive `merge_time`
/// lets the larger group run alone first and injects the smaller one
/// mid-run. Both groups start at their standalone fixed points via
/// [`InitialDelta::Converged`].
pub fn merge_scenario(k_small: usize, k_large: usize, merge_time: f64) -> ScenarioSpec {
    ScenarioSpec {
        groups: vec![
            GroupSpec {
                count: k_small,
                initial_delta: InitialDelta::Converged,
                join_time: merge_time,
            },
            GroupSpec {
                count: k_large,
                initial_delta: InitialDelta::Converged,
                join_time: 0.0,
            },
        ],
        duration: BUILTIN_DURATION_S,
        algorithm: Algorithm::Etsi,
        params: None,
    }
}

/// Validates `spec` against `p` and replaces every symbolic start value
/// with a number.
///
/// `Converged` placeholders become the group's standalone fixed point.
/// Start values outside `[delta_min, delta_max]` are clamped to the nearest
/// bound, with one warning per clamp; everything else that is inconsistent
/// is an error. Resolving an already resolved spec returns it unchanged
/// with no warnings.
pub fn resolve(spec: &ScenarioSpec, p: &DccParams) -> Result<Resolution, ScenarioError> {
    p.validate()?;
    if spec.groups.is_empty() {
        return Err(ScenarioError::NoGroups);
    }
    if !(spec.duration.is_finite() && spec.duration > 0.0) {
        return Err(ScenarioError::BadDuration {
            value: spec.duration,
        });
    }

    let mut groups = Vec::with_capacity(spec.groups.len());
    let mut warnings = Vec::new();
    for (i, g) in spec.groups.iter().enumerate() {
        if g.count == 0 {
            return Err(ScenarioError::ZeroCount { group: i });
        }
        if !(g.join_time.is_finite() && g.join_time >= 0.0) {
            return Err(ScenarioError::BadJoinTime { group: i });
        }
        let requested = match g.initial_delta {
            InitialDelta::Fixed(v) => {
                if !v.is_finite() {
                    return Err(ScenarioError::NonFiniteDelta { group: i });
                }
                v
            }
            InitialDelta::Converged => conv_value(g.count as f64, p)
                .expect("count of at least 1 is in conv_value's domain"),
        };
        let delta = if requested > p.delta_max {
            warnings.push(format!(
                "group {i}: initial delta {requested} clamped to delta_max {}",
                p.delta_max
            ));
            p.delta_max
        } else if requested < p.delta_min {
            warnings.push(format!(
                "group {i}: initial delta {requested} clamped to delta_min {}",
                p.delta_min
            ));
            p.delta_min
        } else {
            requested
        };
        groups.push(GroupSpec {
            count: g.count,
            initial_delta: InitialDelta::Fixed(delta),
            join_time: g.join_time,
        });
    }

    Ok(Resolution {
        spec: ScenarioSpec {
            groups,
            duration: spec.duration,
            algorithm: spec.algorithm,
            params: spec.params,
        },
        warnings,
    })
}
