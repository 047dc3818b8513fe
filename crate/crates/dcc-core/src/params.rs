//! Parameter sets for the adaptive DCC control law.
//!
//! [`DccParams`] holds the constants of the single-gain controller and the
//! shared clamps; [`DualAlphaParams`] adds the gains of the dual-gain variant.
//! Defaults are the standard profile values used throughout the crate's
//! reference reproductions.

use core::fmt;

/// Control constants of the adaptive DCC algorithm.
///
/// All duty-cycle quantities are channel-time fractions in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct DccParams {
    /// Decay gain applied to the previous duty cycle each step, in (0, 1).
    pub alpha: f64,
    /// Proportional gain converting a CBR error into a duty-cycle offset, > 0.
    pub beta: f64,
    /// Channel busy ratio the loop regulates towards, in (0, 1].
    pub cbr_target: f64,
    /// Upper duty-cycle bound, in (0, 1].
    pub delta_max: f64,
    /// Lower duty-cycle bound, strictly positive and below `delta_max`.
    pub delta_min: f64,
    /// Cap on a positive per-step offset, > 0.
    pub g_plus_max: f64,
    /// Cap on a negative per-step offset, < 0.
    pub g_minus_min: f64,
}

impl Default for DccParams {
    fn default() -> Self {
        Self {
            alpha: 0.016,
            beta: 0.0012,
            cbr_target: 0.68,
            delta_max: 0.03,
            delta_min: 0.0006,
            g_plus_max: 0.0005,
            g_minus_min: -0.00025,
        }
    }
}

impl DccParams {
    /// Checks that every field is finite and the set is mutually consistent.
    pub fn validate(&self) -> Result<(), ParamError> {
        let invalid = |name, reason| Err(ParamError::Invalid { name, reason });
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return invalid("alpha", "must lie in (0, 1)");
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return invalid("beta", "must be positive and finite");
        }
        if !(self.cbr_target > 0.0 && self.cbr_target <= 1.0) {
            return invalid("cbr_target", "must lie in (0, 1]");
        }
        if !(self.delta_min > 0.0) {
            return invalid("delta_min", "must be positive");
        }
        if !(self.delta_max > self.delta_min && self.delta_max <= 1.0) {
            return invalid("delta_max", "must lie in (delta_min, 1]");
        }
        if !(self.g_plus_max > 0.0 && self.g_plus_max.is_finite()) {
            return invalid("g_plus_max", "must be positive and finite");
        }
        if !(self.g_minus_min < 0.0 && self.g_minus_min.is_finite()) {
            return invalid("g_minus_min", "must be negative and finite");
        }
        Ok(())
    }

    /// Sets a field by name; used for command-line overrides.
    ///
    /// Accepted names are the struct field names. The value is stored as
    /// given; call [`DccParams::validate`] after the last override.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), ParamError> {
        match name {
            "alpha" => self.alpha = value,
            "beta" => self.beta = value,
            "cbr_target" => self.cbr_target = value,
            "delta_max" => self.delta_max = value,
            "delta_min" => self.delta_min = value,
            "g_plus_max" => self.g_plus_max = value,
            "g_minus_min" => self.g_minus_min = value,
            _ => return Err(ParamError::UnknownParameter),
        }
        Ok(())
    }

    /// Names accepted by [`DccParams::set`].
    pub const fn field_names() -> &'static [&'static str] {
        &[
            "alpha",
            "beta",
            "cbr_target",
            "delta_max",
            "delta_min",
            "g_plus_max",
            "g_minus_min",
        ]
    }
}

/// Gains of the dual-gain variant.
///
/// The controller uses `alpha_high` for a step in which the duty cycle would
/// fall by more than `th` under `alpha_low`, and `alpha_low` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct DualAlphaParams {
    /// Decay gain used near steady state, in (0, 1).
    pub alpha_low: f64,
    /// Decay gain used while the duty cycle is falling, in (`alpha_low`, 1).
    pub alpha_high: f64,
    /// Per-step duty-cycle drop above which `alpha_high` is selected, >= 0.
    pub th: f64,
}

impl Default for DualAlphaParams {
    fn default() -> Self {
        Self {
            alpha_low: 0.016,
            alpha_high: 0.1,
            th: 0.00001,
        }
    }
}

impl DualAlphaParams {
    /// Checks that every field is finite and the set is mutually consistent.
    pub fn validate(&self) -> Result<(), ParamError> {
        let invalid = |name, reason| Err(ParamError::Invalid { name, reason });
        if !(self.alpha_low > 0.0 && self.alpha_low < 1.0) {
            return invalid("alpha_low", "must lie in (0, 1)");
        }
        if !(self.alpha_high > self.alpha_low && self.alpha_high < 1.0) {
            return invalid("alpha_high", "must lie in (alpha_low, 1)");
        }
        if !(self.th >= 0.0 && self.th.is_finite()) {
            return invalid("th", "must be non-negative and finite");
        }
        Ok(())
    }

    /// Sets a field by name; used for command-line overrides.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), ParamError> {
        match name {
            "alpha_low" => self.alpha_low = value,
            "alpha_high" => self.alpha_high = value,
            "th" => self.th = value,
            _ => return Err(ParamError::UnknownParameter),
        }
        Ok(())
    }

    /// Names accepted by [`DualAlphaParams::set`].
    pub const fn field_names() -> &'static [&'static str] {
        &["alpha_low", "alpha_high", "th"]
    }
}

/// Error produced by parameter validation or named assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamError {
    /// A field violates its documented range or a cross-field constraint.
    Invalid {
        /// Field at fault.
        name: &'static str,
        /// Constraint it violates.
        reason: &'static str,
    },
    /// `set` was called with a name matching no field.
    UnknownParameter,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::Invalid { name, reason } => write!(f, "{name}: {reason}"),
            ParamError::UnknownParameter => write!(f, "unknown parameter name"),
        }
    }
}

impl core::error::Error for ParamError {}
