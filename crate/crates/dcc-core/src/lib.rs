//! Deterministic discrete-time simulation and analysis of adaptive duty-cycle
//! congestion control for vehicular (V2X) channels.
//!
//! The crate models stations that share a radio channel and regulate their
//! transmit duty cycle from channel-busy-ratio (CBR) feedback, in the style of
//! the ETSI adaptive DCC gatekeeper (a LIMERIC-family linear controller). Two
//! variants are implemented: the standard single-gain law and a dual-gain
//! modification that decays faster while a station's duty cycle is falling.
//!
//! Module layout:
//!
//! - [`params`]: the control constants and their validation.
//! - [`control`]: the pure per-station update law.
//! - [`analysis`]: closed-form convergence values, regime classification, and
//!   the predicted steady-state CBR curve.
//! - [`engine`]: a synchronous multi-station simulator over an ideal
//!   airtime-aggregation channel, producing per-tick time series.
//! - [`metrics`]: Jain fairness index and convergence-time metrics.
//! - [`scenario`]: declarative scenario construction (cold start, group merge)
//!   and resolution of symbolic initial values.
//! - [`reference`]: bundled reference results and the tolerances used by the
//!   comparison reports.
//!
//! The crate is `no_std` (with `alloc`). Runs are bit-for-bit reproducible:
//! the same scenario, parameters, variant, and seed always produce the same
//! time series.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod control;
pub mod engine;
pub mod metrics;
pub mod params;
pub mod reference;
mod rng;
pub mod scenario;

pub use control::{step_station, CbrPair, StationState, Variant};
pub use engine::{run, TimeSeries};
pub use params::{DccParams, DualAlphaParams};

use core::fmt;

/// Error returned when a function argument lies outside its documented domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainError {
    /// Name of the rejected argument.
    pub name: &'static str,
    /// The offending value.
    pub value: f64,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "argument `{}` out of domain: {}", self.name, self.value)
    }
}

impl core::error::Error for DomainError {}
