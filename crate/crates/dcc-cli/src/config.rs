//! Scenario sources and parameter overrides.
//!
//! A scenario argument is either a built-in name (`cold<K>` for K stations
//! starting at the maximum duty cycle, `merge25x<K>` for the merge of 25
//! stations with a converged group of K) or the path of a JSON file.
//! `--set name=value` overrides apply on top of the scenario's own
//! parameter block, and built-ins are constructed with the overrides
//! already in force so `cold<K>` honors a changed `delta_max`.

use std::fs;
use std::io::ErrorKind;
use std::path::PathBuf;

use dcc_core::params::{DccParams, DualAlphaParams, ParamError};
use dcc_core::scenario::{cold_start_scenario, merge_scenario, ScenarioSpec};

use crate::CliError;

/// A scenario plus the parameter sets in force for it.
pub struct LoadedScenario {
    /// The scenario, not yet resolved.
    pub spec: ScenarioSpec,
    /// Controller parameters: scenario block plus `--set` overrides.
    pub params: DccParams,
    /// Dual-gain parameters: defaults plus `--set` overrides.
    pub dual: DualAlphaParams,
}

enum Builtin {
    Cold(usize),
    Merge25(usize),
}

fn parse_builtin(source: &str) -> Option<Builtin> {
    let count = |rest: &str| rest.parse::<usize>().ok().filter(|k| *k >= 1);
    if let Some(rest) = source.strip_prefix("merge25x") {
        return count(rest).map(Builtin::Merge25);
    }
    if let Some(rest) = source.strip_prefix("cold") {
        return count(rest).map(Builtin::Cold);
    }
    None
}

/// Parses repeatable `name=value` override arguments.
pub fn parse_set_args(args: &[String]) -> Result<Vec<(String, f64)>, CliError> {
    args.iter()
        .map(|arg| {
            let (name, value) = arg.split_once('=').ok_or_else(|| {
                CliError::Config(format!("--set expects PARAM=VALUE, got `{arg}`"))
            })?;
            let parsed: f64 = value.trim().parse().map_err(|_| {
                CliError::Config(format!(
                    "--set {}: `{}` is not a number",
                    name.trim(),
                    value.trim()
                ))
            })?;
            Ok((name.trim().to_string(), parsed))
        })
        .collect()
}

/// Applies overrides to `base` (or the defaults) and validates the result.
///
/// Each name is routed to whichever parameter set defines it; the two sets
/// have disjoint field names.
pub fn effective_params(
    base: Option<DccParams>,
    sets: &[(String, f64)],
) -> Result<(DccParams, DualAlphaParams), CliError> {
    let mut params = base.unwrap_or_default();
    let mut dual = DualAlphaParams::default();
    for (name, value) in sets {
        if params.set(name, *value) == Err(ParamError::UnknownParameter)
            && dual.set(name, *value) == Err(ParamError::UnknownParameter)
        {
            return Err(CliError::Config(format!(
                "unknown parameter `{name}`; control parameters: {}; dual-gain parameters: {}",
                DccParams::field_names().join(", "),
                DualAlphaParams::field_names().join(", ")
            )));
        }
    }
    params
        .validate()
        .map_err(|e| CliError::Config(format!("invalid parameters: {e}")))?;
    dual.validate()
        .map_err(|e| CliError::Config(format!("invalid parameters: {e}")))?;
    Ok((params, dual))
}

/// Loads a built-in or file scenario with the overrides in force.
///
/// A missing file is a configuration error (the argument named nothing
/// runnable); any other read failure is an I/O error.
pub fn load_scenario(source: &str, sets: &[(String, f64)]) -> Result<LoadedScenario, CliError> {
    if let Some(builtin) = parse_builtin(source) {
        let (params, dual) = effective_params(None, sets)?;
        let spec = match builtin {
            Builtin::Cold(k) => cold_start_scenario(k, &params),
            Builtin::Merge25(k) => merge_scenario(25, k, 0.0),
        };
        return Ok(LoadedScenario { spec, params, dual });
    }

    let path = PathBuf::from(source);
    let text = fs::read_to_string(&path).map_err(|e| {
        if e.kind() == ErrorKind::NotFound {
            CliError::Config(format!(
                "`{source}` is neither a built-in scenario (cold<K>, merge25x<K>) nor a readable file"
            ))
        } else {
            CliError::Io { path: path.clone(), source: e }
        }
    })?;
    let spec: ScenarioSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("scenario file {}: {e}", path.display())))?;
    let (params, dual) = effective_params(spec.params, sets)?;
    Ok(LoadedScenario { spec, params, dual })
}
