//! Time-series serialization and output sinks.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use dcc_core::TimeSeries;

use crate::CliError;

/// Renders a run as CSV with one row per tick.
///
/// Columns are `t,cbr_raw,cbr_s,jain` followed by `g<i>_mean,g<i>_min,
/// g<i>_max` for each group. Values print with the shortest digits that
/// round-trip, so reruns of the same scenario are byte-identical.
pub fn render_csv(series: &TimeSeries) -> String {
    let mut body = String::from("t,cbr_raw,cbr_s,jain");
    for gi in 0..series.group_count() {
        let _ = write!(body, ",g{gi}_mean,g{gi}_min,g{gi}_max");
    }
    body.push('\n');
    for tick in &series.ticks {
        let _ = write!(
            body,
            "{},{},{},{}",
            tick.t, tick.cbr_raw, tick.cbr_smoothed, tick.jain
        );
        for g in &tick.groups {
            let _ = write!(body, ",{},{},{}", g.mean, g.min, g.max);
        }
        body.push('\n');
    }
    body
}

/// Renders a run as pretty-printed JSON.
pub fn render_json(series: &TimeSeries) -> Result<String, CliError> {
    let mut body = serde_json::to_string_pretty(series)
        .map_err(|e| CliError::Config(format!("serializing run output: {e}")))?;
    body.push('\n');
    Ok(body)
}

/// Writes `body` to the given path, or to stdout when no path is given.
pub fn write_out(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            }),
    }
}
