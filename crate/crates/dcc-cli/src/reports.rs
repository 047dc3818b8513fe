//! Report subcommands: table reproductions, curve data, and the analyzer.
//!
//! The table commands print one line per check with the reference value,
//! the measured value, the absolute difference, and PASS or FAIL under the
//! same tolerances the acceptance tests pin. A failed check does not change
//! the exit code; the report itself is the product.

use std::fmt::Write as _;
use std::path::Path;

use dcc_core::analysis::{capacity_threshold, cbr_convergence_curve, classify_convergence, conv_value};
use dcc_core::control::Variant;
use dcc_core::engine::run;
use dcc_core::metrics::{merge_metrics, time_below_target};
use dcc_core::params::DualAlphaParams;
use dcc_core::reference::{
    within, COLD_START, FP_SLACK, MERGE_DUAL, MERGE_ETSI, TOL_JAIN, TOL_TIME_BELOW_S, TOL_T_CONV_S,
};
use dcc_core::scenario::{cold_start_scenario, larger_group, merge_scenario};
use dcc_core::DccParams;

use crate::config::{effective_params, parse_set_args};
use crate::output::write_out;
use crate::CliError;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Prints one comparison line; returns the signed deviation.
fn print_check(label: &str, reference: f64, measured: f64, tol: f64) -> f64 {
    let diff = measured - reference;
    println!(
        "  {label}: reference {reference} measured {measured:.4} diff {:.4} {}",
        diff.abs(),
        verdict(within(measured, reference, tol))
    );
    diff
}

/// Cold-start convergence times for both variants against the reference
/// column, plus the halving claim on the measured columns.
pub fn table3() -> Result<(), CliError> {
    let p = DccParams::default();
    let dual = Variant::DualAlpha(DualAlphaParams::default());
    println!("cold-start convergence: time for smoothed CBR to first drop below {}", p.cbr_target);
    let mut halved = true;
    for row in COLD_START {
        let spec = cold_start_scenario(row.k, &p);
        let te = time_below_target(&run(&spec, &p, Variant::Etsi, 20.0, None).unwrap(), p.cbr_target, 0.0)
            .expect("crossing within the run");
        let td = time_below_target(&run(&spec, &p, dual, 20.0, None).unwrap(), p.cbr_target, 0.0)
            .expect("crossing within the run");
        print_check(&format!("k={} etsi time-below-target (s)", row.k), row.etsi_s, te, TOL_TIME_BELOW_S);
        print_check(&format!("k={} dual time-below-target (s)", row.k), row.dual_s, td, TOL_TIME_BELOW_S);
        println!("  k={} dual/etsi ratio: {:.3}", row.k, td / te);
        halved &= td <= 0.5 * te + FP_SLACK;
    }
    println!("dual time <= 0.5 x etsi time at every k: {}", verdict(halved));
    Ok(())
}

/// Merge fairness and convergence metrics for both variants against the
/// reference columns, with a note when a whole column deviates one way.
pub fn table4() -> Result<(), CliError> {
    let p = DccParams::default();
    println!("merge of 25 stations into a converged group of k: JI-10s, t-conv, time-below-target");
    let mut columns: [(&str, f64, Vec<f64>); 6] = [
        ("etsi JI-10s", TOL_JAIN, Vec::new()),
        ("etsi t-conv", TOL_T_CONV_S, Vec::new()),
        ("etsi time-below-target", TOL_TIME_BELOW_S, Vec::new()),
        ("dual JI-10s", TOL_JAIN, Vec::new()),
        ("dual t-conv", TOL_T_CONV_S, Vec::new()),
        ("dual time-below-target", TOL_TIME_BELOW_S, Vec::new()),
    ];
    for (etsi_row, dual_row) in MERGE_ETSI.iter().zip(MERGE_DUAL.iter()) {
        let k = etsi_row.k_large;
        let spec = merge_scenario(25, k, 0.0);
        let big = larger_group(&spec).unwrap();
        let center = classify_convergence((25 + k) as f64, &p)
            .unwrap()
            .delta_conv
            .unwrap();
        let variants = [
            (0, "etsi", Variant::Etsi, etsi_row),
            (3, "dual", Variant::DualAlpha(DualAlphaParams::default()), dual_row),
        ];
        for (col, name, variant, row) in variants {
            let series = run(&spec, &p, variant, 40.0, None).unwrap();
            let m = merge_metrics(&series, big, center, 0.0, &p).unwrap();
            columns[col]
                .2
                .push(print_check(&format!("k={k} {name} JI-10s"), row.jain_10s, m.jain_at, TOL_JAIN));
            columns[col + 1].2.push(match m.t_conv {
                Some(t) => print_check(&format!("k={k} {name} t-conv (s)"), row.t_conv_s, t, TOL_T_CONV_S),
                None => {
                    println!("  k={k} {name} t-conv (s): reference {} measured not-reached FAIL", row.t_conv_s);
                    f64::INFINITY
                }
            });
            columns[col + 2].2.push(match m.t_below_target {
                Some(t) => print_check(
                    &format!("k={k} {name} time-below-target (s)"),
                    row.t_below_s,
                    t,
                    TOL_TIME_BELOW_S,
                ),
                None => {
                    println!(
                        "  k={k} {name} time-below-target (s): reference {} measured not-reached FAIL",
                        row.t_below_s
                    );
                    f64::INFINITY
                }
            });
        }
    }
    for (name, tol, diffs) in &columns {
        let beyond = diffs.iter().all(|d| d.abs() > tol + FP_SLACK);
        let same_sign = diffs.iter().all(|d| *d > 0.0) || diffs.iter().all(|d| *d < 0.0);
        if beyond && same_sign {
            println!(
                "note: systematic {name} offset beyond tolerance across all rows; \
                 this indicates a channel-model discrepancy, not a measurement fluke"
            );
        }
    }
    Ok(())
}

/// Predicted steady-state CBR over station counts for the low and high
/// smoothing gains, as plot-ready CSV.
pub fn fig1(out: Option<&Path>) -> Result<(), CliError> {
    let small = DccParams::default();
    let mut large = small;
    large.alpha = 0.1;
    let ks: Vec<f64> = (1..=1400).map(|k| k as f64).collect();
    let curve_small = cbr_convergence_curve(&ks, &small).unwrap();
    let curve_large = cbr_convergence_curve(&ks, &large).unwrap();

    let cell = |v: Option<f64>| v.map(|c| c.to_string()).unwrap_or_default();
    let mut body = String::from("k,cbr_alpha_0.016,cbr_alpha_0.1\n");
    for (i, &k) in ks.iter().enumerate() {
        let _ = writeln!(
            body,
            "{},{},{}",
            k as usize,
            cell(curve_small[i].1),
            cell(curve_large[i].1)
        );
    }
    write_out(out, &body)
}

/// Closed-form analysis of one station count: convergence value, regime,
/// predicted channel load, and the capacity threshold.
pub fn analyze(k: f64, set: &[String]) -> Result<(), CliError> {
    let sets = parse_set_args(set)?;
    let (params, _) = effective_params(None, &sets)?;
    let conv = conv_value(k, &params).map_err(|e| CliError::Config(e.to_string()))?;
    let result = classify_convergence(k, &params).map_err(|e| CliError::Config(e.to_string()))?;
    println!("k: {k}");
    println!("conv_value: {conv}");
    println!("regime: {}", result.kind);
    match result.delta_conv {
        Some(d) => println!("delta_conv: {d}"),
        None => println!("delta_conv: none (convergence not guaranteed)"),
    }
    match result.predicted_cbr {
        Some(c) => println!("predicted_cbr: {c}"),
        None => println!("predicted_cbr: none"),
    }
    println!("capacity_threshold: {}", capacity_threshold(&params));
    Ok(())
}
