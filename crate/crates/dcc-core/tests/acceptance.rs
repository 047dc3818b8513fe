//! Acceptance gate for the whole crate: one test per criterion.
//!
//! Each test prints one line per individual check (reference value,
//! measured value, absolute difference, PASS/FAIL) followed by a summary
//! line for the criterion, then fails if any check missed its tolerance.
//! Tolerances come from [`dcc_core::reference`] so the acceptance gate and
//! the command-line reports always apply the same bounds.

use dcc_core::analysis::{capacity_threshold, cbr_convergence_curve, classify_convergence, ConvergenceKind};
use dcc_core::control::{compute_offset, step_station, update_delta, CbrPair, StationState, Variant};
use dcc_core::engine::{run, NoiseConfig, TimeSeries};
use dcc_core::metrics::{jain_index, merge_metrics, time_below_target};
use dcc_core::params::{DccParams, DualAlphaParams};
use dcc_core::reference::{
    within, COLD_START, FP_SLACK, MERGE_DUAL, MERGE_ETSI, RATIO_MAX, RATIO_MIN, TOL_JAIN,
    TOL_STEADY_REL, TOL_TIME_BELOW_S, TOL_T_CONV_S,
};
use dcc_core::scenario::{
    cold_start_scenario, larger_group, merge_scenario, Algorithm, GroupSpec, InitialDelta,
    ScenarioSpec,
};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn p() -> DccParams {
    DccParams::default()
}

fn dual() -> Variant {
    Variant::DualAlpha(DualAlphaParams::default())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Prints one comparison line and records the failure if out of tolerance.
fn check(failures: &mut Vec<String>, label: &str, reference: f64, measured: f64, tol: f64) -> f64 {
    let diff = measured - reference;
    let ok = within(measured, reference, tol);
    println!(
        "  {label}: reference {reference} measured {measured:.4} diff {:.4} {}",
        diff.abs(),
        verdict(ok)
    );
    if !ok {
        failures.push(format!(
            "{label}: reference {reference} measured {measured} diff {}",
            diff.abs()
        ));
    }
    diff
}

fn summarize(criterion: &str, failures: Vec<String>) {
    println!(
        "criterion {criterion}: {}",
        if failures.is_empty() {
            "PASS".to_string()
        } else {
            format!("FAIL ({} checks out of tolerance)", failures.len())
        }
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_1_cold_start_convergence_times() {
    let p = p();
    let mut failures = Vec::new();
    for row in COLD_START {
        let spec = cold_start_scenario(row.k, &p);
        let etsi = run(&spec, &p, Variant::Etsi, 20.0, None).unwrap();
        let dual = run(&spec, &p, dual(), 20.0, None).unwrap();
        let te = time_below_target(&etsi, p.cbr_target, 0.0).expect("crossing within the run");
        let td = time_below_target(&dual, p.cbr_target, 0.0).expect("crossing within the run");
        check(
            &mut failures,
            &format!("k={} etsi time-below-target", row.k),
            row.etsi_s,
            te,
            TOL_TIME_BELOW_S,
        );
        check(
            &mut failures,
            &format!("k={} dual time-below-target", row.k),
            row.dual_s,
            td,
            TOL_TIME_BELOW_S,
        );
        let ratio = td / te;
        let ok = ratio >= RATIO_MIN - FP_SLACK && ratio <= RATIO_MAX + FP_SLACK;
        println!(
            "  k={} dual/etsi ratio: expected in [{RATIO_MIN}, {RATIO_MAX}] measured {ratio:.3} {}",
            row.k,
            verdict(ok)
        );
        if !ok {
            failures.push(format!("k={} ratio {ratio} outside [{RATIO_MIN}, {RATIO_MAX}]", row.k));
        }
    }
    summarize("1 (cold-start convergence times vs reference)", failures);
}

#[test]
fn criterion_2_merge_metrics_vs_reference() {
    let p = p();
    let mut failures = Vec::new();
    // Signed deviations per (variant, metric) column, for the systematic-
    // offset flag below.
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
        for (col_base, variant, row) in [(0, Variant::Etsi, etsi_row), (3, dual(), dual_row)] {
            let name = columns[col_base].0.split(' ').next().unwrap().to_string();
            let series = run(&spec, &p, variant, 40.0, None).unwrap();
            let m = merge_metrics(&series, big, center, 0.0, &p).unwrap();

            let d = check(
                &mut failures,
                &format!("k={k} {name} JI-10s"),
                row.jain_10s,
                m.jain_at,
                TOL_JAIN,
            );
            columns[col_base].2.push(d);

            let d = match m.t_conv {
                Some(t) => check(
                    &mut failures,
                    &format!("k={k} {name} t-conv"),
                    row.t_conv_s,
                    t,
                    TOL_T_CONV_S,
                ),
                None => {
                    println!("  k={k} {name} t-conv: reference {} measured not-reached FAIL", row.t_conv_s);
                    failures.push(format!("k={k} {name} t-conv not reached"));
                    f64::INFINITY
                }
            };
            columns[col_base + 1].2.push(d);

            let d = match m.t_below_target {
                Some(t) => check(
                    &mut failures,
                    &format!("k={k} {name} time-below-target"),
                    row.t_below_s,
                    t,
                    TOL_TIME_BELOW_S,
                ),
                None => {
                    println!("  k={k} {name} time-below-target: reference {} measured not-reached FAIL", row.t_below_s);
                    failures.push(format!("k={k} {name} time-below-target not reached"));
                    f64::INFINITY
                }
            };
            columns[col_base + 2].2.push(d);
        }
    }

    for (name, tol, diffs) in &columns {
        let beyond = diffs.iter().all(|d| d.abs() > tol + FP_SLACK);
        let same_sign = diffs.iter().all(|d| *d > 0.0) || diffs.iter().all(|d| *d < 0.0);
        if beyond && same_sign {
            println!(
                "  note: systematic {name} offset beyond tolerance across all rows; \
                 this indicates a channel-model discrepancy, not a measurement fluke"
            );
        }
    }

    summarize("2 (merge fairness and convergence vs reference)", failures);
}

#[test]
fn criterion_3_steady_state_matches_closed_form() {
    let p = p();
    let mut failures = Vec::new();
    for k in [25usize, 100, 300, 500, 700, 900, 1100] {
        let predicted = classify_convergence(k as f64, &p)
            .unwrap()
            .delta_conv
            .expect("these counts all converge");
        for (name, variant) in [("etsi", Variant::Etsi), ("dual", dual())] {
            let series = run(&cold_start_scenario(k, &p), &p, variant, 60.0, None).unwrap();
            let tail: Vec<f64> = series
                .ticks
                .iter()
                .filter(|r| r.t >= 55.0 - 1e-9)
                .map(|r| r.groups[0].mean)
                .collect();
            let mean = tail.iter().sum::<f64>() / tail.len() as f64;
            let rel = (mean - predicted).abs() / predicted;
            let ok = rel <= TOL_STEADY_REL + FP_SLACK;
            println!(
                "  k={k} {name} steady delta: predicted {predicted:.8} measured {mean:.8} rel {rel:.2e} {}",
                verdict(ok)
            );
            if !ok {
                failures.push(format!(
                    "k={k} {name} steady delta {mean} deviates {rel} from {predicted}"
                ));
            }
        }
    }
    summarize("3 (simulated steady state vs closed-form prediction)", failures);
}

#[test]
fn criterion_4_predicted_cbr_curve_shape() {
    let small = p();
    let mut large = p();
    large.alpha = 0.1;
    let cap = capacity_threshold(&small);
    // The pinned curve k * delta_min only crosses the target at
    // cbr_target / delta_min stations, a little past the pin threshold
    // itself, so the exceeds-target check starts there.
    let crossing = (small.cbr_target / small.delta_min).ceil() as usize;

    let ks: Vec<f64> = (1..=1400).map(|k| k as f64).collect();
    let curve_small = cbr_convergence_curve(&ks, &small).unwrap();
    let curve_large = cbr_convergence_curve(&ks, &large).unwrap();

    let mut failures = Vec::new();
    let mut both_interior = 0usize;
    let mut pinned = 0usize;
    for (i, &k) in ks.iter().enumerate() {
        let rs = classify_convergence(k, &small).unwrap();
        let rl = classify_convergence(k, &large).unwrap();
        let cs = curve_small[i].1;
        let cl = curve_large[i].1;
        if rs.kind == ConvergenceKind::Interior && rl.kind == ConvergenceKind::Interior {
            both_interior += 1;
            let (cs, cl) = (cs.unwrap(), cl.unwrap());
            if !(cs > cl) {
                failures.push(format!("k={k}: low-gain curve {cs} does not dominate {cl}"));
            }
            if cs > small.cbr_target + FP_SLACK || cl > small.cbr_target + FP_SLACK {
                failures.push(format!("k={k}: interior curve exceeds the target"));
            }
        }
        if k > cap {
            pinned += 1;
            let expected = (k * small.delta_min).min(1.0);
            if cs != Some(expected) {
                failures.push(format!("k={k}: pinned curve {cs:?} != k*delta_min {expected}"));
            }
            if k >= crossing as f64 && cs.unwrap() <= small.cbr_target {
                failures.push(format!("k={k}: pinned curve {cs:?} not above the target"));
            }
        }
    }
    println!(
        "  dominance and below-target hold at all {both_interior} counts where both curves are interior: {}",
        verdict(failures.is_empty())
    );
    println!(
        "  curve equals k*delta_min at all {pinned} counts past the capacity threshold ({cap:.1}), exceeding the target from k={crossing}: {}",
        verdict(failures.is_empty())
    );
    let at_1200 = curve_small[1199].1.unwrap();
    let ok = (at_1200 - 0.72).abs() < 1e-12;
    println!("  k=1200: reference 0.72 measured {at_1200} {}", verdict(ok));
    if !ok {
        failures.push(format!("k=1200 predicted CBR {at_1200} != 0.72"));
    }
    summarize("4 (predicted steady-state CBR curve shape)", failures);
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn prop_delta_clamping() -> Result<(), String> {
    let p = p();
    runner()
        .run(
            &(0.0f64..=0.06, -0.002f64..=0.002, 0.0001f64..=0.9999),
            |(prev, offset, alpha)| {
                let d = update_delta(prev, offset, alpha, &p);
                prop_assert!(d >= p.delta_min && d <= p.delta_max);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn prop_offset_bounds() -> Result<(), String> {
    let p = p();
    runner()
        .run(&(0.0f64..=1.0), |cbr_s| {
            let off = compute_offset(cbr_s, &p).unwrap();
            prop_assert!(off >= p.g_minus_min && off <= p.g_plus_max);
            if cbr_s < p.cbr_target {
                prop_assert!(off >= 0.0);
            } else {
                prop_assert!(off <= 0.0);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn prop_smoothing_convexity() -> Result<(), String> {
    runner()
        .run(
            &(0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0),
            |(prev, m, mp)| {
                let s = dcc_core::control::smooth_cbr(prev, CbrPair { cbr_m: m, cbr_m_p: mp })
                    .unwrap();
                let lo = prev.min(m).min(mp);
                let hi = prev.max(m).max(mp);
                prop_assert!(s >= lo && s <= hi);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn prop_jain_scale_invariance() -> Result<(), String> {
    runner()
        .run(
            &(
                proptest::collection::vec(1e-6f64..=0.05, 1..200),
                0.01f64..=100.0,
            ),
            |(deltas, c)| {
                let j = jain_index(&deltas).unwrap();
                let scaled: Vec<f64> = deltas.iter().map(|d| c * d).collect();
                let js = jain_index(&scaled).unwrap();
                prop_assert!((j - js).abs() <= 1e-9 * j.max(js));
                prop_assert!(j > 0.0 && j <= 1.0 + 1e-9);
                prop_assert!(j >= 1.0 / deltas.len() as f64 - 1e-12);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn prop_homogeneous_symmetry() -> Result<(), String> {
    let p = p();
    runner()
        .run(
            &(
                1usize..=200,
                0.0006f64..=0.03,
                any::<bool>(),
                0.4f64..=3.0,
            ),
            |(k, d0, use_dual, duration)| {
                let spec = ScenarioSpec {
                    groups: vec![GroupSpec {
                        count: k,
                        initial_delta: InitialDelta::Fixed(d0),
                        join_time: 0.0,
                    }],
                    duration,
                    algorithm: Algorithm::Etsi,
                    params: None,
                };
                let variant = if use_dual { dual() } else { Variant::Etsi };
                let series = run(&spec, &p, variant, duration, None).unwrap();
                for r in &series.ticks {
                    prop_assert_eq!(r.groups[0].min, r.groups[0].max);
                    prop_assert!((r.jain - 1.0).abs() < 1e-9);
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn prop_variant_equality_within_threshold() -> Result<(), String> {
    let p = p();
    let d = DualAlphaParams::default();
    // Smoothed CBR at most 0.28 keeps the offset at least
    // beta * (target - 0.28) = 0.00048 >= alpha_low * delta_max - th, so the
    // low-gain drop can never exceed the threshold and both variants must
    // take bit-identical steps.
    runner()
        .run(
            &(0.0006f64..=0.03, 0.0f64..=0.28),
            |(prev, cbr_s)| {
                let state = StationState {
                    delta: prev,
                    cbr_smoothed: cbr_s,
                    bootstrapped: true,
                };
                let pair = CbrPair {
                    cbr_m: cbr_s,
                    cbr_m_p: cbr_s,
                };
                let etsi = step_station(state, pair, &p, Variant::Etsi);
                let dual = step_station(state, pair, &p, Variant::DualAlpha(d));
                prop_assert!(prev - etsi.delta <= d.th);
                prop_assert_eq!(etsi, dual);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn prop_seeded_replay() -> Result<(), String> {
    let p = p();
    runner()
        .run(
            &(
                1usize..=100,
                0.0006f64..=0.03,
                0.0f64..=0.05,
                any::<u64>(),
                any::<bool>(),
                0.4f64..=2.0,
            ),
            |(k, d0, amplitude, seed, use_dual, duration)| {
                let spec = ScenarioSpec {
                    groups: vec![GroupSpec {
                        count: k,
                        initial_delta: InitialDelta::Fixed(d0),
                        join_time: 0.0,
                    }],
                    duration,
                    algorithm: Algorithm::Etsi,
                    params: None,
                };
                let variant = if use_dual { dual() } else { Variant::Etsi };
                let noise = Some(NoiseConfig { amplitude, seed });
                let a: TimeSeries = run(&spec, &p, variant, duration, noise).unwrap();
                let b: TimeSeries = run(&spec, &p, variant, duration, noise).unwrap();
                prop_assert_eq!(a, b);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

#[test]
fn criterion_5_randomized_invariants() {
    let props: Vec<(&str, Result<(), String>)> = vec![
        ("duty-cycle clamping", prop_delta_clamping()),
        ("offset bounds", prop_offset_bounds()),
        ("smoothing convexity", prop_smoothing_convexity()),
        ("fairness-index scale invariance", prop_jain_scale_invariance()),
        ("homogeneous symmetry", prop_homogeneous_symmetry()),
        ("variant equality under small drops", prop_variant_equality_within_threshold()),
        ("bit-identical seeded replay", prop_seeded_replay()),
    ];
    let mut failures = Vec::new();
    for (name, result) in props {
        match result {
            Ok(()) => println!("  property {name} (1000 cases): PASS"),
            Err(e) => {
                println!("  property {name}: FAIL");
                failures.push(format!("{name}: {e}"));
            }
        }
    }
    summarize("5 (randomized property suite)", failures);
}

#[test]
fn criterion_6_dual_fairness_dominance() {
    let p = p();
    let mut failures = Vec::new();
    for row in MERGE_ETSI {
        let k = row.k_large;
        let spec = merge_scenario(25, k, 0.0);
        let big = larger_group(&spec).unwrap();
        let center = classify_convergence((25 + k) as f64, &p)
            .unwrap()
            .delta_conv
            .unwrap();
        let ji = |variant| {
            let series = run(&spec, &p, variant, 40.0, None).unwrap();
            merge_metrics(&series, big, center, 0.0, &p).unwrap().jain_at
        };
        let etsi = ji(Variant::Etsi);
        let dual = ji(dual());
        let ok = dual >= etsi;
        println!("  k={k}: dual JI-10s {dual:.4} >= etsi JI-10s {etsi:.4} {}", verdict(ok));
        if !ok {
            failures.push(format!("k={k}: dual JI {dual} < etsi JI {etsi}"));
        }
    }
    summarize("6 (dual-gain fairness dominance)", failures);
}
