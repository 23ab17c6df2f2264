//! Deterministic report rendering.
//!
//! Key order is fixed by this module (not by a serializer's whims) and every
//! float is written with 17 significant digits, so identical `(config, seed)`
//! runs produce byte-identical files. Wall-clock bookkeeping never enters the
//! output.

use std::fmt::Write;

use qmetro_core::config::{ExperimentConfig, OutputFormat};
use qmetro_core::extension::{ExperimentReport, TrialRecord};
use qmetro_core::tol::Tolerances;

/// Fixed CSV column contract, one row per trial.
pub const CSV_HEADER: &str = "trial,d,dprime,scale,theta,c_orig,c_ext,c_eq22,margin,oracle_gap";

/// 17 significant digits: enough to round-trip any f64.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn float_list(xs: &[f64]) -> String {
    let entries: Vec<String> = xs.iter().map(|&x| float(x)).collect();
    format!("[{}]", entries.join(", "))
}

fn count_list(xs: &[usize]) -> String {
    let entries: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", entries.join(", "))
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn tolerances_json(tol: &Tolerances, indent: &str) -> String {
    let rows = [
        ("hermiticity_rel", float(tol.hermiticity_rel)),
        ("unitarity", float(tol.unitarity)),
        ("eig_residual", float(tol.eig_residual)),
        ("degenerate_gap", float(tol.degenerate_gap)),
        ("pure_norm", float(tol.pure_norm)),
        ("state_trace", float(tol.state_trace)),
        ("state_psd", float(tol.state_psd)),
        ("kraus_completeness", float(tol.kraus_completeness)),
        ("traceless", float(tol.traceless)),
        ("sld_cutoff_rel", float(tol.sld_cutoff_rel)),
        ("unitary_input", float(tol.unitary_input)),
        ("local_generator_residual", float(tol.local_generator_residual)),
        ("search_x_tol", float(tol.search_x_tol)),
        ("bracket_scale", float(tol.bracket_scale)),
        ("bures_dtheta", float(tol.bures_dtheta)),
        ("oracle_restarts", tol.oracle_restarts.to_string()),
        ("oracle_rel", float(tol.oracle_rel)),
        ("violation", float(tol.violation)),
        ("qfi_match", float(tol.qfi_match)),
        ("commuting_gate", float(tol.commuting_gate)),
        ("monotonicity_slack", float(tol.monotonicity_slack)),
        ("convexity_slack", float(tol.convexity_slack)),
        ("additivity_slack", float(tol.additivity_slack)),
    ];
    let body: Vec<String> = rows
        .iter()
        .map(|(key, value)| format!("{indent}  \"{key}\": {value}"))
        .collect();
    format!("{{\n{}\n{indent}}}", body.join(",\n"))
}

fn config_json(config: &ExperimentConfig, indent: &str) -> String {
    let rows = [
        ("mode", json_string(config.mode.as_str())),
        ("probe_dims", count_list(&config.probe_dims)),
        ("ancilla_dims", count_list(&config.ancilla_dims)),
        ("interaction_scales", float_list(&config.interaction_scales)),
        ("theta_range", float_list(&config.theta_range)),
        ("trials", config.trials.to_string()),
        ("master_seed", config.master_seed.to_string()),
        (
            "tolerances",
            tolerances_json(&config.tolerances, &format!("{indent}  ")),
        ),
        ("output_path", json_string(&config.output_path)),
        ("output_format", json_string(config.output_format.as_str())),
        (
            "interaction_mode",
            json_string(config.interaction_mode.as_str()),
        ),
    ];
    let body: Vec<String> = rows
        .iter()
        .map(|(key, value)| format!("{indent}  \"{key}\": {value}"))
        .collect();
    format!("{{\n{}\n{indent}}}", body.join(",\n"))
}

fn trial_json(record: &TrialRecord) -> String {
    format!(
        "{{\"trial\": {}, \"d\": {}, \"dprime\": {}, \"scale\": {}, \"theta\": {}, \
         \"c_orig\": {}, \"c_ext\": {}, \"c_eq22_ext\": {}, \"margin\": {}, \"oracle_gap\": {}}}",
        record.trial,
        record.d,
        record.dprime,
        float(record.scale),
        float(record.theta),
        float(record.c_orig),
        float(record.c_ext),
        float(record.c_eq22_ext),
        float(record.margin),
        float(record.oracle_gap),
    )
}

/// Full JSON document: top-level keys `config`, `master_seed`, `trials`,
/// `summary`, in that order, with a trailing newline.
pub fn render_json(report: &ExperimentReport) -> String {
    let trials: Vec<String> = report
        .trials
        .iter()
        .map(|record| format!("    {}", trial_json(record)))
        .collect();
    format!(
        "{{\n  \"config\": {},\n  \"master_seed\": {},\n  \"trials\": [\n{}\n  ],\n  \
         \"summary\": {{\n    \"trial_count\": {},\n    \"min_margin\": {},\n    \
         \"max_violation\": {},\n    \"mean_margin\": {}\n  }}\n}}\n",
        config_json(&report.config, "  "),
        report.master_seed,
        trials.join(",\n"),
        report.summary.trial_count,
        float(report.summary.min_margin),
        float(report.summary.max_violation),
        float(report.summary.mean_margin),
    )
}

/// CSV document: the fixed header plus one row per trial.
pub fn render_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in &report.trials {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            record.trial,
            record.d,
            record.dprime,
            float(record.scale),
            float(record.theta),
            float(record.c_orig),
            float(record.c_ext),
            float(record.c_eq22_ext),
            float(record.margin),
            float(record.oracle_gap),
        );
    }
    out
}

/// Renders in the format the config asks for.
pub fn render(report: &ExperimentReport) -> String {
    match report.config.output_format {
        OutputFormat::Json => render_json(report),
        OutputFormat::Csv => render_csv(report),
    }
}
