//! Experiment configuration shared by the library drivers and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// What a batch run certifies or computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Certify that extensions never beat the phase-shift channel QFI.
    VerifyTheorem,
    /// Closed-form channel QFI of one generator, cross-checked by the
    /// norm-minimization route.
    ChannelQfi,
    /// Randomized QFI property suites (monotonicity, unitary equality,
    /// convexity, additivity).
    Properties,
    /// Convergence of the Bures finite-difference QFI on known families.
    BuresCheck,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::VerifyTheorem => "verify-theorem",
            Mode::ChannelQfi => "channel-qfi",
            Mode::Properties => "properties",
            Mode::BuresCheck => "bures-check",
        }
    }
}

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// How interaction terms are drawn in verify-theorem trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionMode {
    /// GUE interaction on the joint space (generic case).
    Gue,
    /// Interaction commuting with the lifted generator (`G (x) R1 + I (x) R2`),
    /// for which the extension provably changes nothing and all margins are
    /// zero up to numerics.
    Commuting,
}

impl InteractionMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            InteractionMode::Gue => "gue",
            InteractionMode::Commuting => "commuting",
        }
    }
}

/// Full description of a batch run. Serializes to/from JSON with kebab-case
/// enum values; unknown keys are rejected and missing keys take defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Probe dimensions cycled over trials.
    pub probe_dims: Vec<usize>,
    /// Ancilla dimensions cycled over trials.
    pub ancilla_dims: Vec<usize>,
    /// Scales of the random interaction term.
    pub interaction_scales: Vec<f64>,
    /// Interval `[lo, hi]` from which theta is drawn.
    pub theta_range: [f64; 2],
    pub trials: u64,
    pub master_seed: u64,
    pub tolerances: Tolerances,
    pub output_path: String,
    pub output_format: OutputFormat,
    pub interaction_mode: InteractionMode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mode: Mode::VerifyTheorem,
            probe_dims: vec![2, 3],
            ancilla_dims: vec![2, 3],
            interaction_scales: vec![0.1, 1.0, 10.0],
            theta_range: [0.0, std::f64::consts::TAU],
            trials: 100,
            master_seed: 42,
            tolerances: Tolerances::default(),
            output_path: "qmetro-report.json".into(),
            output_format: OutputFormat::Json,
            interaction_mode: InteractionMode::Gue,
        }
    }
}

impl ExperimentConfig {
    /// Rejects configurations the drivers cannot run.
    pub fn validate(&self) -> Result<()> {
        if self.probe_dims.is_empty() {
            return Err(Error::InvalidConfig("probe_dims must be nonempty".into()));
        }
        if let Some(&d) = self.probe_dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidConfig(format!(
                "probe dimension {d} is below 2; phase estimation needs a qubit or larger"
            )));
        }
        if self.ancilla_dims.is_empty() {
            return Err(Error::InvalidConfig("ancilla_dims must be nonempty".into()));
        }
        if self.ancilla_dims.contains(&0) {
            return Err(Error::InvalidConfig(
                "ancilla dimension 0 is invalid; use 1 for a trivial ancilla".into(),
            ));
        }
        if self.interaction_scales.is_empty() {
            return Err(Error::InvalidConfig("interaction_scales must be nonempty".into()));
        }
        if let Some(&s) = self
            .interaction_scales
            .iter()
            .find(|&&s| !(s.is_finite() && s >= 0.0))
        {
            return Err(Error::InvalidConfig(format!(
                "interaction scale {s} must be finite and nonnegative"
            )));
        }
        let [lo, hi] = self.theta_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidConfig(format!(
                "theta range [{lo}, {hi}] must be finite with lo <= hi"
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.output_path.is_empty() {
            return Err(Error::InvalidConfig("output_path must be nonempty".into()));
        }
        let t = &self.tolerances;
        for (name, value) in [
            ("hermiticity_rel", t.hermiticity_rel),
            ("unitarity", t.unitarity),
            ("eig_residual", t.eig_residual),
            ("degenerate_gap", t.degenerate_gap),
            ("pure_norm", t.pure_norm),
            ("state_trace", t.state_trace),
            ("state_psd", t.state_psd),
            ("kraus_completeness", t.kraus_completeness),
            ("traceless", t.traceless),
            ("sld_cutoff_rel", t.sld_cutoff_rel),
            ("unitary_input", t.unitary_input),
            ("local_generator_residual", t.local_generator_residual),
            ("search_x_tol", t.search_x_tol),
            ("bracket_scale", t.bracket_scale),
            ("bures_dtheta", t.bures_dtheta),
            ("oracle_rel", t.oracle_rel),
            ("qfi_match", t.qfi_match),
            ("commuting_gate", t.commuting_gate),
            ("monotonicity_slack", t.monotonicity_slack),
            ("convexity_slack", t.convexity_slack),
            ("additivity_slack", t.additivity_slack),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "tolerance {name} = {value} must be finite and positive"
                )));
            }
        }
        if !(t.violation.is_finite() && t.violation >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance violation = {} must be finite and nonnegative",
                t.violation
            )));
        }
        Ok(())
    }
}
