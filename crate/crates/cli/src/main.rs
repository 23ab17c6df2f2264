//! Command-line front end: parse flags and config files, dispatch the
//! requested experiment, write a machine-readable report, and print a
//! one-line human summary.
//!
//! Exit codes: 0 when the run certifies, 1 when a certification fails
//! (an inequality violation beyond tolerance, a failed property suite, or a
//! broken convergence band), 2 on usage errors.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmetro_core::config::{ExperimentConfig, InteractionMode, Mode, OutputFormat};
use qmetro_core::extension::{
    run_bures_check, run_generator_analysis, run_qfi_properties, run_trials, ExperimentReport,
};
use qmetro_core::hermitian::HermitianOperator;
use qmetro_core::random::{random_hermitian, RngStream};

const EXIT_CERTIFIED: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qmetro",
    version,
    about = "Channel-QFI certification batches for phase-shift unitary families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that random Hamiltonian extensions never increase the
    /// channel QFI of the phase shift.
    VerifyTheorem(RunFlags),
    /// Closed-form channel QFI of one generator, cross-checked by the
    /// norm-minimization route.
    ChannelQfi {
        #[command(flatten)]
        flags: RunFlags,
        /// Generator literal: `diag:a,b,c`, `pauli:x|y|z`, or
        /// `gue:dim,scale,seed`.
        #[arg(long)]
        generator: String,
    },
    /// Run the QFI property suites: monotonicity, unitary equality,
    /// convexity, additivity.
    Properties(RunFlags),
    /// Check second-order convergence of the Bures finite-difference QFI
    /// against analytically solved families.
    BuresCheck(RunFlags),
}

#[derive(Args)]
struct RunFlags {
    /// JSON config file with ExperimentConfig field names; flags override
    /// its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of randomized trials (or cases per property suite).
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed; every trial draws from a substream keyed by it.
    #[arg(long)]
    seed: Option<u64>,
    /// Probe dimensions, comma-separated (e.g. 2,3,4).
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Ancilla dimensions, comma-separated.
    #[arg(long, value_delimiter = ',')]
    ancilla_dims: Option<Vec<usize>>,
    /// Interaction scales, comma-separated.
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<f64>>,
    /// Sampling range for theta as `lo,hi`.
    #[arg(long, value_delimiter = ',')]
    theta_range: Option<Vec<f64>>,
    /// Report path.
    #[arg(long)]
    out: Option<String>,
    /// Report format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Certification threshold on the worst inequality violation.
    #[arg(long)]
    tol: Option<f64>,
    /// Interaction ensemble for verify-theorem mode.
    #[arg(long, value_enum)]
    interaction_mode: Option<InteractionArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InteractionArg {
    Gue,
    Commuting,
}

impl From<InteractionArg> for InteractionMode {
    fn from(arg: InteractionArg) -> Self {
        match arg {
            InteractionArg::Gue => InteractionMode::Gue,
            InteractionArg::Commuting => InteractionMode::Commuting,
        }
    }
}

/// A terminal failure: message for stderr plus the process exit code.
struct Failure {
    message: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: EXIT_USAGE,
    }
}

fn certification(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: EXIT_VIOLATION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::VerifyTheorem(flags) => {
            run_verify(&effective_config(Mode::VerifyTheorem, &flags)?)
        }
        Command::ChannelQfi { flags, generator } => {
            let config = effective_config(Mode::ChannelQfi, &flags)?;
            run_channel_qfi(&config, &generator)
        }
        Command::Properties(flags) => run_properties(&effective_config(Mode::Properties, &flags)?),
        Command::BuresCheck(flags) => run_bures(&effective_config(Mode::BuresCheck, &flags)?),
    }
}

/// Defaults, then the config file, then flags — later layers win.
fn effective_config(mode: Mode, flags: &RunFlags) -> Result<ExperimentConfig, Failure> {
    let mut config = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                usage(format!("cannot read config file '{}': {e}", path.display()))
            })?;
            serde_json::from_str::<ExperimentConfig>(&text).map_err(|e| {
                usage(format!("malformed config file '{}': {e}", path.display()))
            })?
        }
        None => ExperimentConfig::default(),
    };
    config.mode = mode;
    if let Some(trials) = flags.trials {
        config.trials = trials;
    }
    if let Some(seed) = flags.seed {
        config.master_seed = seed;
    }
    if let Some(dims) = &flags.dims {
        config.probe_dims = dims.clone();
    }
    if let Some(dims) = &flags.ancilla_dims {
        config.ancilla_dims = dims.clone();
    }
    if let Some(scales) = &flags.scales {
        config.interaction_scales = scales.clone();
    }
    if let Some(range) = &flags.theta_range {
        if range.len() != 2 {
            return Err(usage(format!(
                "--theta-range needs exactly two values `lo,hi`, got {}",
                range.len()
            )));
        }
        config.theta_range = [range[0], range[1]];
    }
    if let Some(out) = &flags.out {
        config.output_path = out.clone();
    }
    if let Some(format) = flags.format {
        config.output_format = format.into();
    }
    if let Some(tol) = flags.tol {
        config.tolerances.violation = tol;
    }
    if let Some(mode) = flags.interaction_mode {
        config.interaction_mode = mode.into();
    }
    config
        .validate()
        .map_err(|e| usage(format!("invalid configuration: {e}")))?;
    Ok(config)
}

fn write_report(report: &ExperimentReport) -> Result<(), Failure> {
    let rendered = report::render(report);
    let path = &report.config.output_path;
    fs::write(path, rendered).map_err(|e| usage(format!("cannot write report to '{path}': {e}")))?;
    Ok(())
}

fn summary_line(mode: &str, report: &ExperimentReport, certified: bool) {
    let verdict = if certified { "certified" } else { "VIOLATION" };
    println!(
        "{mode}: {} trials, min margin {:.3e}, max violation {:.3e} — {verdict} (report: {})",
        report.summary.trial_count,
        report.summary.min_margin,
        report.summary.max_violation,
        report.config.output_path,
    );
}

fn run_verify(config: &ExperimentConfig) -> Result<u8, Failure> {
    let report = run_trials(config).map_err(|e| certification(format!("batch aborted: {e}")))?;
    write_report(&report)?;
    let certified = report.summary.max_violation <= config.tolerances.violation;
    summary_line("verify-theorem", &report, certified);
    Ok(if certified {
        EXIT_CERTIFIED
    } else {
        EXIT_VIOLATION
    })
}

fn run_properties(config: &ExperimentConfig) -> Result<u8, Failure> {
    let (report, verdicts) =
        run_qfi_properties(config).map_err(|e| certification(format!("suite aborted: {e}")))?;
    write_report(&report)?;
    for verdict in &verdicts {
        println!(
            "suite {}: {} cases, worst violation {:.3e} (slack {:.1e}) — {}",
            verdict.suite,
            verdict.cases,
            verdict.worst_violation,
            verdict.slack,
            if verdict.pass { "pass" } else { "FAIL" },
        );
    }
    let certified = verdicts.iter().all(|verdict| verdict.pass);
    summary_line("properties", &report, certified);
    Ok(if certified {
        EXIT_CERTIFIED
    } else {
        EXIT_VIOLATION
    })
}

fn run_bures(config: &ExperimentConfig) -> Result<u8, Failure> {
    let (report, checks) =
        run_bures_check(config).map_err(|e| certification(format!("check aborted: {e}")))?;
    write_report(&report)?;
    for check in &checks {
        println!(
            "family {} (reference QFI {:.16e}):",
            check.family, check.reference
        );
        println!("  dtheta      |estimate - reference|");
        for (dtheta, error) in check.dthetas.iter().zip(&check.errors) {
            println!("  {dtheta:<10.3e}  {error:.16e}");
        }
        let ratios: Vec<String> = check.ratios.iter().map(|r| format!("{r:.3}")).collect();
        println!(
            "  halving ratios [{}] (second order = 4) — {}",
            ratios.join(", "),
            if check.pass { "pass" } else { "FAIL" },
        );
    }
    let certified = checks.iter().all(|check| check.pass);
    summary_line("bures-check", &report, certified);
    Ok(if certified {
        EXIT_CERTIFIED
    } else {
        EXIT_VIOLATION
    })
}

fn run_channel_qfi(config: &ExperimentConfig, literal: &str) -> Result<u8, Failure> {
    let generator = parse_generator(literal)?;
    let analysis = run_generator_analysis(&generator, config)
        .map_err(|e| certification(format!("analysis aborted: {e}")))?;
    write_report(&analysis.report)?;
    println!(
        "channel QFI ({}): {:.16e}",
        analysis.closed_form.method.as_str(),
        analysis.closed_form.value,
    );
    if let Some(probe) = &analysis.closed_form.optimal_probe {
        println!("optimal probe amplitudes:");
        for amplitude in probe.amplitudes() {
            println!("  {:+.16e} {:+.16e}i", amplitude.re, amplitude.im);
        }
    }
    let minimizer = analysis
        .minimized
        .minimizer_x
        .map(|x| format!("{x:.16e}"))
        .unwrap_or_else(|| "none".into());
    println!(
        "cross-check ({}): {:.16e} at x* = {} — {}",
        analysis.minimized.method.as_str(),
        analysis.minimized.value,
        minimizer,
        if analysis.pass { "pass" } else { "FAIL" },
    );
    Ok(if analysis.pass {
        EXIT_CERTIFIED
    } else {
        EXIT_VIOLATION
    })
}

/// `diag:a,b,c`, `pauli:x|y|z`, or `gue:dim,scale,seed`.
fn parse_generator(literal: &str) -> Result<HermitianOperator, Failure> {
    let bad = || {
        usage(format!(
            "generator literal '{literal}' not understood; use diag:a,b,c, pauli:x|y|z, or gue:dim,scale,seed"
        ))
    };
    let (kind, rest) = literal.split_once(':').ok_or_else(bad)?;
    match kind {
        "diag" => {
            let entries: Vec<f64> = rest
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            if entries.is_empty() || entries.iter().any(|x| !x.is_finite()) {
                return Err(bad());
            }
            Ok(HermitianOperator::from_real_diag(&entries))
        }
        "pauli" => match rest {
            "x" => Ok(HermitianOperator::pauli_x()),
            "y" => Ok(HermitianOperator::pauli_y()),
            "z" => Ok(HermitianOperator::pauli_z()),
            _ => Err(bad()),
        },
        "gue" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let dim: usize = parts[0].trim().parse().map_err(|_| bad())?;
            let scale: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let seed: u64 = parts[2].trim().parse().map_err(|_| bad())?;
            if dim < 2 || !scale.is_finite() || scale < 0.0 {
                return Err(bad());
            }
            let mut rng = RngStream::new(seed).substream("generator", 0);
            Ok(random_hermitian(dim, scale, &mut rng))
        }
        _ => Err(bad()),
    }
}
