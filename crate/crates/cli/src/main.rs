//! `sdc` — command-line front end for the dense-coding simulator.
//!
//! Exit codes: 0 on success, 2 on usage errors (malformed flags), 1 on
//! computation or I/O errors.

mod commands;
mod hwfile;
mod record;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sdc_core::Message;

use record::RunRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "sdc",
    version,
    about = "Superdense coding over weakly polarized two-spin ensembles: \
             protocol simulation, magnetization statistics, and entanglement witnesses"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

fn parse_polarization(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
        return Err(format!("polarization {v} is outside [-1, 1]"));
    }
    Ok(v)
}

fn parse_bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("`{s}` is not a bit (use 0 or 1)")),
    }
}

/// Counts accept plain integers or integral scientific notation ("1e18").
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if f.is_finite() && (0.0..=u64::MAX as f64).contains(&f) && f.fract() == 0.0 {
        Ok(f as u64)
    } else {
        Err(format!("`{s}` is not a non-negative integer"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one molecule through entangle → encode → disentangle and
    /// report all four states plus the decoded magnetizations.
    Protocol {
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps_i: f64,
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps_s: f64,
        /// Phase bit of the encoded message.
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set)]
        z: bool,
        /// Flip bit of the encoded message.
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set)]
        x: bool,
    },

    /// Magnetization statistics over an n-molecule ensemble: analytic
    /// moments, error probabilities, and a seeded Monte Carlo run.
    Ensemble {
        /// Number of molecules (integral scientific notation accepted).
        #[arg(long, value_parser = parse_count)]
        n: u64,
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps_i: f64,
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps_s: f64,
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set)]
        z: bool,
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set)]
        x: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_count, default_value = "10000")]
        shots: u64,
    },

    /// Witness quantities for one polarization pair: ⟨W₁⟩, ⟨W₂⟩, F,
    /// success probability, and the partial-transpose check.
    Witness {
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps_i: f64,
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps_s: f64,
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set, default_value = "0")]
        z: bool,
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set, default_value = "0")]
        x: bool,
    },

    /// Sweep the polarization square and emit the F grid with its zero
    /// contour.
    WitnessSweep {
        /// Grid points per axis over [0, 1].
        #[arg(long, default_value_t = 101)]
        resolution: u32,
    },

    /// Decompose the conventional witness into magnetization measurements:
    /// coefficients, unitary, residuals, and the fixed-unitary
    /// contradiction table.
    Appendix {
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set)]
        z: bool,
        #[arg(long, value_parser = parse_bit, action = clap::ArgAction::Set)]
        x: bool,
        /// Random Bell-diagonal states to test the expectation equality on.
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Spectrometer sensitivity: signal per molecule, Nyquist noise, and
    /// the minimum detectable ensemble size.
    Hardware {
        /// Parameter file (key = value, SI units); falls back to the
        /// SDC_HARDWARE_PARAMS environment variable, then to bench defaults.
        #[arg(long, value_name = "FILE")]
        params: Option<PathBuf>,
        /// Coil volume override in cm³.
        #[arg(long)]
        coil_volume_cm3: Option<f64>,
        #[arg(long, value_parser = parse_polarization, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        snr_target: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let record = match cli.command {
        Command::Protocol { eps_i, eps_s, z, x } => {
            commands::protocol(eps_i, eps_s, Message::new(z, x))?
        }
        Command::Ensemble {
            n,
            eps_i,
            eps_s,
            z,
            x,
            seed,
            shots,
        } => commands::ensemble(n, eps_i, eps_s, Message::new(z, x), seed, shots)?,
        Command::Witness { eps_i, eps_s, z, x } => {
            commands::witness(eps_i, eps_s, Message::new(z, x))?
        }
        Command::WitnessSweep { resolution } => commands::witness_sweep(resolution)?,
        Command::Appendix { z, x, trials, seed } => {
            commands::appendix(Message::new(z, x), trials, seed)?
        }
        Command::Hardware {
            params,
            coil_volume_cm3,
            eps,
            snr_target,
        } => commands::hardware(commands::HardwareArgs {
            params_path: params,
            coil_volume_cm3,
            eps,
            snr_target,
        })?,
    };

    let rendered = match cli.format {
        Format::Json => record.to_json(),
        Format::Csv if record.command == "witness-sweep" => sweep_csv(&record)?,
        Format::Csv => record.to_csv(),
    };

    match cli.out {
        Some(path) => std::fs::write(&path, rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

/// The sweep's CSV is the grid itself: one header row, one line per cell,
/// LF endings, '.' decimals.
fn sweep_csv(record: &RunRecord) -> Result<String> {
    let grid = &record.outputs["grid"];
    let columns = grid["columns"]
        .as_array()
        .context("sweep grid missing columns")?;
    let rows = grid["rows"].as_array().context("sweep grid missing rows")?;

    let mut out = columns
        .iter()
        .map(|c| c.as_str().unwrap_or_default())
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for row in rows {
        let cells = row.as_array().context("sweep row is not an array")?;
        let line = cells
            .iter()
            .map(|v| match v {
                serde_json::Value::Null => String::new(),
                serde_json::Value::Number(n) => n.to_string(),
                other => other.to_string(),
            })
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
