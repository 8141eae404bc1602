//! Command-line front end for the internal-wave solution.

pub mod commands;
pub mod config;
pub mod error;
pub mod export;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{FieldRequest, ProfileRequest, TrajectoryRequest};
use config::{BranchChoice, OutputFormat, RunConfig};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "internal-waves",
    version,
    about = "Explicit 3D internal waves on the f-plane"
)]
pub struct Cli {
    #[command(flatten)]
    pub args: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides applied on top of the config file, which is applied on top of the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Latitude in degrees, positive north.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lat: Option<f64>,
    /// Wavenumber, m^-1.
    #[arg(long, global = true, conflicts_with = "wavelength")]
    pub k: Option<f64>,
    /// Wavelength, m.
    #[arg(long, global = true)]
    pub wavelength: Option<f64>,
    /// Amplitude parameter a, m.
    #[arg(long, global = true)]
    pub amplitude: Option<f64>,
    #[arg(long, global = true)]
    pub rho0: Option<f64>,
    #[arg(long, global = true)]
    pub rho_plus: Option<f64>,
    /// Label of the thermocline, m.
    #[arg(long, global = true)]
    pub s0: Option<f64>,
    /// Interface pressure above the thermocline value, Pa.
    #[arg(long, global = true)]
    pub beta0_offset: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub branch: Option<BranchChoice>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for the random verification points.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Scale c by (1 + fraction) after solving; a negative control for verify.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub perturb_c: Option<f64>,
    #[arg(long, global = true)]
    pub tol_identity: Option<f64>,
    #[arg(long, global = true)]
    pub tol_fd: Option<f64>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(k) = self.k {
            cfg.wavenumber = Some(k);
            cfg.wavelength = None;
        }
        if let Some(l) = self.wavelength {
            cfg.wavelength = Some(l);
            cfg.wavenumber = None;
        }
        macro_rules! apply {
            ($($arg:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$arg { cfg.$field = v; })*
            };
        }
        apply!(
            lat => latitude_deg,
            amplitude => amplitude,
            rho0 => rho0,
            rho_plus => rho_plus,
            s0 => s0,
            beta0_offset => beta0_offset,
            branch => branch,
            format => output,
            seed => seed,
            perturb_c => perturb_c,
            tol_identity => tol_identity,
            tol_fd => tol_fd,
        );
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the dispersion relation and report the wave parameters.
    Dispersion,
    /// Sample one particle over time.
    Trajectory {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        /// Label height; the thermocline when absent.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_start: f64,
        /// Duration in seconds; one period when absent.
        #[arg(long)]
        t_span: Option<f64>,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Sample a sheet of constant label s along q.
    Profile {
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        q_start: f64,
        /// Extent in q; one wavelength when absent.
        #[arg(long)]
        q_span: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Sample every field on a (q, s) grid over one wavelength and the layer.
    Field {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 64)]
        nq: usize,
        #[arg(long, default_value_t = 16)]
        ns: usize,
    },
    /// Check the solution against the governing equations.
    Verify,
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Runs one command and returns the process exit code: 0 on success, 1 when
/// verification fails.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8, CliError> {
    let cfg = cli.args.resolve()?;
    let text = match &cli.command {
        Command::Dispersion => commands::cmd_dispersion(&cfg)?,
        &Command::Trajectory {
            q,
            r,
            s,
            t_start,
            t_span,
            n,
        } => commands::cmd_trajectory(
            &cfg,
            &TrajectoryRequest {
                q,
                r,
                s,
                t_start,
                t_span,
                n,
            },
        )?,
        &Command::Profile {
            s,
            r,
            t,
            q_start,
            q_span,
            n,
        } => commands::cmd_profile(
            &cfg,
            &ProfileRequest {
                s,
                r,
                t,
                q_start,
                q_span,
                n,
            },
        )?,
        &Command::Field { t, r, nq, ns } => {
            commands::cmd_field(&cfg, &FieldRequest { t, r, nq, ns })?
        }
        Command::Verify => {
            let (output, text) = commands::cmd_verify(&cfg)?;
            emit(&cli.args.out, &text, stdout)?;
            for r in output.reports.iter().filter(|r| !r.passed) {
                let _ = writeln!(
                    stderr,
                    "FAILED {}: residual {:e} > tolerance {:e}",
                    r.check_name, r.max_residual, r.tolerance
                );
            }
            return Ok(if output.all_passed { 0 } else { 1 });
        }
    };
    emit(&cli.args.out, &text, stdout)?;
    Ok(0)
}
