//! Run configuration: flat JSON file, command-line overrides, defaults.

use std::f64::consts::PI;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use internal_waves::dispersion::{Branch, InterfacePressure, STANDARD_ATMOSPHERE};
use internal_waves::geo::PhysicalConstants;
use internal_waves::setup::{WaveSetup, DEFAULT_BETA0_OFFSET, DEFAULT_S0};
use internal_waves::verify::{SampleGrid, Tolerances, VerifyConfig};

use crate::error::CliError;

/// Wavenumber used when neither a wavenumber nor a wavelength is given, m^-1.
pub const DEFAULT_WAVENUMBER: f64 = 6.28e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BranchChoice {
    Positive,
    Negative,
    /// Eastward closed-form speed; only valid at latitude 0.
    Equatorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub latitude_deg: f64,
    pub rho0: f64,
    pub rho_plus: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavenumber: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<f64>,
    pub amplitude: f64,
    pub s0: f64,
    pub beta0_offset: f64,
    pub p0: f64,
    pub branch: BranchChoice,
    pub output: OutputFormat,
    pub seed: u64,
    /// Relative change applied to c after the parameters are solved.
    pub perturb_c: f64,
    pub tol_identity: f64,
    pub tol_time_invariance: f64,
    pub tol_dynamic: f64,
    pub tol_kinematic: f64,
    pub tol_fd: f64,
    pub tol_vorticity_fd: f64,
    pub grid_theta: usize,
    pub grid_s: usize,
    pub grid_t: usize,
    pub grid_random: usize,
    pub n_divergence: usize,
    pub n_jacobian_times: usize,
    pub r_range: f64,
    pub fd_step: f64,
    pub dt_scale: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let verify = VerifyConfig::default();
        let tol = verify.tolerances;
        Self {
            latitude_deg: 45.0,
            rho0: 1000.0,
            rho_plus: 1004.0,
            wavenumber: None,
            wavelength: None,
            amplitude: 10.0,
            s0: DEFAULT_S0,
            beta0_offset: DEFAULT_BETA0_OFFSET,
            p0: STANDARD_ATMOSPHERE,
            branch: BranchChoice::Positive,
            output: OutputFormat::Csv,
            seed: verify.grid.seed,
            perturb_c: 0.0,
            tol_identity: tol.identity,
            tol_time_invariance: tol.time_invariance,
            tol_dynamic: tol.dynamic,
            tol_kinematic: tol.kinematic,
            tol_fd: tol.fd,
            tol_vorticity_fd: tol.vorticity_fd,
            grid_theta: verify.grid.n_theta,
            grid_s: verify.grid.n_s,
            grid_t: verify.grid.n_t,
            grid_random: verify.grid.n_random,
            n_divergence: verify.n_divergence,
            n_jacobian_times: verify.n_jacobian_times,
            r_range: verify.grid.r_range,
            fd_step: verify.fd_step,
            dt_scale: verify.dt_scale,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|source| CliError::Json {
            path: origin.to_string(),
            source,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    pub fn wavenumber(&self) -> Result<f64, CliError> {
        match (self.wavenumber, self.wavelength) {
            (Some(_), Some(_)) => Err(CliError::Config(
                "give either wavenumber or wavelength, not both".into(),
            )),
            (Some(k), None) => Ok(k),
            (None, Some(l)) if l.is_finite() && l > 0.0 => Ok(2.0 * PI / l),
            (None, Some(l)) => Err(CliError::Config(format!(
                "wavelength must be positive, got {l}"
            ))),
            (None, None) => Ok(DEFAULT_WAVENUMBER),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let k = self.wavenumber()?;
        if !(k.is_finite() && k > 0.0) {
            return Err(CliError::Config(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        if !(self.latitude_deg.is_finite() && self.latitude_deg.abs() < 90.0) {
            return Err(CliError::Config(format!(
                "latitude must lie in (-90, 90) degrees, got {}",
                self.latitude_deg
            )));
        }
        if self.branch == BranchChoice::Equatorial && self.latitude_deg != 0.0 {
            return Err(CliError::Config(
                "branch 'equatorial' requires latitude 0".into(),
            ));
        }
        if !(self.beta0_offset.is_finite() && self.beta0_offset > 0.0) {
            return Err(CliError::Config(format!(
                "beta0_offset must be positive, got {}",
                self.beta0_offset
            )));
        }
        if !self.perturb_c.is_finite() || self.perturb_c <= -1.0 {
            return Err(CliError::Config(format!(
                "perturb_c must exceed -1, got {}",
                self.perturb_c
            )));
        }
        for (name, v) in [
            ("tol_identity", self.tol_identity),
            ("tol_time_invariance", self.tol_time_invariance),
            ("tol_dynamic", self.tol_dynamic),
            ("tol_kinematic", self.tol_kinematic),
            ("tol_fd", self.tol_fd),
            ("tol_vorticity_fd", self.tol_vorticity_fd),
            ("fd_step", self.fd_step),
            ("dt_scale", self.dt_scale),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.r_range.is_finite() && self.r_range >= 0.0) {
            return Err(CliError::Config(format!(
                "r_range must be non-negative, got {}",
                self.r_range
            )));
        }
        Ok(())
    }

    pub fn branch(&self) -> Branch {
        match self.branch {
            BranchChoice::Negative => Branch::Negative,
            BranchChoice::Positive | BranchChoice::Equatorial => Branch::Positive,
        }
    }

    pub fn wave_setup(&self) -> Result<WaveSetup, CliError> {
        self.validate()?;
        Ok(WaveSetup {
            constants: PhysicalConstants::default(),
            latitude: self.latitude_deg.to_radians(),
            rho0: self.rho0,
            rho_plus: self.rho_plus,
            k: self.wavenumber()?,
            amplitude: self.amplitude,
            s0: self.s0,
            interface: InterfacePressure::AboveThermocline(self.beta0_offset),
            p0: self.p0,
            branch: self.branch(),
        })
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            tolerances: Tolerances {
                identity: self.tol_identity,
                time_invariance: self.tol_time_invariance,
                dynamic: self.tol_dynamic,
                kinematic: self.tol_kinematic,
                fd: self.tol_fd,
                vorticity_fd: self.tol_vorticity_fd,
            },
            grid: SampleGrid {
                n_theta: self.grid_theta,
                n_s: self.grid_s,
                n_t: self.grid_t,
                n_random: self.grid_random,
                r_range: self.r_range,
                seed: self.seed,
            },
            n_divergence: self.n_divergence,
            n_jacobian_times: self.n_jacobian_times,
            fd_step: self.fd_step,
            dt_scale: self.dt_scale,
        }
    }
}
