//! The five subcommands, each rendering its output to a string.

use std::f64::consts::PI;

use serde::Serialize;

use internal_waves::dispersion::continuity_residual;
use internal_waves::flowfield::{FlowSample, LagrangianLabel, Wave};
use internal_waves::geo::min_wavenumber;
use internal_waves::setup::{PhaseSpeeds, SolvedWave};
use internal_waves::verify::{run_all, VerificationReport};

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::export::{format_float, Table};

/// Solves the configured wave and applies the negative-control speed change.
pub fn solve(config: &RunConfig) -> Result<SolvedWave, CliError> {
    let mut solved = config.wave_setup()?.solve()?;
    solved.wave.params.c *= 1.0 + config.perturb_c;
    Ok(solved)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionReport {
    pub regime: &'static str,
    pub latitude_deg: f64,
    pub f: f64,
    pub f_hat: f64,
    pub g_tilde: f64,
    pub k: f64,
    pub wavelength: f64,
    pub min_wavenumber: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivative_discriminant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_minus: Option<f64>,
    /// eps * F, the width of both root brackets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_plus_minus_one: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_minus_plus_one: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brackets_hold: Option<bool>,
    pub c_plus: f64,
    pub c_minus: f64,
    pub continuity_residual: f64,
    pub branch: &'static str,
    pub c: f64,
    pub m: f64,
    pub b: f64,
    pub d: f64,
    pub amplitude: f64,
    pub amplitude_bound: f64,
    pub period: f64,
    pub s0: f64,
    pub s_plus: f64,
    pub p0_tilde: f64,
    pub beta0: f64,
}

pub fn dispersion_report(config: &RunConfig) -> Result<DispersionReport, CliError> {
    let setup = config.wave_setup()?;
    let solved = solve(config)?;
    let (site, strat, p) = (solved.site, solved.strat, solved.wave.params);
    let mut report = DispersionReport {
        regime: "mid-latitude",
        latitude_deg: config.latitude_deg,
        f: site.f,
        f_hat: site.f_hat,
        g_tilde: strat.g_tilde,
        k: p.k,
        wavelength: p.wavelength,
        min_wavenumber: min_wavenumber(&setup.constants, &strat),
        epsilon: None,
        f_ratio: None,
        derivative_discriminant: None,
        x_plus: None,
        x_minus: None,
        bracket_width: None,
        x_plus_minus_one: None,
        x_minus_plus_one: None,
        brackets_hold: None,
        c_plus: 0.0,
        c_minus: 0.0,
        continuity_residual: continuity_residual(&site, &strat, p.k, p.c),
        branch: if p.c >= 0.0 { "positive" } else { "negative" },
        c: p.c,
        m: p.m,
        b: p.b,
        d: p.d,
        amplitude: p.a,
        amplitude_bound: p.amplitude_bound(),
        period: p.period(),
        s0: p.s0,
        s_plus: p.s_plus,
        p0_tilde: p.p0_tilde,
        beta0: p.beta0,
    };
    match solved.dispersion {
        PhaseSpeeds::MidLatitude { nondim, roots } => {
            let width = nondim.bracket_width();
            let above = roots.x_plus - 1.0;
            let below = roots.x_minus + 1.0;
            report.epsilon = Some(nondim.epsilon);
            report.f_ratio = Some(nondim.f_ratio);
            report.derivative_discriminant = Some(nondim.derivative_discriminant());
            report.x_plus = Some(roots.x_plus);
            report.x_minus = Some(roots.x_minus);
            report.bracket_width = Some(width);
            report.x_plus_minus_one = Some(above);
            report.x_minus_plus_one = Some(below);
            report.brackets_hold =
                Some(above > 0.0 && above < width && below > 0.0 && below < width);
            report.c_plus = roots.c_plus;
            report.c_minus = roots.c_minus;
        }
        PhaseSpeeds::Equatorial(speeds) => {
            report.regime = "equatorial";
            report.c_plus = speeds.c_plus;
            report.c_minus = speeds.c_minus;
        }
    }
    Ok(report)
}

fn key_value_csv(value: &serde_json::Value) -> String {
    let mut out = String::from("quantity,value\n");
    if let serde_json::Value::Object(map) = value {
        for (key, v) in map {
            let text = match v {
                serde_json::Value::Number(n) => format_float(n.as_f64().unwrap_or(f64::NAN)),
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{key},{text}\n"));
        }
    }
    out
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

pub fn cmd_dispersion(config: &RunConfig) -> Result<String, CliError> {
    let report = dispersion_report(config)?;
    Ok(match config.output {
        OutputFormat::Json => pretty_json(&report),
        OutputFormat::Csv => {
            key_value_csv(&serde_json::to_value(&report).expect("report serializes"))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRequest {
    pub q: f64,
    pub r: f64,
    /// Label height; the thermocline s0 when absent.
    pub s: Option<f64>,
    pub t_start: f64,
    /// Duration; one orbital period when absent.
    pub t_span: Option<f64>,
    pub n: usize,
}

pub fn trajectory_samples(
    wave: &Wave,
    req: &TrajectoryRequest,
) -> Result<Vec<FlowSample>, CliError> {
    let s = req.s.unwrap_or(wave.params.s0);
    let span = req.t_span.unwrap_or_else(|| wave.params.period());
    Ok(wave.trajectory(
        &LagrangianLabel::new(req.q, req.r, s),
        req.t_start,
        req.t_start + span,
        req.n,
    )?)
}

pub fn cmd_trajectory(config: &RunConfig, req: &TrajectoryRequest) -> Result<String, CliError> {
    let wave = solve(config)?.wave;
    Ok(Table::flow(&trajectory_samples(&wave, req)?).render(config.output))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRequest {
    pub s: Option<f64>,
    pub r: f64,
    pub t: f64,
    pub q_start: f64,
    /// Extent in q; one wavelength when absent.
    pub q_span: Option<f64>,
    pub n: usize,
}

pub fn cmd_profile(config: &RunConfig, req: &ProfileRequest) -> Result<String, CliError> {
    let wave = solve(config)?.wave;
    let s = req.s.unwrap_or(wave.params.s0);
    let span = req.q_span.unwrap_or(wave.params.wavelength);
    let samples = wave.profile(s, req.r, req.t, req.q_start, req.q_start + span, req.n)?;
    Ok(Table::profile(&samples).render(config.output))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRequest {
    pub t: f64,
    pub r: f64,
    /// Points per wavelength in q.
    pub nq: usize,
    /// Points across [s0, s_plus].
    pub ns: usize,
}

pub fn cmd_field(config: &RunConfig, req: &FieldRequest) -> Result<String, CliError> {
    if req.nq < 1 || req.ns < 2 {
        return Err(CliError::Config(format!(
            "field needs nq >= 1 and ns >= 2, got {} and {}",
            req.nq, req.ns
        )));
    }
    let wave = solve(config)?.wave;
    let p = wave.params;
    let mut samples = Vec::with_capacity(req.nq * req.ns);
    for j in 0..req.ns {
        let s = if j + 1 == req.ns {
            p.s_plus
        } else {
            p.s0 + (p.s_plus - p.s0) * j as f64 / (req.ns - 1) as f64
        };
        for i in 0..req.nq {
            let q = 2.0 * PI / p.k * i as f64 / req.nq as f64;
            samples.push(wave.sample(&LagrangianLabel::new(q, req.r, s), req.t));
        }
    }
    Ok(Table::flow(&samples).render(config.output))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutput {
    pub all_passed: bool,
    pub seed: u64,
    pub perturb_c: f64,
    pub reports: Vec<VerificationReport>,
}

/// Runs every check; the report is always JSON.
pub fn cmd_verify(config: &RunConfig) -> Result<(VerifyOutput, String), CliError> {
    let wave = solve(config)?.wave;
    let summary = run_all(&wave, &config.verify_config());
    let output = VerifyOutput {
        all_passed: summary.all_passed,
        seed: config.seed,
        perturb_c: config.perturb_c,
        reports: summary.reports,
    };
    let text = pretty_json(&output);
    Ok((output, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_brackets_hold() {
        let r = dispersion_report(&RunConfig::default()).unwrap();
        assert_eq!(r.regime, "mid-latitude");
        assert_eq!(r.brackets_hold, Some(true));
        let scale = (r.g_tilde / r.k).sqrt();
        let (lo, hi) = (scale, (1.0 + r.bracket_width.unwrap()) * scale);
        assert!(r.c_plus > lo && r.c_plus < hi);
        assert!(r.continuity_residual < 1e-12);
    }

    #[test]
    fn equator_report() {
        let cfg = RunConfig {
            latitude_deg: 0.0,
            ..RunConfig::default()
        };
        let r = dispersion_report(&cfg).unwrap();
        assert_eq!(r.regime, "equatorial");
        assert!(r.epsilon.is_none());
        let text = cmd_dispersion(&cfg).unwrap();
        assert!(text.starts_with("quantity,value\nregime,equatorial\n"));
    }

    #[test]
    fn perturbation_scales_speed() {
        let base = solve(&RunConfig::default()).unwrap().wave.params.c;
        let cfg = RunConfig {
            perturb_c: 0.01,
            ..RunConfig::default()
        };
        let c = solve(&cfg).unwrap().wave.params.c;
        assert!((c / base - 1.01).abs() < 1e-15);
    }

    #[test]
    fn field_shape() {
        let cfg = RunConfig::default();
        let csv = cmd_field(
            &cfg,
            &FieldRequest {
                t: 0.0,
                r: 0.0,
                nq: 8,
                ns: 3,
            },
        )
        .unwrap();
        assert_eq!(csv.lines().count(), 1 + 24);
        assert!(cmd_field(
            &cfg,
            &FieldRequest {
                t: 0.0,
                r: 0.0,
                nq: 8,
                ns: 1
            }
        )
        .is_err());
    }
}
