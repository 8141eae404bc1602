//! Numerical checks that a solved wave satisfies the governing equations.
//!
//! Closed-form identities are held to near machine precision; anything that
//! goes through finite differences is held to a looser truncation tolerance.

mod checks;
mod fd;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::flowfield::{LagrangianLabel, Wave};

pub use checks::{
    check_boundary, check_euler, check_incompressibility, check_pressure_consistency,
    check_vorticity, euler_residual, kinematic_residual,
};
pub use fd::{fd_label_gradient, fd_velocity_gradient, matrix_product_vorticity};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Closed-form identities: Euler residual, r-independence, vorticity product.
    pub identity: f64,
    /// |J(t) - J(0)|.
    pub time_invariance: f64,
    /// Dynamic condition, relative to |P0|.
    pub dynamic: f64,
    /// Kinematic condition along particle paths.
    pub kinematic: f64,
    /// Pressure gradients and Eulerian divergence by central differences.
    pub fd: f64,
    /// Finite-difference curl against the analytic vorticity.
    pub vorticity_fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-12,
            time_invariance: 1e-14,
            dynamic: 1e-9,
            kinematic: 1e-8,
            fd: 1e-6,
            vorticity_fd: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub label: LagrangianLabel,
    pub t: f64,
}

/// Where the checks evaluate the fields: a (theta, s, t) lattice on r = 0 plus
/// seeded random points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub n_theta: usize,
    pub n_s: usize,
    pub n_t: usize,
    pub n_random: usize,
    /// Random r labels are drawn from [-r_range, r_range], m.
    pub r_range: f64,
    pub seed: u64,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self {
            n_theta: 16,
            n_s: 16,
            n_t: 5,
            n_random: 50,
            r_range: 100.0,
            seed: 0,
        }
    }
}

impl SampleGrid {
    fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_theta).map(move |i| 2.0 * PI * i as f64 / self.n_theta as f64)
    }

    fn times(&self, wave: &Wave) -> Vec<f64> {
        let period = wave.params.period();
        (0..self.n_t)
            .map(|i| period * i as f64 / self.n_t as f64)
            .collect()
    }

    /// n_theta x n_s x n_t points with s spanning [s0, s_plus] and t one period.
    pub fn lattice(&self, wave: &Wave) -> Vec<SamplePoint> {
        let p = &wave.params;
        let heights: Vec<f64> = match self.n_s {
            0 => Vec::new(),
            1 => vec![p.s0],
            n => (0..n)
                .map(|j| {
                    if j == n - 1 {
                        p.s_plus
                    } else {
                        p.s0 + (p.s_plus - p.s0) * j as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        };
        let times = self.times(wave);
        let mut out = Vec::with_capacity(self.n_theta * heights.len() * times.len());
        for theta in self.thetas() {
            for &s in &heights {
                for &t in &times {
                    out.push(SamplePoint {
                        label: LagrangianLabel::new(wave.q_for_phase(theta, t), 0.0, s),
                        t,
                    });
                }
            }
        }
        out
    }

    /// n_theta x n_t points on the sheet of label `s`, plus n_random random ones.
    pub fn sheet(&self, wave: &Wave, s: f64) -> Vec<SamplePoint> {
        let times = self.times(wave);
        let mut out: Vec<SamplePoint> = self
            .thetas()
            .flat_map(|theta| {
                times.iter().map(move |&t| SamplePoint {
                    label: LagrangianLabel::new(wave.q_for_phase(theta, t), 0.0, s),
                    t,
                })
            })
            .collect();
        out.extend(
            self.random(wave, self.n_random, 3)
                .into_iter()
                .map(|mut p| {
                    p.label.s = s;
                    p
                }),
        );
        out
    }

    /// `n` random points in the layer. Each `stream` is an independent
    /// sequence from the same seed.
    pub fn random(&self, wave: &Wave, n: usize, stream: u64) -> Vec<SamplePoint> {
        let p = &wave.params;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        (0..n)
            .map(|_| {
                let theta = rng.gen_range(0.0..2.0 * PI);
                let r = if self.r_range > 0.0 {
                    rng.gen_range(-self.r_range..=self.r_range)
                } else {
                    0.0
                };
                let s = if p.s_plus > p.s0 {
                    rng.gen_range(p.s0..=p.s_plus)
                } else {
                    p.s0
                };
                let t = rng.gen_range(0.0..p.period());
                SamplePoint {
                    label: LagrangianLabel::new(wave.q_for_phase(theta, t), r, s),
                    t,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub tolerances: Tolerances,
    pub grid: SampleGrid,
    /// Random points for the finite-difference divergence.
    pub n_divergence: usize,
    /// Times over one period at which J is compared with J(0).
    pub n_jacobian_times: usize,
    /// Spatial finite-difference step, m.
    pub fd_step: f64,
    /// Temporal step as a multiple of 1/(k|c|).
    pub dt_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            grid: SampleGrid::default(),
            n_divergence: 100,
            n_jacobian_times: 100,
            fd_step: 1e-4,
            dt_scale: 1e-3,
        }
    }
}

impl VerifyConfig {
    pub fn time_step(&self, wave: &Wave) -> f64 {
        self.dt_scale / (wave.params.k * wave.params.c).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub n_samples: usize,
    pub passed: bool,
    pub worst_sample: Option<SamplePoint>,
}

/// Running maximum of a residual over samples.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    name: &'static str,
    tolerance: f64,
    max: f64,
    n: usize,
    worst: Option<SamplePoint>,
}

impl Tally {
    pub(crate) fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            max: 0.0,
            n: 0,
            worst: None,
        }
    }

    pub(crate) fn record(&mut self, residual: f64, at: SamplePoint) {
        self.n += 1;
        if self.max.is_nan() {
            return;
        }
        if residual.is_nan() || residual > self.max || self.worst.is_none() {
            self.max = residual;
            self.worst = Some(at);
        }
    }

    pub(crate) fn finish(self) -> VerificationReport {
        VerificationReport {
            check_name: self.name.to_string(),
            max_residual: self.max,
            tolerance: self.tolerance,
            n_samples: self.n,
            passed: self.max <= self.tolerance,
            worst_sample: self.worst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub all_passed: bool,
    pub reports: Vec<VerificationReport>,
}

impl VerificationSummary {
    pub fn report(&self, name: &str) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.check_name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

/// Runs every check; a failing check does not stop the others.
pub fn run_all(wave: &Wave, config: &VerifyConfig) -> VerificationSummary {
    let mut reports = Vec::new();
    reports.extend(check_euler(wave, config));
    reports.extend(check_pressure_consistency(wave, config));
    reports.extend(check_boundary(wave, config));
    reports.extend(check_incompressibility(wave, config));
    reports.extend(check_vorticity(wave, config));
    let all_passed = reports.iter().all(|r| r.passed);
    VerificationSummary {
        all_passed,
        reports,
    }
}
