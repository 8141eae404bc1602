use nalgebra::Vector3;

use super::fd::{
    curl, fd_label_gradient, fd_velocity_gradient, label_derivative, matrix_product_vorticity,
};
use super::{SamplePoint, Tally, VerificationReport, VerifyConfig};
use crate::error::Result;
use crate::flowfield::{LagrangianLabel, Wave};

/// num / den, treating 0/0 as an exact match.
fn relative(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn grid_points(wave: &Wave, config: &VerifyConfig, stream: u64) -> Vec<SamplePoint> {
    let mut pts = config.grid.lattice(wave);
    pts.extend(config.grid.random(wave, config.grid.n_random, stream));
    pts
}

/// Momentum-equation residual in m s^-2, with the pressure gradient obtained
/// from the closed-form label gradient through the inverse Jacobian.
pub fn euler_residual(wave: &Wave, label: &LagrangianLabel, t: f64) -> Result<Vector3<f64>> {
    let (f, fh) = (wave.site.f, wave.site.f_hat);
    let acc = wave.acceleration(label, t);
    let u = wave.velocity(label, t);
    let grad_p = wave.jacobian(label, t).inverse()? * wave.pressure_label_gradient(label, t);
    let rho0 = wave.strat.rho0;
    Ok(Vector3::new(
        acc.x + fh * u.z - f * u.y + grad_p.x / rho0,
        acc.y + f * u.x + grad_p.y / rho0,
        acc.z - fh * u.x + grad_p.z / rho0 + wave.strat.g,
    ))
}

pub fn check_euler(wave: &Wave, config: &VerifyConfig) -> Vec<VerificationReport> {
    let mut tally = Tally::new("euler", config.tolerances.identity);
    for at in grid_points(wave, config, 0) {
        let residual = euler_residual(wave, &at.label, at.t)
            .map_or(f64::INFINITY, |r| r.amax() / wave.strat.g);
        tally.record(residual, at);
    }
    vec![tally.finish()]
}

pub fn check_pressure_consistency(wave: &Wave, config: &VerifyConfig) -> Vec<VerificationReport> {
    let tol = &config.tolerances;
    let h = config.fd_step;
    let rho0 = wave.strat.rho0;
    let g = wave.strat.g;
    let transported = |l: &LagrangianLabel, t: f64| {
        wave.jacobian(l, t).matrix * wave.pressure_gradient_dynamic(l, t)
    };

    let mut gradient = Tally::new("pressure_label_gradient", tol.fd);
    let mut mixed = Tally::new("pressure_mixed_partials", tol.fd);
    let mut r_free = Tally::new("pressure_r_independence", tol.identity);
    for at in grid_points(wave, config, 0) {
        let (l, t) = (&at.label, at.t);
        let expected = transported(l, t);
        let fd = fd_label_gradient(wave, l, t, h);
        gradient.record(relative((fd - expected).amax(), expected.norm()), at);

        let d_qs = label_derivative(l, 2, h, |m| transported(m, t).x);
        let d_sq = label_derivative(l, 0, h, |m| transported(m, t).z);
        mixed.record((d_qs - d_sq).abs() / (rho0 * g * wave.params.k), at);

        let shifted = LagrangianLabel {
            r: l.r + config.grid.r_range.max(1.0),
            ..*l
        };
        let p = wave.pressure(l, t);
        let jump = relative((wave.pressure(&shifted, t) - p).abs(), p.abs());
        let p_r = expected.y.abs() / (rho0 * g);
        r_free.record(jump.max(p_r), at);
    }
    vec![gradient.finish(), mixed.finish(), r_free.finish()]
}

/// Rate of change, along the path of `label`, of the particle's height above
/// the sheet of label `sheet_s`, scaled by the orbital speed on that sheet.
/// Zero when the particle belongs to the sheet.
pub fn kinematic_residual(
    wave: &Wave,
    sheet_s: f64,
    label: &LagrangianLabel,
    t: f64,
    dt: f64,
) -> Result<f64> {
    let gap = |tau: f64| -> Result<f64> {
        let x = wave.position(label, tau);
        Ok(x.z - wave.sheet_height(x.x, sheet_s, tau)?)
    };
    let (up, down) = (t + dt, t - dt);
    let rate = (gap(up)? - gap(down)?) / (up - down);
    let p = &wave.params;
    let speed = (p.k * p.c).abs() * p.b.abs() * wave.decay(sheet_s);
    Ok(relative(rate.abs(), speed))
}

pub fn check_boundary(wave: &Wave, config: &VerifyConfig) -> Vec<VerificationReport> {
    let p = &wave.params;
    let strat = &wave.strat;
    let dt = config.time_step(wave);
    let mut dynamic = Tally::new("dynamic_boundary", config.tolerances.dynamic);
    let mut kinematic = Tally::new("kinematic_boundary", config.tolerances.kinematic);
    for at in config.grid.sheet(wave, p.s0) {
        let z = wave.position(&at.label, at.t).z;
        let expected = p.p0 - strat.rho_plus * strat.g * z;
        dynamic.record(
            (wave.pressure(&at.label, at.t) - expected).abs() / p.p0.abs().max(1.0),
            at,
        );
        let residual = kinematic_residual(wave, p.s0, &at.label, at.t, dt).unwrap_or(f64::INFINITY);
        kinematic.record(residual, at);
    }
    vec![dynamic.finish(), kinematic.finish()]
}

pub fn check_incompressibility(wave: &Wave, config: &VerifyConfig) -> Vec<VerificationReport> {
    let tol = &config.tolerances;
    let period = wave.params.period();
    let mut jacobian = Tally::new("jacobian_time_invariance", tol.time_invariance);
    for at in config.grid.lattice(wave) {
        let j0 = wave.jacobian(&at.label, 0.0).det();
        for i in 0..config.n_jacobian_times {
            let t = period * i as f64 / config.n_jacobian_times as f64;
            jacobian.record(
                (wave.jacobian(&at.label, t).det() - j0).abs(),
                SamplePoint { label: at.label, t },
            );
        }
    }

    let scale = (wave.params.k * wave.params.c).abs();
    let mut divergence = Tally::new("eulerian_divergence", tol.fd);
    for at in config.grid.random(wave, config.n_divergence, 1) {
        let residual = fd_velocity_gradient(wave, &at.label, at.t, config.fd_step)
            .map_or(f64::INFINITY, |g| relative(g.trace().abs(), scale));
        divergence.record(residual, at);
    }
    vec![jacobian.finish(), divergence.finish()]
}

pub fn check_vorticity(wave: &Wave, config: &VerifyConfig) -> Vec<VerificationReport> {
    let tol = &config.tolerances;
    let mut product = Tally::new("vorticity_matrix_product", tol.identity);
    for at in grid_points(wave, config, 0) {
        let exact = wave.vorticity(&at.label, at.t);
        let residual = matrix_product_vorticity(wave, &at.label, at.t)
            .map_or(f64::INFINITY, |om| {
                relative((om - exact).norm(), exact.norm())
            });
        product.record(residual, at);
    }

    let mut curl_fd = Tally::new("vorticity_fd_curl", tol.vorticity_fd);
    for at in config.grid.random(wave, config.grid.n_random, 2) {
        let exact = wave.vorticity(&at.label, at.t);
        let residual = fd_velocity_gradient(wave, &at.label, at.t, config.fd_step)
            .map_or(f64::INFINITY, |g| {
                relative((curl(&g) - exact).norm(), exact.norm())
            });
        curl_fd.record(residual, at);
    }
    vec![product.finish(), curl_fd.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flowfield::tests::{reference_wave, still};
    use crate::verify::run_all;

    fn by_name(reports: &[VerificationReport], name: &str) -> VerificationReport {
        reports
            .iter()
            .find(|r| r.check_name == name)
            .unwrap()
            .clone()
    }

    fn perturbed(scale_c: f64, scale_b: f64, scale_d: f64) -> Wave {
        let mut w = reference_wave();
        w.params.c *= scale_c;
        w.params.b *= scale_b;
        w.params.d *= scale_d;
        w
    }

    #[test]
    fn still_water_residuals_vanish() {
        let w = still();
        let cfg = VerifyConfig::default();
        for r in check_euler(&w, &cfg) {
            assert!(r.max_residual <= 1e-15, "{r:?}");
        }
        for r in check_boundary(&w, &cfg)
            .iter()
            .chain(&check_incompressibility(&w, &cfg))
        {
            assert!(r.passed, "{r:?}");
        }
        let k = by_name(&check_boundary(&w, &cfg), "kinematic_boundary");
        assert_eq!(k.max_residual, 0.0);
        let j = by_name(
            &check_incompressibility(&w, &cfg),
            "jacobian_time_invariance",
        );
        assert_eq!(j.max_residual, 0.0);
    }

    #[test]
    fn euler_holds_to_roundoff() {
        let r = &check_euler(&reference_wave(), &VerifyConfig::default())[0];
        assert!(r.passed && r.max_residual <= 1e-12, "{r:?}");
        assert_eq!(r.n_samples, 16 * 16 * 5 + 50);
    }

    #[test]
    fn perturbed_speed_breaks_euler() {
        let cfg = VerifyConfig::default();
        let r = &check_euler(&perturbed(1.01, 1.0, 1.0), &cfg)[0];
        assert!(!r.passed);
        // the broken dispersion balance leaves a residual of order 1e-5 g
        assert!(r.max_residual > 1e3 * cfg.tolerances.identity, "{r:?}");
    }

    #[test]
    fn each_perturbation_is_caught() {
        let cfg = VerifyConfig::default();
        let cases = [
            // kcd + bf = 0 and the pressure continuity relation
            (
                perturbed(1.01, 1.0, 1.0),
                &[
                    "euler",
                    "pressure_r_independence",
                    "dynamic_boundary",
                    "vorticity_matrix_product",
                ][..],
            ),
            // ma = kb
            (
                perturbed(1.0, 1.01, 1.0),
                &[
                    "euler",
                    "pressure_label_gradient",
                    "pressure_mixed_partials",
                    "pressure_r_independence",
                    "dynamic_boundary",
                    "jacobian_time_invariance",
                    "eulerian_divergence",
                    "vorticity_matrix_product",
                    "vorticity_fd_curl",
                ][..],
            ),
            // b^2 = a^2 + d^2 and kcd + bf = 0
            (
                perturbed(1.0, 1.0, 1.01),
                &[
                    "euler",
                    "pressure_r_independence",
                    "vorticity_matrix_product",
                ][..],
            ),
        ];
        for (wave, must_fail) in cases {
            let summary = run_all(&wave, &cfg);
            assert!(!summary.all_passed);
            for name in must_fail {
                assert!(!summary.report(name).unwrap().passed, "{name}");
            }
            // particles of the sheet stay on it whatever the parameters
            assert!(summary.report("kinematic_boundary").unwrap().passed);
        }
    }

    #[test]
    fn pressure_consistency_passes() {
        for r in check_pressure_consistency(&reference_wave(), &VerifyConfig::default()) {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn wrong_sheet_breaks_kinematic_condition() {
        let w = reference_wave();
        let p = w.params;
        let dt = VerifyConfig::default().time_step(&w);
        let on = LagrangianLabel::new(3.0, 0.0, p.s0);
        let off = LagrangianLabel::new(3.0, 0.0, p.s0 + 1.0);
        let mut worst_on: f64 = 0.0;
        let mut worst_off: f64 = 0.0;
        for i in 0..16 {
            let t = p.period() * (i as f64 + 0.5) / 16.0;
            worst_on = worst_on.max(kinematic_residual(&w, p.s0, &on, t, dt).unwrap());
            worst_off = worst_off.max(kinematic_residual(&w, p.s0, &off, t, dt).unwrap());
        }
        assert!(worst_on <= 1e-8, "{worst_on}");
        assert!(worst_off > 1e-3, "{worst_off}");
    }

    #[test]
    fn boundary_and_vorticity_pass() {
        let w = reference_wave();
        let cfg = VerifyConfig::default();
        for r in check_boundary(&w, &cfg)
            .iter()
            .chain(&check_vorticity(&w, &cfg))
        {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn incompressible() {
        let reports = check_incompressibility(&reference_wave(), &VerifyConfig::default());
        for r in &reports {
            assert!(r.passed, "{r:?}");
        }
        assert_eq!(by_name(&reports, "eulerian_divergence").n_samples, 100);
        assert_eq!(
            by_name(&reports, "jacobian_time_invariance").n_samples,
            16 * 16 * 5 * 100
        );
    }
}
