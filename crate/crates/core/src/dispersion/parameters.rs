use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geo::{Site, Stratification};

/// Default gauge: the motionless lower layer carries P = P0 - rho+ g z with
/// P0 one standard atmosphere.
pub const STANDARD_ATMOSPHERE: f64 = 101_325.0;

/// Absolute tolerance on the interface label s_plus, m.
pub const INTERFACE_TOLERANCE: f64 = 1e-9;

/// Largest relative size of a^2 + d^2 - b^2 accepted before the cos^2 term of
/// the pressure can be dropped.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// How the pressure constant beta0 on the upper interface is prescribed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InterfacePressure {
    /// beta0 itself, Pa.
    Absolute(f64),
    /// beta0 - (P0 - P0_tilde), Pa; any positive value is admissible.
    AboveThermocline(f64),
}

/// Everything the caller chooses; the remaining parameters follow from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSpec {
    pub k: f64,
    pub amplitude: f64,
    pub c: f64,
    pub s0: f64,
    pub interface: InterfacePressure,
    pub p0: f64,
}

/// The full parameter set of the explicit solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveParameters {
    /// Vertical orbit amplitude parameter, m.
    pub a: f64,
    /// Wavenumber, m^-1.
    pub k: f64,
    /// Wavelength 2 pi / k, m.
    pub wavelength: f64,
    /// Phase speed, m s^-1.
    pub c: f64,
    /// Vertical decay rate, m^-1.
    pub m: f64,
    /// Longitudinal orbit parameter, m.
    pub b: f64,
    /// Latitudinal orbit parameter, m. Negative in the Northern Hemisphere.
    pub d: f64,
    pub s_star: f64,
    /// Label of the thermocline sheet, m.
    pub s0: f64,
    /// Label of the upper interface sheet, m.
    pub s_plus: f64,
    /// Pressure constant of the motionless layer, Pa.
    pub p0: f64,
    /// Gauge constant of the pressure in the moving layer, Pa.
    pub p0_tilde: f64,
    /// Pressure constant on the upper interface, Pa.
    pub beta0: f64,
}

impl WaveParameters {
    /// Upper bound 1/m on the amplitude.
    pub fn amplitude_bound(&self) -> f64 {
        1.0 / self.m
    }

    /// Time for a particle to complete one orbit, s.
    pub fn period(&self) -> f64 {
        2.0 * PI / (self.k * self.c).abs()
    }

    /// Right-hand side of the thermocline pressure relation evaluated at label
    /// height `s`; its value at s0 is P0 - P0_tilde. Strictly increasing in
    /// `s` while m^2 a^2 e^{-2ms} < 1.
    pub fn thermocline_map(&self, site: &Site, strat: &Stratification, s: f64) -> f64 {
        let Self {
            k, c, a, b, d, m, ..
        } = *self;
        let e2 = (-2.0 * m * s).exp();
        let kc = k * c;
        -strat.rho0
            * (-0.5 * kc * kc * b * b * e2 + 0.5 * site.f_hat * kc * a * b * e2
                - 0.5 * site.f * kc * b * d * e2
                + strat.g * s)
            + strat.rho_plus * strat.g * s
    }
}

/// Finds s_plus > s0 where the thermocline map reaches `beta0`, by bisection
/// on the monotone map.
pub fn solve_interface(
    params: &WaveParameters,
    site: &Site,
    strat: &Stratification,
    beta0: f64,
) -> Result<f64> {
    let map = |s: f64| params.thermocline_map(site, strat, s);
    let floor = map(params.s0);
    if !(beta0.is_finite() && beta0 > floor) {
        return Err(Error::InterfaceOrdering { beta0, floor });
    }

    let slope = strat.g * strat.density_jump();
    let mut span = ((beta0 - floor) / slope).max(1.0);
    let mut lo = params.s0;
    let mut hi = params.s0 + span;
    let mut grown = 0;
    while map(hi) < beta0 {
        grown += 1;
        if grown > 60 {
            return Err(Error::NonConvergence {
                what: "interface bracket",
                x: hi,
                residual: beta0 - map(hi),
                iterations: grown,
            });
        }
        lo = hi;
        span *= 2.0;
        hi = params.s0 + span;
    }

    let mut iterations = 0;
    while hi - lo > INTERFACE_TOLERANCE {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || iterations > 200 {
            break;
        }
        if map(mid) < beta0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Completes the parameter set from the chosen wavenumber, amplitude, speed and
/// thermocline label, enforcing the amplitude and evanescence gates.
pub fn derive_parameters(
    site: &Site,
    strat: &Stratification,
    spec: &WaveSpec,
) -> Result<WaveParameters> {
    let WaveSpec {
        k,
        amplitude: a,
        c,
        s0,
        interface,
        p0,
    } = *spec;
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidInput(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "amplitude must be non-negative, got {a}"
        )));
    }
    if !(s0.is_finite() && s0 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "thermocline label s0 must be positive, got {s0}"
        )));
    }
    if !(c.is_finite() && p0.is_finite()) {
        return Err(Error::InvalidInput(
            "phase speed and P0 must be finite".into(),
        ));
    }
    let threshold = 4.0 * site.omega * site.omega / strat.g_tilde;
    if k <= threshold {
        return Err(Error::WavenumberBelowThreshold { k, threshold });
    }

    let kc = k * c;
    if !(kc * kc > site.f * site.f) {
        return Err(Error::Evanescent {
            kc2: kc * kc,
            f2: site.f * site.f,
        });
    }
    // m^2 = k^4 c^2 / (k^2 c^2 - f^2), written so that f = 0 gives m = k exactly
    let ratio = site.f / kc;
    let m = k / (1.0 - ratio * ratio).sqrt();
    let b = m * a / k;
    // written out so the Equator gives +0 rather than -0
    let d = if site.f == 0.0 {
        0.0
    } else {
        -site.f * m * a / (k * k * c)
    };

    if !(m * a < 1.0) {
        return Err(Error::AmplitudeTooLarge {
            amplitude: a,
            bound: 1.0 / m,
        });
    }
    if a > 0.0 {
        let residual = ((a * a + d * d - b * b) / (b * b)).abs();
        if residual > IDENTITY_TOLERANCE {
            return Err(Error::IdentityViolation {
                what: "b^2 = a^2 + d^2",
                residual,
            });
        }
    }

    let mut params = WaveParameters {
        a,
        k,
        wavelength: 2.0 * PI / k,
        c,
        m,
        b,
        d,
        s_star: s0,
        s0,
        s_plus: s0,
        p0,
        p0_tilde: f64::NAN,
        beta0: f64::NAN,
    };
    let offset = params.thermocline_map(site, strat, s0);
    params.p0_tilde = p0 - offset;
    params.beta0 = match interface {
        InterfacePressure::Absolute(v) => v,
        InterfacePressure::AboveThermocline(dv) => offset + dv,
    };
    params.s_plus = solve_interface(&params, site, strat, params.beta0)?;
    Ok(params)
}
