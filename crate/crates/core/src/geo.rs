//! Physical constants, site latitude and two-layer stratification.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gravitational acceleration, m s^-2.
pub const STANDARD_GRAVITY: f64 = 9.81;
/// Earth's rotation rate, rad s^-1.
pub const EARTH_ROTATION_RATE: f64 = 7.29e-5;
/// Earth's mean radius, m.
pub const EARTH_RADIUS: f64 = 6.371e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Gravitational acceleration, m s^-2.
    pub g: f64,
    /// Rotation rate, rad s^-1.
    pub omega: f64,
    /// Planetary radius, m. Carried for completeness; the f-plane never uses it.
    pub earth_radius: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            g: STANDARD_GRAVITY,
            omega: EARTH_ROTATION_RATE,
            earth_radius: EARTH_RADIUS,
        }
    }
}

impl PhysicalConstants {
    pub fn new(g: f64, omega: f64, earth_radius: f64) -> Result<Self> {
        for (name, v) in [("g", g), ("omega", omega), ("earth_radius", earth_radius)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConstants(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self {
            g,
            omega,
            earth_radius,
        })
    }
}

/// A latitude on the f-plane with its two Coriolis parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Site {
    /// Latitude in radians, positive in the Northern Hemisphere.
    pub phi: f64,
    /// Rotation rate the parameters were built from, rad s^-1.
    pub omega: f64,
    /// Coriolis parameter 2 Omega sin(phi), s^-1.
    pub f: f64,
    /// Reciprocal Coriolis parameter 2 Omega cos(phi), s^-1.
    pub f_hat: f64,
}

impl Site {
    pub fn from_degrees(constants: &PhysicalConstants, latitude_deg: f64) -> Result<Self> {
        coriolis(constants, latitude_deg.to_radians())
    }

    pub fn is_equator(&self) -> bool {
        self.f == 0.0
    }
}

/// Builds the f-plane site for latitude `phi` (radians).
pub fn coriolis(constants: &PhysicalConstants, phi: f64) -> Result<Site> {
    if !(phi.is_finite() && phi.abs() < FRAC_PI_2) {
        return Err(Error::LatitudeOutOfRange { phi });
    }
    let two_omega = 2.0 * constants.omega;
    Ok(Site {
        phi,
        omega: constants.omega,
        f: two_omega * phi.sin(),
        f_hat: two_omega * phi.cos(),
    })
}

/// Light layer of density `rho0` over a denser motionless layer `rho_plus`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stratification {
    pub g: f64,
    pub rho0: f64,
    pub rho_plus: f64,
    /// Reduced gravity g (rho_plus - rho0) / rho0, always positive.
    pub g_tilde: f64,
}

impl Stratification {
    pub fn density_jump(&self) -> f64 {
        self.rho_plus - self.rho0
    }
}

pub fn reduced_gravity(
    constants: &PhysicalConstants,
    rho0: f64,
    rho_plus: f64,
) -> Result<Stratification> {
    if !(rho0.is_finite() && rho_plus.is_finite() && rho0 > 0.0 && rho_plus > rho0) {
        return Err(Error::UnstableStratification { rho0, rho_plus });
    }
    Ok(Stratification {
        g: constants.g,
        rho0,
        rho_plus,
        g_tilde: constants.g * (rho_plus - rho0) / rho0,
    })
}

/// Threshold 4 Omega^2 / g_tilde; admissible wavenumbers are strictly above it.
pub fn min_wavenumber(constants: &PhysicalConstants, strat: &Stratification) -> f64 {
    4.0 * constants.omega * constants.omega / strat.g_tilde
}

pub fn check_wavenumber(
    constants: &PhysicalConstants,
    strat: &Stratification,
    k: f64,
) -> Result<()> {
    let threshold = min_wavenumber(constants, strat);
    if k.is_finite() && k > threshold {
        Ok(())
    } else {
        Err(Error::WavenumberBelowThreshold { k, threshold })
    }
}
