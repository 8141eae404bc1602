//! One-call construction of a wave from physical inputs.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dispersion::{
    derive_parameters, nondimensionalize, solve_dispersion, solve_equatorial, Branch,
    DispersionRoots, EquatorialSpeeds, InterfacePressure, NondimDispersion, WaveSpec,
    ROOT_TOLERANCE, STANDARD_ATMOSPHERE,
};
use crate::error::Result;
use crate::flowfield::Wave;
use crate::geo::{
    check_wavenumber, coriolis, reduced_gravity, PhysicalConstants, Site, Stratification,
};

/// Default thermocline label, m.
pub const DEFAULT_S0: f64 = 1.0;
/// Default beta0 - (P0 - P0_tilde), Pa.
pub const DEFAULT_BETA0_OFFSET: f64 = 2000.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSetup {
    pub constants: PhysicalConstants,
    /// Latitude, radians.
    pub latitude: f64,
    pub rho0: f64,
    pub rho_plus: f64,
    /// Wavenumber, m^-1.
    pub k: f64,
    /// Amplitude parameter a, m.
    pub amplitude: f64,
    pub s0: f64,
    pub interface: InterfacePressure,
    pub p0: f64,
    pub branch: Branch,
}

impl WaveSetup {
    /// 100 m wave of amplitude 10 m at 45N with a 4 kg m^-3 density jump.
    pub fn reference() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            latitude: PI / 4.0,
            rho0: 1000.0,
            rho_plus: 1004.0,
            k: 6.28e-2,
            amplitude: 10.0,
            s0: DEFAULT_S0,
            interface: InterfacePressure::AboveThermocline(DEFAULT_BETA0_OFFSET),
            p0: STANDARD_ATMOSPHERE,
            branch: Branch::Positive,
        }
    }

    pub fn solve(&self) -> Result<SolvedWave> {
        let site = coriolis(&self.constants, self.latitude)?;
        let strat = reduced_gravity(&self.constants, self.rho0, self.rho_plus)?;
        let dispersion = solve_phase_speeds(&self.constants, &site, &strat, self.k)?;
        let spec = WaveSpec {
            k: self.k,
            amplitude: self.amplitude,
            c: dispersion.speed(self.branch),
            s0: self.s0,
            interface: self.interface,
            p0: self.p0,
        };
        let params = derive_parameters(&site, &strat, &spec)?;
        Ok(SolvedWave {
            site,
            strat,
            dispersion,
            wave: Wave::new(params, site, strat),
        })
    }
}

/// Phase speeds either from the quartic or, on the Equator, in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhaseSpeeds {
    MidLatitude {
        nondim: NondimDispersion,
        roots: DispersionRoots,
    },
    Equatorial(EquatorialSpeeds),
}

impl PhaseSpeeds {
    pub fn speed(&self, branch: Branch) -> f64 {
        match self {
            Self::MidLatitude { roots, .. } => roots.speed(branch),
            Self::Equatorial(speeds) => speeds.speed(branch),
        }
    }
}

pub fn solve_phase_speeds(
    constants: &PhysicalConstants,
    site: &Site,
    strat: &Stratification,
    k: f64,
) -> Result<PhaseSpeeds> {
    check_wavenumber(constants, strat, k)?;
    if site.is_equator() {
        return Ok(PhaseSpeeds::Equatorial(solve_equatorial(
            constants, strat, k,
        )?));
    }
    let nondim = nondimensionalize(site, strat, k)?;
    let roots = solve_dispersion(&nondim, site, strat, k, ROOT_TOLERANCE)?;
    Ok(PhaseSpeeds::MidLatitude { nondim, roots })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolvedWave {
    pub site: Site,
    pub strat: Stratification,
    pub dispersion: PhaseSpeeds,
    pub wave: Wave,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn reference_solves() {
        let solved = WaveSetup::reference().solve().unwrap();
        let p = solved.wave.params;
        assert!((p.c - 0.7913).abs() < 1e-4);
        assert!(p.m > p.k);
        assert!(matches!(solved.dispersion, PhaseSpeeds::MidLatitude { .. }));
        assert!(p.s_plus > p.s0);
    }

    #[test]
    fn equator_routes_to_closed_form() {
        let solved = WaveSetup {
            latitude: 0.0,
            ..WaveSetup::reference()
        }
        .solve()
        .unwrap();
        assert!(matches!(solved.dispersion, PhaseSpeeds::Equatorial(_)));
        assert_eq!(solved.wave.params.d, 0.0);
    }

    #[test]
    fn negative_branch_travels_west() {
        let solved = WaveSetup {
            branch: Branch::Negative,
            ..WaveSetup::reference()
        }
        .solve()
        .unwrap();
        assert!(solved.wave.params.c < 0.0);
    }

    #[test]
    fn gates_propagate() {
        let big = WaveSetup {
            amplitude: 20.0,
            ..WaveSetup::reference()
        };
        assert!(matches!(big.solve(), Err(Error::AmplitudeTooLarge { .. })));
        let long = WaveSetup {
            k: 1e-7,
            ..WaveSetup::reference()
        };
        assert!(matches!(
            long.solve(),
            Err(Error::WavenumberBelowThreshold { .. })
        ));
    }
}
