//! Dispersion relation: non-dimensional quartic, root isolation and the
//! dependent wave parameters.

mod ferrari;
mod parameters;
mod quartic;

use serde::{Deserialize, Serialize};

pub use ferrari::{cubic_real_roots, ferrari_real_roots};
pub use parameters::{
    derive_parameters, solve_interface, InterfacePressure, WaveParameters, WaveSpec,
    IDENTITY_TOLERANCE, INTERFACE_TOLERANCE, STANDARD_ATMOSPHERE,
};
pub use quartic::{
    continuity_residual, find_roots, nondimensionalize, root_brackets, solve_dispersion,
    solve_equatorial, DispersionRoots, EquatorialSpeeds, NondimDispersion, RootBrackets,
    MAX_BRACKET_EXPANSIONS, ROOT_TOLERANCE,
};

/// Which of the two real phase speeds to build the wave from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Eastward branch, X0+.
    #[default]
    Positive,
    Negative,
}

impl DispersionRoots {
    pub fn speed(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Positive => self.c_plus,
            Branch::Negative => self.c_minus,
        }
    }
}

impl EquatorialSpeeds {
    pub fn speed(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Positive => self.c_plus,
            Branch::Negative => self.c_minus,
        }
    }
}
