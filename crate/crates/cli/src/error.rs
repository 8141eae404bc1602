use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Wave(#[from] internal_waves::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed config {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl CliError {
    /// 2 for anything the user can fix in the configuration, 3 for numeric failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Wave(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }

    /// What to change when the input falls outside the solution's regime.
    pub fn hint(&self) -> Option<String> {
        use internal_waves::Error as E;
        let CliError::Wave(e) = self else { return None };
        Some(match e {
            E::WavenumberBelowThreshold { threshold, .. } => {
                format!("use a wavenumber above {threshold:e} m^-1 (a wavelength below {:e} m)", 2.0 * std::f64::consts::PI / threshold)
            }
            E::OutsideMidLatitudes { .. } => {
                "the two-root analysis needs a negative discriminant; use a shorter wave or a latitude between about 23 and 75 degrees".into()
            }
            E::EquatorialBranch => "on the Equator use --lat 0, which selects the closed-form speeds".into(),
            E::AmplitudeTooLarge { bound, .. } => format!("reduce --amplitude below 1/m = {bound} m"),
            E::Evanescent { .. } => "the wave does not oscillate vertically here; pick the other branch or a shorter wave".into(),
            E::InterfaceOrdering { .. } => "use a positive --beta0-offset".into(),
            E::UnstableStratification { .. } => "--rho-plus must exceed --rho0".into(),
            E::LatitudeOutOfRange { .. } => "latitude must lie strictly between -90 and 90 degrees".into(),
            _ => return None,
        })
    }
}
