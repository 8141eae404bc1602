use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised while configuring or solving a wave.
///
/// Domain errors describe inputs outside the regime where the exact solution
/// exists; numeric errors describe a solver or identity check that did not
/// reach its tolerance. [`Error::is_numeric`] separates the two.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid physical constants: {0}")]
    InvalidConstants(String),

    #[error("latitude {phi} rad lies outside the open interval (-pi/2, pi/2)")]
    LatitudeOutOfRange { phi: f64 },

    #[error(
        "unstable stratification: need rho_plus > rho0 > 0, got rho0 = {rho0}, rho_plus = {rho_plus}"
    )]
    UnstableStratification { rho0: f64, rho_plus: f64 },

    #[error(
        "wavenumber {k} m^-1 must exceed the threshold 4*Omega^2/g_tilde = {threshold:e} m^-1"
    )]
    WavenumberBelowThreshold { k: f64, threshold: f64 },

    #[error("f = 0 on the Equator: the quartic dispersion polynomial is undefined there, use solve_equatorial")]
    EquatorialBranch,

    #[error(
        "outside the mid-latitude regime: discriminant of P'(X) is {discriminant:e} (must be negative); \
         the root analysis covers roughly 23.4 to 75 degrees of latitude"
    )]
    OutsideMidLatitudes { discriminant: f64 },

    #[error("no sign change of P(X) found for the {branch} root in [{lo}, {hi}] after {expansions} expansions")]
    BracketFailure {
        branch: &'static str,
        lo: f64,
        hi: f64,
        expansions: usize,
    },

    #[error(
        "{what} did not converge after {iterations} iterations (x = {x}, residual = {residual:e})"
    )]
    NonConvergence {
        what: &'static str,
        x: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("amplitude {amplitude} m exceeds the upper bound 1/m = {bound} m")]
    AmplitudeTooLarge { amplitude: f64, bound: f64 },

    #[error("evanescent regime: k^2 c^2 = {kc2:e} must exceed f^2 = {f2:e}")]
    Evanescent { kc2: f64, f2: f64 },

    #[error("interface pressure beta0 = {beta0} Pa must exceed P0 - P0_tilde = {floor} Pa")]
    InterfaceOrdering { beta0: f64, floor: f64 },

    #[error("identity {what} violated: relative residual {residual:e}")]
    IdentityViolation { what: &'static str, residual: f64 },

    #[error("Jacobian determinant {det} is not a valid local diffeomorphism")]
    DiffeomorphismViolation { det: f64 },

    #[error(
        "map inversion did not converge after {iterations} iterations (residual {residual:e} m)"
    )]
    InversionFailed { iterations: usize, residual: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for solver and tolerance failures, false for out-of-domain input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::BracketFailure { .. }
                | Error::NonConvergence { .. }
                | Error::IdentityViolation { .. }
                | Error::DiffeomorphismViolation { .. }
                | Error::InversionFailed { .. }
        )
    }
}
