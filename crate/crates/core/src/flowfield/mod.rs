//! Evaluation of the explicit Lagrangian solution.
//!
//! A particle labelled (q, r, s) sits at
//!
//! ```text
//! x = q - b e^{-ms} sin(theta)
//! y = r - d e^{-ms} cos(theta)
//! z = s - a e^{-ms} cos(theta),      theta = k (q - c t)
//! ```
//!
//! Everything here is a closed form in the labels and time; the only
//! iterative piece is the inverse map in [`inverse`].

mod inverse;
mod sampling;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::dispersion::WaveParameters;
use crate::error::{Error, Result};
use crate::geo::{Site, Stratification};

pub use inverse::{Inversion, MAX_INVERSION_ITERATIONS};
pub use sampling::{OrbitGeometry, SurfaceSample};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagrangianLabel {
    /// Longitudinal label, m.
    pub q: f64,
    /// Latitudinal label, m.
    pub r: f64,
    /// Vertical label, m.
    pub s: f64,
}

impl LagrangianLabel {
    pub fn new(q: f64, r: f64, s: f64) -> Self {
        Self { q, r, s }
    }

    pub fn as_vector(&self) -> Vector3<f64> {
        Vector3::new(self.q, self.r, self.s)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }
}

/// Everything known about one particle at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowSample {
    pub t: f64,
    pub label: LagrangianLabel,
    pub position: Vector3<f64>,
    pub velocity: Vector3<f64>,
    pub acceleration: Vector3<f64>,
    pub pressure: f64,
    pub vorticity: Vector3<f64>,
    pub jacobian_det: f64,
}

/// The label-to-position Jacobian, row i holding the derivatives of (x, y, z)
/// with respect to the i-th label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian {
    pub matrix: Matrix3<f64>,
}

impl Jacobian {
    pub fn det(&self) -> f64 {
        self.matrix.determinant()
    }

    /// d(q, r, s)/d(x, y, z) in the same row convention.
    pub fn inverse(&self) -> Result<Matrix3<f64>> {
        let det = self.det();
        if !(det.is_finite() && det > 0.0) {
            return Err(Error::DiffeomorphismViolation { det });
        }
        self.matrix
            .try_inverse()
            .ok_or(Error::DiffeomorphismViolation { det })
    }
}

/// A solved wave bound to its site and stratification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub params: WaveParameters,
    pub site: Site,
    pub strat: Stratification,
}

impl Wave {
    pub fn new(params: WaveParameters, site: Site, strat: Stratification) -> Self {
        Self {
            params,
            site,
            strat,
        }
    }

    pub fn phase(&self, label: &LagrangianLabel, t: f64) -> f64 {
        self.params.k * (label.q - self.params.c * t)
    }

    pub fn decay(&self, s: f64) -> f64 {
        (-self.params.m * s).exp()
    }

    /// Label q at which the phase equals `theta` at time `t`.
    pub fn q_for_phase(&self, theta: f64, t: f64) -> f64 {
        theta / self.params.k + self.params.c * t
    }

    pub fn contains(&self, label: &LagrangianLabel) -> bool {
        label.s >= self.params.s0 && label.s <= self.params.s_plus
    }

    pub fn position(&self, label: &LagrangianLabel, t: f64) -> Vector3<f64> {
        let p = &self.params;
        let e = self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        Vector3::new(
            label.q - p.b * e * sin,
            label.r - p.d * e * cos,
            label.s - p.a * e * cos,
        )
    }

    pub fn velocity(&self, label: &LagrangianLabel, t: f64) -> Vector3<f64> {
        let p = &self.params;
        let kce = p.k * p.c * self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        Vector3::new(kce * p.b * cos, -kce * p.d * sin, -kce * p.a * sin)
    }

    pub fn acceleration(&self, label: &LagrangianLabel, t: f64) -> Vector3<f64> {
        let p = &self.params;
        let kc = p.k * p.c;
        let kce = kc * kc * self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        Vector3::new(kce * p.b * sin, kce * p.d * cos, kce * p.a * cos)
    }

    pub fn jacobian(&self, label: &LagrangianLabel, t: f64) -> Jacobian {
        let p = &self.params;
        let e = self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        #[rustfmt::skip]
        let matrix = Matrix3::new(
            1.0 - p.k * p.b * e * cos, p.k * p.d * e * sin, p.k * p.a * e * sin,
            0.0,                       1.0,                 0.0,
            p.m * p.b * e * sin,       p.m * p.d * e * cos, 1.0 + p.m * p.a * e * cos,
        );
        Jacobian { matrix }
    }

    /// 1 - k m a b e^{-2ms}: the determinant once m a = k b, independent of time.
    pub fn jacobian_det_closed_form(&self, s: f64) -> f64 {
        let p = &self.params;
        1.0 - p.k * p.m * p.a * p.b * (-2.0 * p.m * s).exp()
    }

    /// Coefficient of e^{-ms} cos(theta) inside the pressure bracket:
    /// c a f^ - c d f - k c^2 b - a g.
    fn pressure_wave_coefficient(&self) -> f64 {
        let p = &self.params;
        p.c * p.a * self.site.f_hat
            - p.c * p.d * self.site.f
            - p.k * p.c * p.c * p.b
            - p.a * self.strat.g
    }

    /// k^2 c^2 b^2 - f^ k c a b + f k c b d, twice the e^{-2ms} coefficient.
    fn pressure_mean_coefficient(&self) -> f64 {
        let p = &self.params;
        let kc = p.k * p.c;
        kc * kc * p.b * p.b - self.site.f_hat * kc * p.a * p.b + self.site.f * kc * p.b * p.d
    }

    /// Closed-form pressure. The cos^2 term carries a^2 + d^2 - b^2, which
    /// vanishes for solved parameters, and is left out.
    pub fn pressure(&self, label: &LagrangianLabel, t: f64) -> f64 {
        let e = self.decay(label.s);
        let cos = self.phase(label, t).cos();
        -self.strat.rho0
            * (-0.5 * self.pressure_mean_coefficient() * e * e
                + self.pressure_wave_coefficient() * e * cos
                + self.strat.g * label.s)
            + self.params.p0_tilde
    }

    /// (P_q, P_r, P_s) obtained by differentiating [`Wave::pressure`].
    pub fn pressure_label_gradient(&self, label: &LagrangianLabel, t: f64) -> Vector3<f64> {
        let p = &self.params;
        let rho0 = self.strat.rho0;
        let e = self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        let wave = self.pressure_wave_coefficient();
        Vector3::new(
            rho0 * p.k * wave * e * sin,
            0.0,
            -rho0
                * (p.m * self.pressure_mean_coefficient() * e * e - p.m * wave * e * cos
                    + self.strat.g),
        )
    }

    /// (P_x, P_y, P_z) demanded by the momentum equations for this particle motion.
    pub fn pressure_gradient_dynamic(&self, label: &LagrangianLabel, t: f64) -> Vector3<f64> {
        let p = &self.params;
        let (f, fh) = (self.site.f, self.site.f_hat);
        let rho0 = self.strat.rho0;
        let kc = p.k * p.c;
        let e = self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        Vector3::new(
            -rho0 * (kc * kc * p.b - kc * p.a * fh + kc * p.d * f) * e * sin,
            -rho0 * kc * (kc * p.d + p.b * f) * e * cos,
            -rho0 * (kc * kc * p.a * e * cos - fh * kc * p.b * e * cos + self.strat.g),
        )
    }

    /// Closed-form vorticity (w_y - v_z, u_z - w_x, v_x - u_y).
    pub fn vorticity(&self, label: &LagrangianLabel, t: f64) -> Vector3<f64> {
        let p = &self.params;
        let f = self.site.f;
        let e = self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        let mae = p.m * p.a * e;
        let prefactor = 1.0 / (1.0 - mae * mae);
        let (m2, k2) = (p.m * p.m, p.k * p.k);
        prefactor
            * Vector3::new(
                m2 * p.a * f / p.k * e * sin,
                -p.c * (m2 - k2) * p.a * e * cos + p.c * p.m * p.a * p.a * (m2 + k2) * e * e,
                f * p.m * p.a * (cos + mae) * e,
            )
    }

    /// d(u, v, w)/d(q, r, s), row i holding the derivatives with respect to label i.
    pub fn velocity_label_gradient(&self, label: &LagrangianLabel, t: f64) -> Matrix3<f64> {
        let p = &self.params;
        let kce = p.k * p.c * self.decay(label.s);
        let (sin, cos) = self.phase(label, t).sin_cos();
        let (k, m) = (p.k, p.m);
        #[rustfmt::skip]
        let grad = Matrix3::new(
            -k * kce * p.b * sin, -k * kce * p.d * cos, -k * kce * p.a * cos,
            0.0,                  0.0,                  0.0,
            -m * kce * p.b * cos,  m * kce * p.d * sin,  m * kce * p.a * sin,
        );
        grad
    }

    pub fn sample(&self, label: &LagrangianLabel, t: f64) -> FlowSample {
        FlowSample {
            t,
            label: *label,
            position: self.position(label, t),
            velocity: self.velocity(label, t),
            acceleration: self.acceleration(label, t),
            pressure: self.pressure(label, t),
            vorticity: self.vorticity(label, t),
            jacobian_det: self.jacobian(label, t).det(),
        }
    }
}
