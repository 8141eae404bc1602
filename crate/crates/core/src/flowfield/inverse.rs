//! Numerical inversion of the label-to-position map.

use nalgebra::Vector3;

use super::{LagrangianLabel, Wave};
use crate::error::{Error, Result};

pub const MAX_INVERSION_ITERATIONS: usize = 50;
/// Absolute position residual accepted by the inversion, m.
pub const INVERSION_TOLERANCE: f64 = 1e-10;
const MAX_HALVINGS: usize = 30;

/// Result of an inversion with the residual |x(label) - target| before every step.
#[derive(Debug, Clone, PartialEq)]
pub struct Inversion {
    pub label: LagrangianLabel,
    pub iterations: usize,
    pub residuals: Vec<f64>,
}

impl Wave {
    /// Damped Newton on x(q, r, s, t) = target, starting from `guess` or the
    /// target itself.
    pub fn invert_map_traced(
        &self,
        target: &Vector3<f64>,
        t: f64,
        guess: Option<LagrangianLabel>,
    ) -> Result<Inversion> {
        let mut l = guess.map_or(*target, |g| g.as_vector());
        let residual_at =
            |l: &Vector3<f64>| (self.position(&LagrangianLabel::from_vector(l), t) - target).norm();
        let floor = 4.0 * f64::EPSILON * target.amax().max(1.0);
        let mut residuals = Vec::new();
        let mut norm = residual_at(&l);
        residuals.push(norm);

        let mut iterations = 0;
        while norm > floor && iterations < MAX_INVERSION_ITERATIONS {
            iterations += 1;
            let label = LagrangianLabel::from_vector(&l);
            let r = self.position(&label, t) - target;
            let Some(step) = self
                .jacobian(&label, t)
                .matrix
                .transpose()
                .lu()
                .solve(&(-r))
            else {
                let det = self.jacobian(&label, t).det();
                return Err(Error::DiffeomorphismViolation { det });
            };
            let mut lambda = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let trial = l + lambda * step;
                let trial_norm = residual_at(&trial);
                if trial_norm < norm {
                    accepted = Some((trial, trial_norm));
                    break;
                }
                lambda *= 0.5;
            }
            // no descent left: the residual is at roundoff
            let Some((next, next_norm)) = accepted else {
                break;
            };
            l = next;
            norm = next_norm;
            residuals.push(norm);
        }

        if norm <= INVERSION_TOLERANCE {
            Ok(Inversion {
                label: LagrangianLabel::from_vector(&l),
                iterations,
                residuals,
            })
        } else {
            Err(Error::InversionFailed {
                iterations,
                residual: norm,
            })
        }
    }

    pub fn invert_map(
        &self,
        target: &Vector3<f64>,
        t: f64,
        guess: Option<LagrangianLabel>,
    ) -> Result<LagrangianLabel> {
        self.invert_map_traced(target, t, guess)
            .map(|inv| inv.label)
    }

    /// Velocity of whichever particle occupies `x` at time `t`.
    pub fn eulerian_velocity(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        let label = self.invert_map(x, t, None)?;
        Ok(self.velocity(&label, t))
    }

    /// Height at horizontal position `x` of the sheet made of the particles with
    /// label `s`, at time `t`.
    pub fn sheet_height(&self, x: f64, s: f64, t: f64) -> Result<f64> {
        let p = &self.params;
        let be = p.b * self.decay(s);
        let residual_at = |q: f64| q - be * (p.k * (q - p.c * t)).sin() - x;
        let mut q = x;
        let mut residual = residual_at(q);
        let mut iterations = 0;
        while residual != 0.0 && iterations < MAX_INVERSION_ITERATIONS {
            iterations += 1;
            // dx/dq = 1 - k b e^{-ms} cos >= 1 - m a e^{-ms} > 0
            let slope = 1.0 - p.k * be * (p.k * (q - p.c * t)).cos();
            let next = q - residual / slope;
            let next_residual = residual_at(next);
            if next == q || next_residual.abs() >= residual.abs() {
                break;
            }
            q = next;
            residual = next_residual;
        }
        if residual.abs() > INVERSION_TOLERANCE {
            return Err(Error::InversionFailed {
                iterations,
                residual: residual.abs(),
            });
        }
        Ok(self.position(&LagrangianLabel::new(q, 0.0, s), t).z)
    }
}
