//! Trajectories, surface profiles and orbit geometry.

use nalgebra::Vector3;

use super::{FlowSample, LagrangianLabel, Wave};
use crate::error::{Error, Result};

/// Position of one particle of a sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub point: Vector3<f64>,
}

/// Circle traced by a particle: centred on its label, in a plane tilted away
/// from the vertical (x, z) plane by `tilt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitGeometry {
    pub center: Vector3<f64>,
    pub radius: f64,
    /// Unit normal of the orbit plane.
    pub normal: Vector3<f64>,
    /// Angle between the orbit plane and the vertical (x, z) plane, rad.
    pub tilt: f64,
}

fn uniform(start: f64, end: f64, n: usize) -> impl Iterator<Item = f64> {
    let span = end - start;
    let last = (n - 1) as f64;
    (0..n).map(move |i| start + span * i as f64 / last)
}

fn check_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 samples, got {n}"
        )));
    }
    Ok(())
}

impl Wave {
    /// `n` samples of one particle at evenly spaced times in [t_start, t_end].
    pub fn trajectory(
        &self,
        label: &LagrangianLabel,
        t_start: f64,
        t_end: f64,
        n: usize,
    ) -> Result<Vec<FlowSample>> {
        check_count(n)?;
        Ok(uniform(t_start, t_end, n)
            .map(|t| self.sample(label, t))
            .collect())
    }

    /// The sheet of label `s` along `r` at time `t`, sampled at `n` evenly
    /// spaced q in [q_start, q_end].
    pub fn profile(
        &self,
        s: f64,
        r: f64,
        t: f64,
        q_start: f64,
        q_end: f64,
        n: usize,
    ) -> Result<Vec<SurfaceSample>> {
        check_count(n)?;
        Ok(uniform(q_start, q_end, n)
            .map(|q| SurfaceSample {
                q,
                r,
                s,
                t,
                point: self.position(&LagrangianLabel::new(q, r, s), t),
            })
            .collect())
    }

    pub fn orbit(&self, label: &LagrangianLabel) -> OrbitGeometry {
        let p = &self.params;
        let e = self.decay(label.s);
        let norm = p.a.hypot(p.d);
        let normal = if norm > 0.0 {
            Vector3::new(0.0, -p.a / norm, p.d / norm)
        } else {
            Vector3::new(0.0, -1.0, 0.0)
        };
        OrbitGeometry {
            center: label.as_vector(),
            radius: p.b.abs() * e,
            normal,
            tilt: p.d.abs().atan2(p.a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flowfield::tests::reference_wave;
    use crate::setup::WaveSetup;
    use approx::assert_relative_eq;

    #[test]
    fn orbit_is_a_circle_in_its_plane() {
        let w = reference_wave();
        let p = w.params;
        let l = LagrangianLabel::new(5.0, 1.0, p.s0 + 2.0);
        let orbit = w.orbit(&l);
        assert_relative_eq!(orbit.radius, p.b * (-p.m * l.s).exp(), max_relative = 1e-15);
        for s in w.trajectory(&l, 0.0, p.period(), 101).unwrap() {
            let off = s.position - orbit.center;
            assert_relative_eq!(off.norm(), orbit.radius, max_relative = 1e-12);
            assert!(off.dot(&orbit.normal).abs() < 1e-12 * orbit.radius);
        }
    }

    #[test]
    fn orbit_tilt_and_hemisphere() {
        let w = reference_wave();
        let p = w.params;
        let tilt = w.orbit(&LagrangianLabel::new(0.0, 0.0, p.s0)).tilt;
        assert_relative_eq!(tilt, (p.d.abs() / p.a).atan(), max_relative = 1e-15);
        assert!(tilt > 0.0 && tilt < 1e-2);
        // top of the orbit (theta = pi) is displaced by +d: southward in the north
        assert!(p.d < 0.0);
        let south = WaveSetup {
            latitude: -w.site.phi,
            ..WaveSetup::reference()
        }
        .solve()
        .unwrap()
        .wave;
        assert!(south.params.d > 0.0);
        assert_relative_eq!(south.params.d, -p.d, max_relative = 1e-12);
        let eq = WaveSetup {
            latitude: 0.0,
            ..WaveSetup::reference()
        }
        .solve()
        .unwrap()
        .wave;
        assert_eq!(eq.orbit(&LagrangianLabel::new(0.0, 0.0, 1.0)).tilt, 0.0);
    }

    #[test]
    fn one_period_closes_orbit() {
        let w = reference_wave();
        let p = w.params;
        let l = LagrangianLabel::new(3.0, 0.0, p.s0);
        let traj = w.trajectory(&l, 0.0, p.period(), 2).unwrap();
        assert!((traj[0].position - traj[1].position).norm() < 1e-12);
        assert_relative_eq!(
            p.period(),
            2.0 * std::f64::consts::PI / (p.k * p.c),
            max_relative = 1e-15
        );
    }

    #[test]
    fn decay_over_ten_metres() {
        let w = reference_wave();
        let p = w.params;
        let top = w.orbit(&LagrangianLabel::new(0.0, 0.0, p.s0)).radius;
        let deeper = w.orbit(&LagrangianLabel::new(0.0, 0.0, p.s0 + 10.0)).radius;
        assert_relative_eq!(deeper / top, (-10.0 * p.m).exp(), max_relative = 1e-14);
        // a wavelength above, the orbit has shrunk by e^{-2 pi} or more
        let far = w
            .orbit(&LagrangianLabel::new(0.0, 0.0, p.s0 + p.wavelength / 2.0))
            .radius;
        assert!(far / top <= (-std::f64::consts::PI).exp() + 1e-12);
    }

    #[test]
    fn trochoid_crests_wider_than_troughs() {
        // dx/dq = 1 - k b e^{-ms} cos(theta) is smallest at the trough (theta = 0),
        // so the particles bunch up there
        let w = reference_wave();
        let p = w.params;
        let prof = w.profile(p.s0, 0.0, 0.0, 0.0, p.wavelength, 4001).unwrap();
        let mean: f64 = prof.iter().map(|s| s.point.z).sum::<f64>() / prof.len() as f64;
        let below = prof
            .windows(2)
            .filter(|w| w[0].point.z < mean)
            .map(|w| w[1].point.x - w[0].point.x)
            .sum::<f64>();
        let above = prof
            .windows(2)
            .filter(|w| w[0].point.z >= mean)
            .map(|w| w[1].point.x - w[0].point.x)
            .sum::<f64>();
        assert!(above > below, "below={below} above={above}");
    }

    #[test]
    fn velocity_does_not_vary_along_r() {
        let w = reference_wave();
        let p = w.params;
        for r in [-50.0, 0.0, 33.0] {
            let l = LagrangianLabel::new(4.0, r, p.s0 + 1.0);
            assert_eq!(
                w.velocity(&l, 1.0),
                w.velocity(&LagrangianLabel::new(4.0, 0.0, p.s0 + 1.0), 1.0)
            );
        }
    }

    #[test]
    fn sample_count_is_validated() {
        let w = reference_wave();
        assert!(w
            .trajectory(&LagrangianLabel::new(0.0, 0.0, 1.0), 0.0, 1.0, 1)
            .is_err());
        assert_eq!(
            w.profile(1.0, 0.0, 0.0, 0.0, 10.0, 1000).unwrap().len(),
            1000
        );
    }
}
