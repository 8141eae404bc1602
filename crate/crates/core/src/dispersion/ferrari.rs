//! Closed-form real roots of the dispersion quartic by Ferrari's method.
//!
//! Only used as an independent cross-check of the bracketing solver: for
//! eps << 1 the resolvent root is O(eps^2) and Cardano's formula loses digits
//! to cancellation, so accuracy here is ~1e-10 rather than machine precision.

use std::f64::consts::PI;

use super::quartic::NondimDispersion;

/// Real roots of the monic cubic y^3 + a2 y^2 + a1 y + a0, ascending.
pub fn cubic_real_roots(a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);

    let mut roots = if disc > 0.0 {
        let sq = disc.sqrt();
        vec![(-q / 2.0 + sq).cbrt() + (-q / 2.0 - sq).cbrt() - shift]
    } else if p == 0.0 {
        vec![-shift]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|j| r * (phi - 2.0 * PI * j as f64 / 3.0).cos() - shift)
            .collect()
    };
    // one Newton step per root recovers digits lost in the closed form
    for y in roots.iter_mut() {
        let f = ((*y + a2) * *y + a1) * *y + a0;
        let df = (3.0 * *y + 2.0 * a2) * *y + a1;
        if df != 0.0 {
            *y -= f / df;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn quadratic_real_roots(b: f64, c: f64, out: &mut Vec<f64>) {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    let t = -0.5 * (b + b.signum() * sq);
    if t != 0.0 {
        out.push(t);
        out.push(c / t);
    } else {
        out.push(0.0);
        out.push(0.0);
    }
}

/// Real roots of P(X) = X^4 + p X^2 + q X + r, ascending.
pub fn ferrari_real_roots(nd: &NondimDispersion) -> Vec<f64> {
    let [_, _, p, q, r] = nd.coefficients();
    let mut roots = Vec::with_capacity(4);

    if q == 0.0 {
        // biquadratic in X^2
        let mut squares = Vec::new();
        quadratic_real_roots(p, r, &mut squares);
        for z in squares {
            if z >= 0.0 {
                let s = z.sqrt();
                roots.push(s);
                roots.push(-s);
            }
        }
    } else {
        // resolvent 8y^3 + 8p y^2 + (2p^2 - 8r) y - q^2 = 0, positive root
        let y = cubic_real_roots(p, p * p / 4.0 - r, -q * q / 8.0)
            .into_iter()
            .filter(|&y| y > 0.0)
            .fold(f64::NAN, f64::max);
        let s = (2.0 * y).sqrt();
        quadratic_real_roots(-s, p / 2.0 + y + q / (2.0 * s), &mut roots);
        quadratic_real_roots(s, p / 2.0 + y - q / (2.0 * s), &mut roots);
    }
    roots.sort_by(f64::total_cmp);
    roots
}
