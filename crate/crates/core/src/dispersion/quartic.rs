use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geo::{PhysicalConstants, Site, Stratification};

/// Default relative residual accepted for a polished root.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// How many times a failing bracket may be doubled before giving up.
pub const MAX_BRACKET_EXPANSIONS: usize = 10;

const MAX_BISECTIONS: usize = 200;
const MAX_NEWTON_STEPS: usize = 50;

/// The dispersion relation in the variables X = c sqrt(k/g~), eps = f/sqrt(g~ k),
/// F = f^/f, where it becomes
///
/// P(X) = X^4 - eps^2 (1 + F^2) X^2 - 2 F eps X - 1.
///
/// P only depends on eps^2 and the product eps*F, both of which are
/// hemisphere-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NondimDispersion {
    pub epsilon: f64,
    pub f_ratio: f64,
}

impl NondimDispersion {
    /// Builds the polynomial from its two ratios directly. `epsilon = 0` is the
    /// non-rotating limit P(X) = X^4 - 1.
    pub fn new(epsilon: f64, f_ratio: f64) -> Self {
        Self { epsilon, f_ratio }
    }

    /// Width eps*F of the root brackets; positive off the Equator.
    pub fn bracket_width(&self) -> f64 {
        self.epsilon * self.f_ratio
    }

    /// Coefficients of X^4, X^3, X^2, X, 1.
    pub fn coefficients(&self) -> [f64; 5] {
        let eps2 = self.epsilon * self.epsilon;
        [
            1.0,
            0.0,
            -eps2 * (1.0 + self.f_ratio * self.f_ratio),
            -2.0 * self.bracket_width(),
            -1.0,
        ]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [c4, c3, c2, c1, c0] = self.coefficients();
        (((c4 * x + c3) * x + c2) * x + c1) * x + c0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let [c4, c3, c2, c1, _] = self.coefficients();
        ((4.0 * c4 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1
    }

    /// Discriminant of P'(X): 128 eps^6 (1+F^2)^3 - 1728 F^2 eps^2.
    /// Negative means P has a single critical point and hence exactly two real roots.
    pub fn derivative_discriminant(&self) -> f64 {
        let eps2 = self.epsilon * self.epsilon;
        let s = 1.0 + self.f_ratio * self.f_ratio;
        let ef = self.bracket_width();
        128.0 * eps2 * eps2 * eps2 * s * s * s - 1728.0 * ef * ef
    }

    /// Magnitude used to scale root residuals: max(1, |X|^4).
    pub fn residual_scale(x: f64) -> f64 {
        x.powi(4).max(1.0)
    }
}

pub fn nondimensionalize(site: &Site, strat: &Stratification, k: f64) -> Result<NondimDispersion> {
    if site.f == 0.0 {
        return Err(Error::EquatorialBranch);
    }
    let threshold = 4.0 * site.omega * site.omega / strat.g_tilde;
    if !(k.is_finite() && k > threshold) {
        return Err(Error::WavenumberBelowThreshold { k, threshold });
    }
    Ok(NondimDispersion {
        epsilon: site.f / (strat.g_tilde * k).sqrt(),
        f_ratio: site.f_hat / site.f,
    })
}

/// Verified sign-change intervals around the two real roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootBrackets {
    pub positive: (f64, f64),
    pub negative: (f64, f64),
    /// Number of doublings needed beyond the nominal (1, 1+eps F) and (-1, -1+eps F).
    pub expansions: usize,
}

/// Brackets X0+ in (1, 1 + eps F) and X0- in (-1, -1 + eps F), widening a side
/// geometrically when higher-order terms spoil the nominal sign pattern.
pub fn root_brackets(nd: &NondimDispersion) -> Result<RootBrackets> {
    let discriminant = nd.derivative_discriminant();
    if nd.epsilon != 0.0 && !(discriminant < 0.0) {
        return Err(Error::OutsideMidLatitudes { discriminant });
    }
    let width = nd.bracket_width();
    if !(width.is_finite() && width >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "bracket width eps*F = {width} must be non-negative"
        )));
    }
    // a zero width only happens at eps = 0, where +-1 are exact roots
    let base = if width > 0.0 { width } else { f64::EPSILON };

    let mut expansions = 0;

    // P(0) = -1 < 0 and P -> +inf, so the positive root sits where P turns positive.
    let (mut lo, mut hi) = (1.0, 1.0 + width);
    let mut grow = base;
    loop {
        let (plo, phi) = (nd.eval(lo), nd.eval(hi));
        if plo <= 0.0 && phi >= 0.0 {
            break;
        }
        if expansions == MAX_BRACKET_EXPANSIONS {
            return Err(Error::BracketFailure {
                branch: "positive",
                lo,
                hi,
                expansions,
            });
        }
        grow *= 2.0;
        if phi < 0.0 {
            hi = 1.0 + grow;
        }
        if plo > 0.0 {
            lo = (1.0 - grow).max(0.0);
        }
        expansions += 1;
    }
    let positive = (lo, hi);

    let (mut lo, mut hi) = (-1.0, -1.0 + width);
    let mut grow = base;
    let mut neg_expansions = 0;
    loop {
        let (plo, phi) = (nd.eval(lo), nd.eval(hi));
        if plo >= 0.0 && phi <= 0.0 {
            break;
        }
        if neg_expansions == MAX_BRACKET_EXPANSIONS {
            return Err(Error::BracketFailure {
                branch: "negative",
                lo,
                hi,
                expansions: neg_expansions,
            });
        }
        grow *= 2.0;
        if phi > 0.0 {
            hi = (-1.0 + grow).min(0.0);
        }
        if plo < 0.0 {
            lo = -1.0 - grow;
        }
        neg_expansions += 1;
    }

    Ok(RootBrackets {
        positive,
        negative: (lo, hi),
        expansions: expansions + neg_expansions,
    })
}

/// Bisection down to a narrow interval, then safeguarded Newton until the step
/// stalls at machine precision. Fails unless |P(x)| <= tol * max(1, x^4).
fn refine(nd: &NondimDispersion, (mut lo, mut hi): (f64, f64), tol: f64) -> Result<f64> {
    let mut plo = nd.eval(lo);
    if plo == 0.0 {
        return Ok(lo);
    }
    if nd.eval(hi) == 0.0 {
        return Ok(hi);
    }

    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= 1e-10 * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let pm = nd.eval(mid);
        if pm == 0.0 {
            return Ok(mid);
        }
        if (pm < 0.0) == (plo < 0.0) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut iterations = 0;
    while iterations < MAX_NEWTON_STEPS {
        iterations += 1;
        let px = nd.eval(x);
        if px == 0.0 {
            return Ok(x);
        }
        if (px < 0.0) == (plo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - px / nd.derivative(x);
        if !(next.is_finite() && next >= lo && next <= hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 2.0 * f64::EPSILON * x.abs() {
            break;
        }
    }

    let residual = nd.eval(x).abs();
    if residual <= tol * NondimDispersion::residual_scale(x) {
        Ok(x)
    } else {
        Err(Error::NonConvergence {
            what: "quartic root refinement",
            x,
            residual,
            iterations,
        })
    }
}

/// The two real roots (X0+, X0-) of P in non-dimensional form.
pub fn find_roots(nd: &NondimDispersion, tol: f64) -> Result<(f64, f64)> {
    let brackets = root_brackets(nd)?;
    Ok((
        refine(nd, brackets.positive, tol)?,
        refine(nd, brackets.negative, tol)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionRoots {
    pub x_plus: f64,
    pub x_minus: f64,
    /// Phase speed of the eastward branch, m s^-1.
    pub c_plus: f64,
    /// Phase speed of the opposite branch, m s^-1.
    pub c_minus: f64,
}

/// Relative residual of rho0^2 c^2 (c^2 k^2 - f^2) = (rho0 c f^ + g (rho+ - rho0))^2.
pub fn continuity_residual(site: &Site, strat: &Stratification, k: f64, c: f64) -> f64 {
    let lhs = strat.rho0 * strat.rho0 * c * c * (c * c * k * k - site.f * site.f);
    let rhs = (strat.rho0 * c * site.f_hat + strat.g * strat.density_jump()).powi(2);
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs())
}

pub fn solve_dispersion(
    nd: &NondimDispersion,
    site: &Site,
    strat: &Stratification,
    k: f64,
    tol: f64,
) -> Result<DispersionRoots> {
    let (x_plus, x_minus) = find_roots(nd, tol)?;
    let speed = (strat.g_tilde / k).sqrt();
    let roots = DispersionRoots {
        x_plus,
        x_minus,
        c_plus: x_plus * speed,
        c_minus: x_minus * speed,
    };
    for c in [roots.c_plus, roots.c_minus] {
        let residual = continuity_residual(site, strat, k, c);
        if residual > tol {
            return Err(Error::IdentityViolation {
                what: "dimensional dispersion relation",
                residual,
            });
        }
    }
    Ok(roots)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquatorialSpeeds {
    pub c_plus: f64,
    pub c_minus: f64,
}

/// Roots of k c^2 - 2 Omega c - g~ = 0, the f = 0 reduction of the dispersion relation.
pub fn solve_equatorial(
    constants: &PhysicalConstants,
    strat: &Stratification,
    k: f64,
) -> Result<EquatorialSpeeds> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidInput(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    let omega = constants.omega;
    let c_plus = (omega + (omega * omega + k * strat.g_tilde).sqrt()) / k;
    // product of the roots is -g~/k; avoids subtracting nearly equal terms
    let c_minus = -strat.g_tilde / (k * c_plus);
    Ok(EquatorialSpeeds { c_plus, c_minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::{coriolis, reduced_gravity};
    use approx::assert_relative_eq;

    fn reference_case() -> (PhysicalConstants, Site, Stratification, f64) {
        let c = PhysicalConstants::default();
        let site = Site::from_degrees(&c, 45.0).unwrap();
        let strat = reduced_gravity(&c, 1000.0, 1004.0).unwrap();
        (c, site, strat, 6.28e-2)
    }

    /// Sign changes of P on a uniform grid; each crossing reported at the midpoint.
    fn sign_scan(nd: &NondimDispersion, lo: f64, hi: f64, step: f64) -> Vec<f64> {
        let n = ((hi - lo) / step).round() as usize;
        let mut crossings = Vec::new();
        let mut prev = nd.eval(lo);
        for i in 1..=n {
            let x = lo + i as f64 * step;
            let p = nd.eval(x);
            if (p > 0.0) != (prev > 0.0) {
                crossings.push(x - 0.5 * step);
            }
            prev = p;
        }
        crossings
    }

    #[test]
    fn equal_coriolis_parameters_give_unit_ratio() {
        let (_, site, strat, k) = reference_case();
        let nd = nondimensionalize(&site, &strat, k).unwrap();
        assert_relative_eq!(nd.f_ratio, 1.0, max_relative = 1e-15);
        assert!((nd.epsilon - 2.077e-3).abs() < 1e-6);
    }

    #[test]
    fn coefficient_vector() {
        let nd = NondimDispersion::new(0.05, 1.0);
        let c = nd.coefficients();
        assert_eq!(c[0], 1.0);
        assert_eq!(c[1], 0.0);
        assert_relative_eq!(c[2], -0.005, max_relative = 1e-14);
        assert_relative_eq!(c[3], -0.1, max_relative = 1e-14);
        assert_eq!(c[4], -1.0);
    }

    #[test]
    fn equator_is_routed_elsewhere() {
        let (c, _, strat, k) = reference_case();
        let site = coriolis(&c, 0.0).unwrap();
        assert_eq!(
            nondimensionalize(&site, &strat, k),
            Err(Error::EquatorialBranch)
        );
    }

    #[test]
    fn wavenumber_gate_applies() {
        let (_, site, strat, _) = reference_case();
        assert!(matches!(
            nondimensionalize(&site, &strat, 1e-8),
            Err(Error::WavenumberBelowThreshold { .. })
        ));
    }

    #[test]
    fn reference_bracket_changes_sign() {
        let (_, site, strat, k) = reference_case();
        let nd = nondimensionalize(&site, &strat, k).unwrap();
        let b = root_brackets(&nd).unwrap();
        assert_eq!(b.expansions, 0);
        assert_eq!(b.positive.0, 1.0);
        assert!((b.positive.1 - 1.002077).abs() < 1e-6);
        assert!(nd.eval(b.positive.0) < 0.0 && nd.eval(b.positive.1) > 0.0);
        assert!(nd.eval(b.negative.0) > 0.0 && nd.eval(b.negative.1) < 0.0);
    }

    #[test]
    fn discriminant_gate() {
        let nd = NondimDispersion::new(0.05, 2.4);
        let expected = 128.0 * 0.05f64.powi(6) * (1.0 + 2.4f64 * 2.4).powi(3)
            - 1728.0 * 2.4 * 2.4 * 0.05 * 0.05;
        assert_relative_eq!(nd.derivative_discriminant(), expected, max_relative = 1e-13);
        assert!(nd.derivative_discriminant() < 0.0);
        assert!(root_brackets(&nd).is_ok());

        let strong = NondimDispersion::new(1.0, 0.1);
        assert!(strong.derivative_discriminant() > 0.0);
        assert!(matches!(
            root_brackets(&strong),
            Err(Error::OutsideMidLatitudes { .. })
        ));
    }

    #[test]
    fn non_rotating_limit() {
        let nd = NondimDispersion::new(0.0, 1.0);
        let b = root_brackets(&nd).unwrap();
        assert_eq!(b.positive, (1.0, 1.0));
        let (xp, xm) = find_roots(&nd, ROOT_TOLERANCE).unwrap();
        assert_eq!((xp, xm), (1.0, -1.0));
    }

    #[test]
    fn bracket_expands_when_nominal_sign_fails() {
        // large eps: P(-1) = -eps^2 (1+F^2) + 2 eps F < 0 when eps (1 + F^2) > 2F
        let nd = NondimDispersion::new(0.4, 0.1);
        assert!(nd.eval(-1.0) < 0.0);
        assert!(nd.derivative_discriminant() < 0.0);
        let b = root_brackets(&nd).unwrap();
        assert!(b.expansions > 0);
        let (xp, xm) = find_roots(&nd, ROOT_TOLERANCE).unwrap();
        assert!(xm < -1.0);
        assert!(nd.eval(xp).abs() < 1e-12 && nd.eval(xm).abs() < 1e-12);
    }

    #[test]
    fn reference_speed_against_sign_scan() {
        let (_, site, strat, k) = reference_case();
        let nd = nondimensionalize(&site, &strat, k).unwrap();
        let roots = solve_dispersion(&nd, &site, &strat, k, ROOT_TOLERANCE).unwrap();

        let scan = sign_scan(&nd, 0.9, 1.1, 1e-7);
        assert_eq!(scan.len(), 1);
        assert!((roots.x_plus - scan[0]).abs() <= 1e-7);

        let base = (strat.g_tilde / k).sqrt();
        assert!((base - 0.7905).abs() < 1e-4);
        let delta = roots.c_plus / base - 1.0;
        let ef = nd.bracket_width();
        assert!(delta > 0.0 && delta < ef);
        assert!((ef - 2.1e-3).abs() < 0.05e-3);
        assert!(roots.x_plus - 1.0 > 0.0 && roots.x_plus - 1.0 < ef);
        assert!(nd.eval(roots.x_plus).abs() <= ROOT_TOLERANCE);
    }

    #[test]
    fn continuity_holds_for_both_branches() {
        let (_, site, strat, k) = reference_case();
        let nd = nondimensionalize(&site, &strat, k).unwrap();
        let roots = solve_dispersion(&nd, &site, &strat, k, ROOT_TOLERANCE).unwrap();
        assert!(continuity_residual(&site, &strat, k, roots.c_plus) < 1e-12);
        assert!(continuity_residual(&site, &strat, k, roots.c_minus) < 1e-12);
        assert!(roots.x_minus.abs() <= roots.x_plus);
    }

    #[test]
    fn equatorial_closed_form() {
        let (c, _, strat, k) = reference_case();
        let sp = solve_equatorial(&c, &strat, k).unwrap();
        assert!((sp.c_plus - 0.7917).abs() < 1e-4);
        for v in [sp.c_plus, sp.c_minus] {
            let r = k * v * v - 2.0 * c.omega * v - strat.g_tilde;
            assert!(r.abs() <= 1e-12 * strat.g_tilde);
        }
        let still = PhysicalConstants { omega: 0.0, ..c };
        let sp = solve_equatorial(&still, &strat, k).unwrap();
        let base = (strat.g_tilde / k).sqrt();
        assert_relative_eq!(sp.c_plus, base, max_relative = 1e-15);
        assert_relative_eq!(sp.c_minus, -base, max_relative = 1e-15);
        assert!(solve_equatorial(&c, &strat, 0.0).is_err());
    }

    #[test]
    fn mid_latitude_solver_approaches_equatorial_speed() {
        let (c, _, strat, k) = reference_case();
        let site = coriolis(&c, 1e-3).unwrap();
        let nd = nondimensionalize(&site, &strat, k).unwrap();
        let roots = solve_dispersion(&nd, &site, &strat, k, ROOT_TOLERANCE).unwrap();
        let eq = solve_equatorial(&c, &strat, k).unwrap();
        assert!((roots.c_plus / eq.c_plus - 1.0).abs() < 1e-4);
        assert!((roots.c_minus / eq.c_minus - 1.0).abs() < 1e-4);
    }

    #[test]
    fn hemisphere_mirror_leaves_roots_unchanged() {
        let (c, site, strat, k) = reference_case();
        let south = coriolis(&c, -site.phi).unwrap();
        let n = nondimensionalize(&site, &strat, k).unwrap();
        let s = nondimensionalize(&south, &strat, k).unwrap();
        assert!(s.epsilon < 0.0 && s.f_ratio < 0.0 && s.bracket_width() > 0.0);
        let rn = solve_dispersion(&n, &site, &strat, k, ROOT_TOLERANCE).unwrap();
        let rs = solve_dispersion(&s, &south, &strat, k, ROOT_TOLERANCE).unwrap();
        assert_relative_eq!(rn.c_plus, rs.c_plus, max_relative = 1e-15);
        assert_relative_eq!(rn.c_minus, rs.c_minus, max_relative = 1e-15);
    }

    #[test]
    fn wide_scan_finds_exactly_two_roots() {
        for (eps, f) in [(1e-3, 0.42), (0.05, 2.4), (0.02, 1.0)] {
            let nd = NondimDispersion::new(eps, f);
            let scan = sign_scan(&nd, -3.0, 3.0, 1e-4);
            assert_eq!(scan.len(), 2, "eps={eps} F={f}");
            let (xp, xm) = find_roots(&nd, ROOT_TOLERANCE).unwrap();
            assert!((scan[1] - xp).abs() <= 1e-4 && (scan[0] - xm).abs() <= 1e-4);
        }
    }
}
