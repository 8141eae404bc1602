//! Central-difference derivatives of the closed-form fields.

use nalgebra::{Matrix3, Vector3};

use crate::error::Result;
use crate::flowfield::{LagrangianLabel, Wave};

/// The step actually taken once x0 + h is rounded.
fn effective_step(x0: f64, h: f64) -> (f64, f64, f64) {
    let plus = x0 + h;
    let minus = x0 - h;
    (plus, minus, plus - minus)
}

/// Central-difference derivative of `f` with respect to label i.
pub(crate) fn label_derivative<T, F>(label: &LagrangianLabel, i: usize, h: f64, f: F) -> T
where
    F: Fn(&LagrangianLabel) -> T,
    T: std::ops::Sub<Output = T> + std::ops::Div<f64, Output = T>,
{
    let v = label.as_vector();
    let (plus, minus, width) = effective_step(v[i], h);
    let mut up = v;
    let mut down = v;
    up[i] = plus;
    down[i] = minus;
    (f(&LagrangianLabel::from_vector(&up)) - f(&LagrangianLabel::from_vector(&down))) / width
}

/// (dP/dq, dP/dr, dP/ds) of the closed-form pressure.
pub fn fd_label_gradient(wave: &Wave, label: &LagrangianLabel, t: f64, h: f64) -> Vector3<f64> {
    Vector3::from_fn(|i, _| label_derivative(label, i, h, |l| wave.pressure(l, t)))
}

/// Eulerian velocity gradient G[i][j] = du_j/dx_i at the current position of
/// `label`, each neighbouring velocity found by inverting the map.
pub fn fd_velocity_gradient(
    wave: &Wave,
    label: &LagrangianLabel,
    t: f64,
    h: f64,
) -> Result<Matrix3<f64>> {
    let x0 = wave.position(label, t);
    let mut grad = Matrix3::zeros();
    for i in 0..3 {
        let (plus, minus, width) = effective_step(x0[i], h);
        let mut up = x0;
        let mut down = x0;
        up[i] = plus;
        down[i] = minus;
        let u_up = wave.velocity(&wave.invert_map(&up, t, Some(*label))?, t);
        let u_down = wave.velocity(&wave.invert_map(&down, t, Some(*label))?, t);
        grad.set_row(i, &((u_up - u_down) / width).transpose());
    }
    Ok(grad)
}

/// Curl of a velocity gradient in the G[i][j] = du_j/dx_i convention.
pub(crate) fn curl(g: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(
        g[(1, 2)] - g[(2, 1)],
        g[(2, 0)] - g[(0, 2)],
        g[(0, 1)] - g[(1, 0)],
    )
}

/// Vorticity from the inverse Jacobian times the label gradient of velocity.
pub fn matrix_product_vorticity(
    wave: &Wave,
    label: &LagrangianLabel,
    t: f64,
) -> Result<Vector3<f64>> {
    let inv = wave.jacobian(label, t).inverse()?;
    Ok(curl(&(inv * wave.velocity_label_gradient(label, t))))
}
