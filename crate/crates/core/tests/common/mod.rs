//! Reference integrator shared by the integration tests.
//!
//! Double-exponential (tanh-sinh) quadrature is built here from scratch so the
//! library's Gauss–Legendre machinery is checked against something unrelated.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// `∫_lo^hi f(t, hi - t) dt`; the second argument is the distance to the right
/// end, computed without cancellation so kernels like `(x - t)^(p-1)` stay
/// accurate near `t = hi`.
pub fn tanh_sinh(mut f: impl FnMut(f64, f64) -> f64, lo: f64, hi: f64) -> f64 {
    let len = hi - lo;
    let step = 1.0 / 128.0;
    let mut sum = 0.0;
    let mut k = -(6.0 / step) as i64;
    while (k as f64) * step <= 6.0 {
        let t = k as f64 * step;
        let u = FRAC_PI_2 * t.sinh();
        let left = len / (1.0 + (-2.0 * u).exp());
        let right = len / (1.0 + (2.0 * u).exp());
        let weight = len / 2.0 * FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        if left > 0.0 && right > 0.0 && weight.is_finite() && weight > 0.0 {
            sum += weight * f(lo + left, right);
        }
        k += 1;
    }
    sum * step
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}
