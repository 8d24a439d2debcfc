use super::spline::CubicSpline;
use super::CurveSamples;
use crate::error::{Error, Result};

/// Outcome of one simulated descent.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct DescentResult {
    /// Release height.
    pub a: f64,
    /// Arrival time at the bottom.
    pub T: f64,
    /// Accepted integration steps, the analytic start-up step included.
    pub steps: usize,
    /// Largest energy mismatch `|v²/2 - g(a - x)| / (g a)` seen along the way.
    pub max_residual: f64,
}

const STEP_BUDGET: usize = 1_000_000;
/// Arc length covered by the closed-form start, relative to the release position.
const START_FRACTION: f64 = 1e-9;
/// The simulation runs at `g = 1/2`; other values rescale time exactly.
const G_UNIT: f64 = 0.5;

// Dormand–Prince 5(4) tableau; the system is autonomous so the nodes are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Slides a bead from rest at height `a` down the sampled curve and times its
/// arrival at the bottom.
///
/// The height along the wire, `x(σ)`, is a cubic spline through the samples
/// `(s_i, x_i)`, and the arc position obeys `σ'' = -g x'(σ)`. Release is at
/// rest, where the speed has a square-root singularity in time, so the first
/// short stretch uses the constant-acceleration solution; Dormand–Prince 5(4)
/// takes over from there and the arrival is located by Hermite interpolation.
pub fn simulate_descent(curve: &CurveSamples, a: f64, rel_tol: f64) -> Result<DescentResult> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::InvalidInput(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
    }
    if !(a.is_finite() && a >= 0.0 && a <= curve.x_max()) {
        return Err(Error::OutOfRange { x: a, lo: 0.0, hi: curve.x_max() });
    }
    if a == 0.0 {
        return Ok(DescentResult { a, T: 0.0, steps: 0, max_residual: 0.0 });
    }

    let height = CubicSpline::new(curve.s().to_vec(), curve.xs().to_vec())?;
    let sigma0 = height.invert(a)?;
    let accel = |sigma: f64| -G_UNIT * height.eval_with_slope(sigma).1;
    let residual = |sigma: f64, v: f64| (0.5 * v * v - G_UNIT * (a - height.eval(sigma))).abs() / (G_UNIT * a);

    let alpha0 = -accel(sigma0);
    if !(alpha0 > 0.0) {
        return Err(Error::InfeasibleCurve { x: a, slope: f64::INFINITY });
    }
    let start = START_FRACTION * sigma0;
    let mut t = (2.0 * start / alpha0).sqrt();
    let mut sigma = sigma0 - start;
    let mut v = -(2.0 * G_UNIT * (a - height.eval(sigma))).max(0.0).sqrt();
    let mut steps = 1;
    let mut max_residual = residual(sigma, v);

    let v_scale = (2.0 * G_UNIT * a).sqrt();
    let atol = [rel_tol * sigma0, rel_tol * v_scale];
    let mut h = t;
    let mut k = [[0.0; 2]; 7];
    k[0] = [v, accel(sigma)];

    loop {
        if steps >= STEP_BUDGET {
            return Err(Error::NonConvergence { what: "descent simulation", budget: STEP_BUDGET });
        }
        for stage in 1..7 {
            let mut y = [sigma, v];
            for (j, kj) in k.iter().enumerate().take(stage) {
                y[0] += h * A[stage][j] * kj[0];
                y[1] += h * A[stage][j] * kj[1];
            }
            k[stage] = [y[1], accel(y[0])];
        }
        let mut next = [sigma, v];
        let mut err = 0.0f64;
        for c in 0..2 {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                if j < 6 {
                    next[c] += h * A[6][j] * kj[c];
                }
                e += h * E[j] * kj[c];
            }
            let scale = atol[c] + rel_tol * [sigma, v][c].abs().max(next[c].abs());
            err = err.max((e / scale).abs());
        }
        if err <= 1.0 {
            if next[0] <= 0.0 {
                let tau = crossing(h, [sigma, v], next, k[0][0], k[6][0]);
                let t_end = t + tau;
                let scale = 1.0 / (2.0 * curve.gravity()).sqrt();
                return Ok(DescentResult {
                    a,
                    T: t_end * scale,
                    steps: steps + 1,
                    max_residual,
                });
            }
            t += h;
            sigma = next[0];
            v = next[1];
            k[0] = k[6];
            steps += 1;
            max_residual = max_residual.max(residual(sigma, v));
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
}

/// Time within the step `[0, h]` at which the cubic Hermite interpolant of
/// `σ` reaches zero; `σ` starts positive and ends at or below zero.
fn crossing(h: f64, y0: [f64; 2], y1: [f64; 2], d0: f64, d1: f64) -> f64 {
    let hermite = |s: f64| {
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0[0]
            + (s3 - 2.0 * s2 + s) * h * d0
            + (-2.0 * s3 + 3.0 * s2) * y1[0]
            + (s3 - s2) * h * d1
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if hermite(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracops::{FunctionSpec, PowerSum};
    use crate::tautochrone::{reconstruct_curve, DEFAULT_GRAVITY};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn curve(terms: &[(f64, f64)], points: usize) -> CurveSamples {
        let s: FunctionSpec = PowerSum::new(terms.iter().copied()).unwrap().into();
        reconstruct_curve(&s, 1.0, points, DEFAULT_GRAVITY).unwrap()
    }

    #[test]
    fn straight_line_time() {
        let c = 1.5;
        let line = curve(&[(c, 1.0)], 11);
        for a in [0.1, 0.5, 1.0] {
            let r = simulate_descent(&line, a, 1e-10).unwrap();
            assert_relative_eq!(r.T, 2.0 * c * f64::sqrt(a), max_relative = 1e-6);
            assert!(r.max_residual < 1e-6);
        }
    }

    #[test]
    fn cycloid_is_isochronous() {
        let k = 2.5;
        let cyc = curve(&[(k, 0.5)], 2001);
        for a in [0.2, 0.5, 0.9] {
            let r = simulate_descent(&cyc, a, 1e-10).unwrap();
            assert_relative_eq!(r.T, k * PI / 2.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn gravity_rescales_time() {
        let cyc = curve(&[(2.5, 0.5)], 201);
        let base = simulate_descent(&cyc, 0.7, 1e-9).unwrap();
        let heavy = simulate_descent(&cyc.with_gravity(4.5).unwrap(), 0.7, 1e-9).unwrap();
        assert_relative_eq!(base.T / heavy.T, 3.0, max_relative = 1e-12);
        assert_eq!(base.steps, heavy.steps);
    }

    #[test]
    fn times_shrink_to_zero() {
        let line = curve(&[(1.2, 1.0)], 101);
        let zero = simulate_descent(&line, 0.0, 1e-8).unwrap();
        assert_eq!((zero.T, zero.steps), (0.0, 0));
        let mut prev = f64::INFINITY;
        for a in [0.8, 0.4, 0.1, 0.01, 1e-4] {
            let t = simulate_descent(&line, a, 1e-9).unwrap().T;
            assert!(t > 0.0 && t < prev);
            prev = t;
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let line = curve(&[(1.2, 1.0)], 5);
        assert!(simulate_descent(&line, 1.5, 1e-8).is_err());
        assert!(simulate_descent(&line, -0.1, 1e-8).is_err());
        assert!(simulate_descent(&line, 0.5, 0.0).is_err());
    }
}
