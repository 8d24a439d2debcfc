//! Curves of prescribed descent time and a bead-on-a-wire simulator.
//!
//! Heights `x` are measured upward from the lowest point of the curve, where
//! the bead arrives; `s(x)` is the arc length from that point and `y(x)` the
//! horizontal distance. A bead released at height `a` has speed
//! `√(2g(a - x))`; with the default `g = 1/2` this is `√(a - x)`.

mod simulate;
mod spline;

pub use simulate::{simulate_descent, DescentResult};

use crate::abel::forward;
use crate::error::{Error, Result};
use crate::fracops::FunctionSpec;
use crate::order::Order;
use crate::quadrature::{integrate_adaptive, QuadratureConfig};

/// Gravity parameter for which the speed is `√(a - x)`.
pub const DEFAULT_GRAVITY: f64 = 0.5;

/// Slack on `s'(x) >= 1` admitting the vertical drop `s(x) = x`.
pub const FEASIBILITY_SLACK: f64 = 1e-9;

/// A sampled plane curve: heights, arc lengths and horizontal coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    xs: Vec<f64>,
    s: Vec<f64>,
    y: Vec<f64>,
    g: f64,
}

impl CurveSamples {
    /// Checks `s(0) = y(0) = 0`, strictly increasing heights, and
    /// `Δs >= Δx` on every cell.
    pub fn new(xs: Vec<f64>, s: Vec<f64>, y: Vec<f64>, g: f64) -> Result<Self> {
        check_gravity(g)?;
        if xs.len() < 2 || s.len() != xs.len() || y.len() != xs.len() {
            return Err(Error::InvalidInput(
                "a curve needs at least two samples with matching lengths".into(),
            ));
        }
        if xs[0] != 0.0 || s[0] != 0.0 || y[0] != 0.0 {
            return Err(Error::InvalidInput("a curve must start at x = s = y = 0".into()));
        }
        if xs.iter().chain(&s).chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("curve samples must be finite".into()));
        }
        for i in 1..xs.len() {
            let dx = xs[i] - xs[i - 1];
            if !(dx > 0.0) {
                return Err(Error::InvalidInput("heights must be strictly increasing".into()));
            }
            let ds = s[i] - s[i - 1];
            if ds < dx * (1.0 - FEASIBILITY_SLACK) {
                return Err(Error::InfeasibleCurve {
                    x: xs[i],
                    slope: ds / dx,
                });
            }
            if y[i] < y[i - 1] {
                return Err(Error::InvalidInput(format!(
                    "horizontal coordinate decreases at x = {}",
                    xs[i]
                )));
            }
        }
        Ok(CurveSamples { xs, s, y, g })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn gravity(&self) -> f64 {
        self.g
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().expect("at least two samples")
    }

    /// Same geometry under a different gravity parameter.
    pub fn with_gravity(&self, g: f64) -> Result<Self> {
        check_gravity(g)?;
        Ok(CurveSamples { g, ..self.clone() })
    }

    /// `max |Δs² - Δx² - Δy²| / Δs²` over the cells. Chords are shorter than
    /// arcs, so this shrinks with the square of the cell size on smooth curves.
    pub fn metric_residual(&self) -> f64 {
        (1..self.xs.len())
            .map(|i| {
                let dx = self.xs[i] - self.xs[i - 1];
                let dy = self.y[i] - self.y[i - 1];
                let ds = self.s[i] - self.s[i - 1];
                (ds * ds - dx * dx - dy * dy).abs() / (ds * ds)
            })
            .fold(0.0, f64::max)
    }
}

fn check_gravity(g: f64) -> Result<()> {
    if g.is_finite() && g > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("gravity must be positive and finite, got {g}")))
    }
}

/// Uniform grid of `points` heights on `[0, x_max]`.
pub fn uniform_grid(x_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(x_max.is_finite() && x_max > 0.0) || points < 2 {
        return Err(Error::InvalidInput(format!(
            "grid needs x_max > 0 and at least two points, got {x_max}:{points}"
        )));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { x_max } else { x_max * i as f64 / last })
        .collect())
}

/// Builds the curve with arc length `s` by integrating
/// `dy = √(s'(x)² - 1) dx` cell by cell.
pub fn reconstruct_curve(
    s: &FunctionSpec,
    x_max: f64,
    grid_points: usize,
    g: f64,
) -> Result<CurveSamples> {
    check_gravity(g)?;
    let xs = uniform_grid(x_max, grid_points)?;
    s.check_domain(x_max)?;
    let s0 = s.eval(0.0)?;
    if s0.abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("arc length must vanish at 0, got s(0) = {s0}")));
    }
    for &x in &xs {
        let slope = s.derivative(x)?;
        if slope.is_nan() || slope < 1.0 - FEASIBILITY_SLACK {
            return Err(Error::InfeasibleCurve { x, slope });
        }
    }

    let cfg = QuadratureConfig::default();
    let rise = |u: f64| -> Result<f64> {
        let d = s.derivative(u)?;
        Ok((d * d - 1.0).max(0.0).sqrt())
    };
    let mut sv = Vec::with_capacity(xs.len());
    let mut y = Vec::with_capacity(xs.len());
    sv.push(0.0);
    y.push(0.0);
    for w in xs.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let dy = if lo == 0.0 {
            // u = hi·w⁴ smooths the s' ~ x^(n-1) blow-up at the origin.
            integrate_adaptive(|w| Ok(4.0 * hi * w.powi(3) * rise(hi * w.powi(4))?), 0.0, 1.0, &cfg)?
        } else {
            integrate_adaptive(rise, lo, hi, &cfg)?
        };
        y.push(y.last().expect("seeded") + dy.value);
        sv.push(s.eval(hi)? - s0);
    }
    CurveSamples::new(xs, sv, y, g)
}

/// `T(a) = (2g)^(-1/2) ∫_0^a s'(x) (a - x)^(-1/2) dx`, the time to slide from
/// height `a` to the bottom.
pub fn descent_time_integral(s: &FunctionSpec, a: f64, g: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_gravity(g)?;
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::InvalidInput(format!("release height must be >= 0, got {a}")));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(forward(s, Order::HALF, a, cfg)? / (2.0 * g).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracops::PowerSum;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn spec(terms: &[(f64, f64)]) -> FunctionSpec {
        PowerSum::new(terms.iter().copied()).unwrap().into()
    }

    #[test]
    fn straight_line() {
        let c = 1.5;
        let curve = reconstruct_curve(&spec(&[(c, 1.0)]), 2.0, 41, DEFAULT_GRAVITY).unwrap();
        let slope = (c * c - 1.0f64).sqrt();
        for (&x, &y) in curve.xs().iter().zip(curve.y()).skip(1) {
            assert_relative_eq!(y / x, slope, max_relative = 1e-12);
        }
        assert!(curve.metric_residual() < 1e-12);
    }

    #[test]
    fn vertical_drop() {
        let curve = reconstruct_curve(&spec(&[(1.0, 1.0)]), 1.0, 5, DEFAULT_GRAVITY).unwrap();
        assert!(curve.y().iter().all(|&y| y == 0.0));
    }

    #[test]
    fn cycloid_against_parametric_form() {
        let k = 2.5f64;
        let r = k * k / 8.0;
        let curve = reconstruct_curve(&spec(&[(k, 0.5)]), 1.0, 51, DEFAULT_GRAVITY).unwrap();
        for (&x, &y) in curve.xs().iter().zip(curve.y()) {
            let theta = (1.0 - x / r).acos();
            assert_relative_eq!(y, r * (theta + theta.sin()), epsilon = 1e-9);
        }
        let fine = reconstruct_curve(&spec(&[(k, 0.5)]), 1.0, 2001, DEFAULT_GRAVITY).unwrap();
        assert!(fine.metric_residual() < 1e-3, "{}", fine.metric_residual());
    }

    #[test]
    fn infeasible_slope_is_reported() {
        match reconstruct_curve(&spec(&[(0.5, 1.0)]), 1.0, 3, DEFAULT_GRAVITY) {
            Err(Error::InfeasibleCurve { x, slope }) => {
                assert_eq!(x, 0.0);
                assert_eq!(slope, 0.5);
            }
            other => panic!("{other:?}"),
        }
        // s' = 1/(2√x) drops below 1 past x = 1/4.
        match reconstruct_curve(&spec(&[(1.0, 0.5)]), 1.0, 5, DEFAULT_GRAVITY) {
            Err(Error::InfeasibleCurve { x, .. }) => assert_eq!(x, 0.5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sample_validation() {
        assert!(CurveSamples::new(vec![0.0, 1.0], vec![0.0, 0.5], vec![0.0, 0.0], 0.5).is_err());
        assert!(CurveSamples::new(vec![0.0, 1.0], vec![0.0, 2.0], vec![0.0, 3.0], 0.0).is_err());
        assert!(CurveSamples::new(vec![0.0, 1.0], vec![0.1, 2.0], vec![0.0, 3.0], 0.5).is_err());
        let ok = CurveSamples::new(vec![0.0, 1.0], vec![0.0, 2.0], vec![0.0, 3f64.sqrt()], 0.5).unwrap();
        assert!(ok.metric_residual() < 1e-15);
    }

    #[test]
    fn descent_time_examples() {
        let cfg = QuadratureConfig::default();
        let k = 1.3;
        for a in [0.1, 0.6, 1.0] {
            assert_relative_eq!(
                descent_time_integral(&spec(&[(k, 0.5)]), a, 0.5, &cfg).unwrap(),
                k * PI / 2.0,
                max_relative = 1e-13
            );
            assert_relative_eq!(
                descent_time_integral(&spec(&[(1.0, 1.0)]), a, 0.5, &cfg).unwrap(),
                2.0 * a.sqrt(),
                max_relative = 1e-13
            );
        }
        assert_eq!(descent_time_integral(&spec(&[(1.0, 1.0)]), 0.0, 0.5, &cfg).unwrap(), 0.0);
        let t1 = descent_time_integral(&spec(&[(1.0, 1.0)]), 0.3, 0.5, &cfg).unwrap();
        let t4 = descent_time_integral(&spec(&[(1.0, 1.0)]), 0.3, 2.0, &cfg).unwrap();
        assert_relative_eq!(t1 / t4, 2.0, max_relative = 1e-14);
    }
}
