use crate::error::{Error, Result};

/// Interpolating cubic spline with not-a-knot end conditions.
///
/// Two knots give the straight line, three the interpolating parabola.
#[derive(Debug, Clone)]
pub(crate) struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub(crate) fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let n = knots.len();
        if n < 2 || values.len() != n {
            return Err(Error::InvalidInput("spline needs at least two matching knots".into()));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("spline knots must be strictly increasing".into()));
        }
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = values.windows(2).zip(&h).map(|(w, h)| (w[1] - w[0]) / h).collect();
        let second = match n {
            2 => vec![0.0; 2],
            3 => vec![2.0 * (d[1] - d[0]) / (h[0] + h[1]); 3],
            _ => not_a_knot_moments(&h, &d),
        };
        Ok(CubicSpline { knots, values, second })
    }

    fn cell(&self, t: f64) -> usize {
        let last = self.knots.len() - 2;
        self.knots.partition_point(|&k| k <= t).saturating_sub(1).min(last)
    }

    /// Value and first derivative; outside the knots the end cubics are extended.
    pub(crate) fn eval_with_slope(&self, t: f64) -> (f64, f64) {
        let i = self.cell(t);
        let h = self.knots[i + 1] - self.knots[i];
        let (m0, m1) = (self.second[i], self.second[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let a = (self.knots[i + 1] - t) / h;
        let b = (t - self.knots[i]) / h;
        let value = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let slope = (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        (value, slope)
    }

    pub(crate) fn eval(&self, t: f64) -> f64 {
        self.eval_with_slope(t).0
    }

    /// Solves `spline(t) = target` inside the knot range, assuming the spline is
    /// increasing there.
    pub(crate) fn invert(&self, target: f64) -> Result<f64> {
        let (first, last) = (self.values[0], *self.values.last().expect("non-empty"));
        if !(target >= first && target <= last) {
            return Err(Error::OutOfRange { x: target, lo: first, hi: last });
        }
        let j = self.values.partition_point(|&v| v < target);
        if j < self.values.len() && self.values[j] == target {
            return Ok(self.knots[j]);
        }
        let (mut lo, mut hi) = (self.knots[j - 1], self.knots[j]);
        let mut t = lo + (hi - lo) * (target - self.values[j - 1]) / (self.values[j] - self.values[j - 1]);
        for _ in 0..100 {
            let (v, dv) = self.eval_with_slope(t);
            let r = v - target;
            if r > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let newton = t - r / dv;
            let next = if dv > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(f64::MIN_POSITIVE) {
                return Ok(next);
            }
            t = next;
        }
        Ok(t)
    }
}

/// Second derivatives at the knots for `n >= 4` knots.
///
/// The end moments are eliminated with the not-a-knot conditions, leaving a
/// diagonally dominant tridiagonal system for `M1..M(n-2)`.
fn not_a_knot_moments(h: &[f64], d: &[f64]) -> Vec<f64> {
    let n = h.len() + 1;
    let mut sub = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for i in 1..n - 1 {
        sub[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        sup[i] = h[i];
        rhs[i] = 6.0 * (d[i] - d[i - 1]);
    }
    // M0 = ((h0 + h1) M1 - h0 M2) / h1
    let (h0, h1) = (h[0], h[1]);
    diag[1] += h0 * (h0 + h1) / h1;
    sup[1] -= h0 * h0 / h1;
    // M(n-1) = ((a + b) M(n-2) - b M(n-3)) / a
    let (a, b) = (h[n - 3], h[n - 2]);
    diag[n - 2] += b * (a + b) / a;
    sub[n - 2] -= b * b / a;

    for i in 2..n - 1 {
        let w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    let mut m = vec![0.0; n];
    m[n - 2] = rhs[n - 2] / diag[n - 2];
    for i in (1..n - 2).rev() {
        m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
    }
    m[0] = ((h0 + h1) * m[1] - h0 * m[2]) / h1;
    m[n - 1] = ((a + b) * m[n - 2] - b * m[n - 3]) / a;
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_cubics() {
        let f = |t: f64| 1.0 - 2.0 * t + 0.5 * t * t + 0.25 * t * t * t;
        let knots = vec![0.0, 0.3, 0.5, 1.1, 1.2, 2.0];
        let sp = CubicSpline::new(knots.clone(), knots.iter().map(|&t| f(t)).collect()).unwrap();
        for t in [0.0, 0.1, 0.77, 1.15, 1.9, 2.0] {
            let (v, dv) = sp.eval_with_slope(t);
            assert_relative_eq!(v, f(t), epsilon = 1e-12);
            assert_relative_eq!(dv, -2.0 + t + 0.75 * t * t, epsilon = 1e-11);
        }
    }

    #[test]
    fn short_inputs() {
        let line = CubicSpline::new(vec![0.0, 2.0], vec![1.0, 5.0]).unwrap();
        assert_eq!(line.eval(1.0), 3.0);
        let par = CubicSpline::new(vec![0.0, 1.0, 3.0], vec![0.0, 1.0, 9.0]).unwrap();
        assert_relative_eq!(par.eval(2.0), 4.0, epsilon = 1e-14);
        assert!(CubicSpline::new(vec![0.0], vec![0.0]).is_err());
        assert!(CubicSpline::new(vec![0.0, 0.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn inverse() {
        let knots: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let sp = CubicSpline::new(knots.clone(), knots.iter().map(|t| t * t).collect()).unwrap();
        assert_relative_eq!(sp.invert(0.5).unwrap(), 0.5f64.sqrt(), epsilon = 1e-13);
        assert_eq!(sp.invert(0.0).unwrap(), 0.0);
        assert!(sp.invert(10.0).is_err());
    }
}
