//! Tabulated functions and product integration against `(x - t)^(p-1)`.

use crate::error::{Error, Result};
use crate::order::Order;

/// Samples of a function on a strictly increasing grid starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedFunction {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedFunction {
    pub fn new(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "grid has {} points but {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput("tabulated function needs at least 2 points".into()));
        }
        if xs[0] != 0.0 {
            return Err(Error::InvalidInput(format!("grid must start at 0, starts at {}", xs[0])));
        }
        if let Some(i) = xs.windows(2).position(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::InvalidInput(format!(
                "grid not strictly increasing at index {}",
                i + 1
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite value at index {i}")));
        }
        Ok(TabulatedFunction { xs, values })
    }

    /// Samples `f` on `xs`.
    pub fn from_fn(xs: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, values)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().expect("validated non-empty")
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < 0.0 || x > self.x_max() {
            return Err(Error::OutOfRange {
                x,
                lo: 0.0,
                hi: self.x_max(),
            });
        }
        Ok(())
    }

    /// Index `j` of the cell `[xs[j], xs[j+1]]` containing `x`.
    fn cell(&self, x: f64) -> usize {
        let j = self.xs.partition_point(|&t| t <= x);
        j.saturating_sub(1).min(self.xs.len() - 2)
    }

    /// Piecewise-linear interpolant.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        let j = self.cell(x);
        let (x0, x1) = (self.xs[j], self.xs[j + 1]);
        let (v0, v1) = (self.values[j], self.values[j + 1]);
        Ok(v0 + (v1 - v0) * (x - x0) / (x1 - x0))
    }

    /// Second-order finite-difference derivatives at the grid nodes: centred
    /// three-point stencils inside, one-sided three-point stencils at the ends.
    pub fn node_derivatives(&self) -> Result<Vec<f64>> {
        let n = self.xs.len();
        if n < 3 {
            return Err(Error::InvalidInput(
                "finite differences need at least 3 grid points".into(),
            ));
        }
        let (x, y) = (&self.xs, &self.values);
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            d[i] = -h1 / (h0 * (h0 + h1)) * y[i - 1] + (h1 - h0) / (h0 * h1) * y[i]
                + h0 / (h1 * (h0 + h1)) * y[i + 1];
        }
        let (h0, h1) = (x[1] - x[0], x[2] - x[1]);
        d[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * y[0] + (h0 + h1) / (h0 * h1) * y[1]
            - h0 / (h1 * (h0 + h1)) * y[2];
        let (h0, h1) = (x[n - 2] - x[n - 3], x[n - 1] - x[n - 2]);
        d[n - 1] = h1 / (h0 * (h0 + h1)) * y[n - 3] - (h0 + h1) / (h0 * h1) * y[n - 2]
            + (2.0 * h1 + h0) / (h1 * (h0 + h1)) * y[n - 1];
        Ok(d)
    }

    /// Derivative at `x`, linearly interpolating the node derivatives.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        let d = self.node_derivatives()?;
        let j = self.cell(x);
        let (x0, x1) = (self.xs[j], self.xs[j + 1]);
        Ok(d[j] + (d[j + 1] - d[j]) * (x - x0) / (x1 - x0))
    }

    /// A new table with `values - f(xs)`.
    pub fn subtract(&self, f: impl Fn(f64) -> f64) -> TabulatedFunction {
        TabulatedFunction {
            xs: self.xs.clone(),
            values: self.xs.iter().zip(&self.values).map(|(&x, &v)| v - f(x)).collect(),
        }
    }
}

/// `A^q - B^q` for `A > B >= 0` without cancellation when `A ≈ B`.
fn pow_diff(a: f64, b: f64, q: f64) -> f64 {
    if b <= 0.0 {
        return a.powf(q);
    }
    let h = a - b;
    a.powf(q) * -(q * (-h / a).ln_1p()).exp_m1()
}

/// Iterates over the cells of `[0, x]`, yielding `(A, B, f_left, f_right)`
/// with `A = x - t_j`, `B = x - t_{j+1}` and the last cell truncated at `x`.
fn cells_up_to(f: &TabulatedFunction, x: f64) -> Result<Vec<(f64, f64, f64, f64)>> {
    f.check_range(x)?;
    let mut out = Vec::new();
    for j in 0..f.xs.len() - 1 {
        let t0 = f.xs[j];
        if t0 >= x {
            break;
        }
        let (t1, v1) = if f.xs[j + 1] <= x {
            (f.xs[j + 1], f.values[j + 1])
        } else {
            (x, f.eval(x)?)
        };
        out.push((x - t0, x - t1, f.values[j], v1));
    }
    Ok(out)
}

/// Product integration of `∫_0^x f(t) (x - t)^(p-1) dt` with `f` replaced by
/// its piecewise-linear interpolant and the kernel moments evaluated exactly.
pub fn singular_integral_tabulated(f: &TabulatedFunction, x: f64, p: Order) -> Result<f64> {
    let p = p.value();
    let mut acc = 0.0;
    for (a, b, v0, v1) in cells_up_to(f, x)? {
        let h = a - b;
        let m0 = pow_diff(a, b, p) / p;
        let m1 = pow_diff(a, b, p + 1.0) / (p + 1.0);
        // ∫_B^A (A - u) u^(p-1) du, the moment of the rising hat function
        let rising = (a * m0 - m1).max(0.0);
        acc += v0 * m0 + (v1 - v0) / h * rising;
    }
    Ok(acc)
}

/// Stieltjes product rule `∫_0^x (x - t)^(-q) df(t)` with `f` piecewise linear:
/// each cell contributes its slope times the exact moment of the kernel.
pub fn stieltjes_kernel_integral(f: &TabulatedFunction, x: f64, q: Order) -> Result<f64> {
    let p = 1.0 - q.value();
    let mut acc = 0.0;
    for (a, b, v0, v1) in cells_up_to(f, x)? {
        let h = a - b;
        acc += (v1 - v0) / h * pow_diff(a, b, p) / p;
    }
    Ok(acc)
}
