//! Caputo derivative of tabulated data.
//!
//! Arc lengths produced by the Abel solvers behave like `x^n` at the origin,
//! where a piecewise-linear interpolant is poor no matter how fine the grid.
//! The leading behaviour `c₀ x^n + c₁ x + c₂ x^(n+1)` is therefore fitted
//! through the first three nonzero grid points and differentiated exactly,
//! and only the remainder goes through the Stieltjes product rule.

use crate::error::Result;
use crate::order::Order;
use crate::quadrature::{stieltjes_kernel_integral, TabulatedFunction};
use crate::special::{gamma, gamma_ratio};

/// Coefficients of `x^n`, `x`, `x^(n+1)` fitted to `f - f(0)` at grid points 1..=3.
///
/// Returns an empty vector for grids with fewer than four points or when the
/// fit is numerically singular.
pub fn singular_fit(f: &TabulatedFunction, n: Order) -> Vec<(f64, f64)> {
    if f.len() < 4 {
        return Vec::new();
    }
    let n = n.value();
    let exps = [n, 1.0, n + 1.0];
    let (xs, vs) = (f.xs(), f.values());
    // Columns scaled by x_3^e to keep the system well balanced.
    let scale: Vec<f64> = exps.iter().map(|&e| xs[3].powf(e)).collect();
    let mut m = [[0.0; 4]; 3];
    for (row, j) in (1..=3).enumerate() {
        for (col, &e) in exps.iter().enumerate() {
            m[row][col] = xs[j].powf(e) / scale[col];
        }
        m[row][3] = vs[j] - vs[0];
    }
    match solve3(m) {
        Some(c) => exps
            .iter()
            .zip(c.iter().zip(&scale))
            .map(|(&e, (&c, &s))| (c / s, e))
            .collect(),
        None => Vec::new(),
    }
}

/// Gaussian elimination with partial pivoting on an augmented 3×4 system.
fn solve3(mut m: [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-10 {
            return None;
        }
        m.swap(col, piv);
        for row in col + 1..3 {
            let k = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= k * src;
            }
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = m[row][3];
        for c in row + 1..3 {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// `D^n f(x)` for tabulated `f`, exact when `f` lies in
/// `span{1, x^n, x, x^(n+1)}` plus a piecewise-linear remainder.
pub fn caputo_tabulated(f: &TabulatedFunction, n: Order, x: f64) -> Result<f64> {
    let fit = singular_fit(f, n);
    let nv = n.value();
    let remainder = f.subtract(|u| fit.iter().map(|&(c, e)| c * u.powf(e)).sum());
    let mut acc = stieltjes_kernel_integral(&remainder, x, n)? / gamma(1.0 - nv)?;
    for &(c, e) in &fit {
        acc += c * gamma_ratio(e + 1.0, e - nv + 1.0)? * x.powf(e - nv);
    }
    Ok(acc)
}
