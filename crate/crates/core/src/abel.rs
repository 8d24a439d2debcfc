//! Abel's integral equation
//!
//! ```text
//! ψ(a) = ∫_0^a s'(x) (a - x)^-n dx,    0 < n < 1,
//! ```
//!
//! in both directions. [`forward`] maps an arc length `s` to the descent-time
//! function `ψ`; the solvers recover `s` from `ψ` through three independent
//! routes:
//!
//! * [`solve_series`]: term-by-term inversion of a power sum,
//!   `β a^k ↦ β Γ(k+1) / (Γ(1-n) Γ(n+k+1)) x^(n+k)`;
//! * [`solve_convolution`]: `s(x) = sin(nπ)/π ∫_0^x ψ(a) (x - a)^(n-1) da`;
//! * [`solve_theorem`]: the same quantity on the unit interval,
//!   `s(x) = sin(nπ)/π x^n ∫_0^1 ψ(xt) (1 - t)^(n-1) dt`.
//!
//! [`solve_piecewise`] handles `ψ` given by different power sums on
//! consecutive intervals for `n = 1/2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fracops::{
    caputo_at_origin, caputo_derivative, rl_integral_numeric, FunctionSpec, PowerSum,
};
use crate::order::Order;
use crate::quadrature::{kernel_integral, singular_integral, singular_integral_tabulated, QuadratureConfig, TabulatedFunction};
use crate::special::{gamma, gamma_ratio, reflection_factor};

/// A descent-time function `ψ` together with the kernel order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelProblem {
    psi: FunctionSpec,
    n: Order,
}

impl AbelProblem {
    /// `ψ` must be finite at `a = 0`.
    pub fn new(psi: FunctionSpec, n: Order) -> Result<Self> {
        let at_zero = psi.eval(0.0)?;
        if !at_zero.is_finite() {
            return Err(Error::InvalidInput(format!("ψ(0) = {at_zero} is not finite")));
        }
        Ok(AbelProblem { psi, n })
    }

    /// The tautochrone setting, `n = 1/2`.
    pub fn tautochrone(psi: FunctionSpec) -> Result<Self> {
        Self::new(psi, Order::HALF)
    }

    pub fn psi(&self) -> &FunctionSpec {
        &self.psi
    }

    pub fn order(&self) -> Order {
        self.n
    }
}

/// Which route produced an [`ArcLengthSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Exact power-sum inversion.
    Series1823,
    /// Unit-interval form of the solution.
    Theorem1823,
    /// Convolution with the weakly singular kernel.
    Convolution1826,
    /// Product integration of `ψ` sampled on a grid.
    NumericProduct,
}

/// Arc length `s(x)` as a function of height.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthSolution {
    pub s: FunctionSpec,
    pub backend: Backend,
}

/// `ψ(a) = ∫_0^a s'(x) (a - x)^-n dx` for `a > 0`, i.e. `Γ(1-n)` times the
/// Caputo derivative of `s`.
pub fn forward(s: &FunctionSpec, n: Order, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(gamma(1.0 - n.value())? * caputo_derivative(s, n, a, cfg)?)
}

/// Limit of [`forward`] as `a → 0+`.
pub fn forward_at_origin(s: &FunctionSpec, n: Order) -> Result<f64> {
    Ok(gamma(1.0 - n.value())? * caputo_at_origin(s, n)?)
}

/// The arc length of a power-sum `ψ`, exactly.
pub fn solve_series(problem: &AbelProblem) -> Result<ArcLengthSolution> {
    let psi = problem.psi.as_power_sum().ok_or_else(|| {
        Error::Unsupported("the series solver needs ψ given as a power sum".into())
    })?;
    let s = series_coefficients(psi, problem.n)?;
    Ok(ArcLengthSolution {
        s: s.into(),
        backend: Backend::Series1823,
    })
}

/// `β a^k ↦ β Γ(k+1) / (Γ(1-n) Γ(n+k+1)) x^(n+k)` for every term.
pub fn series_coefficients(psi: &PowerSum, n: Order) -> Result<PowerSum> {
    let inv_gamma_c = 1.0 / gamma(1.0 - n.value())?;
    psi.map_terms(|beta, k| {
        let coef = beta * gamma_ratio(k + 1.0, n.value() + k + 1.0)? * inv_gamma_c;
        Ok((coef, n.value() + k))
    })
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("height must be >= 0, got {x}")))
    }
}

/// `s(x) = sin(nπ)/π ∫_0^x ψ(a) (x - a)^(n-1) da`, evaluated by quadrature
/// (product integration for tabulated `ψ`).
pub fn solve_convolution(problem: &AbelProblem, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let n = problem.n;
    // rl_integral_numeric divides by Γ(n); undo it so that only sin(nπ)/π remains.
    let integral = rl_integral_numeric(&problem.psi, n, x, cfg)? * gamma(n.value())?;
    Ok(reflection_factor(n) * integral)
}

/// `s(x) = sin(nπ)/π x^n ∫_0^1 ψ(xt) (1 - t)^(n-1) dt`.
pub fn solve_theorem(problem: &AbelProblem, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_x(x)?;
    problem.psi.check_domain(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let n = problem.n;
    let psi = &problem.psi;
    let mut failure = None;
    let unit = singular_integral(
        |t| match psi.eval((x * t).min(x)) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        1.0,
        n,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(reflection_factor(n) * x.powf(n.value()) * unit?)
}

/// `πs(x) = Σ_j ∫_{a_(j-1)}^{min(a_j, x)} φ_j(a) (x - a)^-1/2 da` for `ψ` given
/// by a power sum `φ_j` on each segment. Only `n = 1/2` is supported.
pub fn solve_piecewise(problem: &AbelProblem, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if problem.n != Order::HALF {
        return Err(Error::Unsupported(format!(
            "piecewise solutions are implemented for n = 1/2 only, got n = {}",
            problem.n
        )));
    }
    check_x(x)?;
    problem.psi.check_domain(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let segments: Vec<(f64, f64, &PowerSum)> = match &problem.psi {
        FunctionSpec::Piecewise(pw) => pw.segments().iter().map(|s| (s.lo, s.hi, &s.sum)).collect(),
        FunctionSpec::PowerSum(p) => vec![(0.0, f64::INFINITY, p)],
        FunctionSpec::Tabulated(_) => {
            return Err(Error::Unsupported(
                "the piecewise solver needs ψ as power sums".into(),
            ))
        }
    };
    let mut acc = 0.0;
    for (lo, hi, sum) in segments {
        if lo >= x {
            break;
        }
        acc += kernel_integral(|a| sum.eval(a), lo, hi.min(x), x, Order::HALF, cfg)?;
    }
    Ok(acc / PI)
}

/// Evaluates the chosen backend on the grid `xs` (starting at 0) and returns
/// the arc length as a table. The series backend stays exact.
pub fn solve_on_grid(
    problem: &AbelProblem,
    backend: Backend,
    xs: &[f64],
    cfg: &QuadratureConfig,
) -> Result<ArcLengthSolution> {
    let s = match backend {
        Backend::Series1823 => return solve_series(problem),
        Backend::Convolution1826 => {
            let values = xs
                .iter()
                .map(|&x| solve_convolution(problem, x, cfg))
                .collect::<Result<Vec<_>>>()?;
            TabulatedFunction::new(xs.to_vec(), values)?
        }
        Backend::Theorem1823 => {
            let values = xs
                .iter()
                .map(|&x| solve_theorem(problem, x, cfg))
                .collect::<Result<Vec<_>>>()?;
            TabulatedFunction::new(xs.to_vec(), values)?
        }
        Backend::NumericProduct => {
            let psi = match &problem.psi {
                FunctionSpec::Tabulated(t) => t.clone(),
                other => {
                    let values = xs.iter().map(|&x| other.eval(x)).collect::<Result<Vec<_>>>()?;
                    TabulatedFunction::new(xs.to_vec(), values)?
                }
            };
            let k = reflection_factor(problem.n);
            let values = xs
                .iter()
                .map(|&x| Ok(k * singular_integral_tabulated(&psi, x, problem.n)?))
                .collect::<Result<Vec<_>>>()?;
            TabulatedFunction::new(xs.to_vec(), values)?
        }
    };
    Ok(ArcLengthSolution {
        s: s.into(),
        backend,
    })
}
