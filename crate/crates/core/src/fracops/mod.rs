//! Fractional integrals and derivatives of order `0 < n < 1`.
//!
//! * Riemann-Liouville integral `I^n f(x) = 1/Γ(n) ∫_0^x f(t) (x - t)^(n-1) dt`.
//!   The older notations `d^-n f / dx^-n` and `∫^n f dx^n` both denote this
//!   operator; only one implementation exists.
//! * Caputo derivative `D^n f(x) = 1/Γ(1-n) ∫_0^x f'(t) (x - t)^-n dt`.
//!   Abel's integral `∫_0^x f'(t) (x - t)^-n dt` is `Γ(1-n)·D^n f(x)`.
//!
//! Power sums are mapped term by term through the monomial rules
//! `x^m ↦ Γ(m+1)/Γ(m+n+1) x^(m+n)` and `x^m ↦ Γ(m+1)/Γ(m-n+1) x^(m-n)`;
//! piecewise sums use the singular quadrature segment by segment and
//! tabulated data uses product integration.

mod function;
mod power_sum;
mod tabulated;

use std::cell::RefCell;

pub use function::{FunctionSpec, PiecewisePowerSum, Segment, CONTINUITY_TOL};
pub use power_sum::PowerSum;
pub use tabulated::{caputo_tabulated, singular_fit};

pub use crate::order::Order;

use crate::error::{Error, Result};
use crate::quadrature::{kernel_integral, singular_integral_tabulated, QuadratureConfig};
use crate::special::{gamma, gamma_ratio, reflection_factor};

/// Exact image of `x^m` under the order-`n` fractional derivative:
/// `(Γ(m+1)/Γ(m-n+1), m - n)`.
///
/// For `m = 0` this is the Riemann-Liouville image of a constant; the Caputo
/// derivative of a constant is zero and [`caputo_power_sum`] drops such terms.
pub fn monomial_frac_derivative(m: f64, n: Order) -> Result<(f64, f64)> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::InvalidInput(format!("monomial exponent {m} must be >= 0")));
    }
    let coef = gamma_ratio(m + 1.0, m - n.value() + 1.0)?;
    Ok((coef, m - n.value()))
}

/// Exact image of `x^m` under `I^n`: `(Γ(m+1)/Γ(m+n+1), m + n)`.
pub fn monomial_frac_integral(m: f64, n: Order) -> Result<(f64, f64)> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::InvalidInput(format!("monomial exponent {m} must be >= 0")));
    }
    Ok((gamma_ratio(m + 1.0, m + n.value() + 1.0)?, m + n.value()))
}

/// `I^n p` as a power sum.
pub fn rl_integral_power_sum(p: &PowerSum, n: Order) -> Result<PowerSum> {
    p.map_terms(|c, m| {
        let (k, e) = monomial_frac_integral(m, n)?;
        Ok((c * k, e))
    })
}

/// `D^n p` as a power sum. Requires every non-constant exponent to be `>= n`
/// so that the image is again a power sum with non-negative exponents.
pub fn caputo_power_sum(p: &PowerSum, n: Order) -> Result<PowerSum> {
    let nonconstant = p.terms().iter().filter(|t| t.1 > 0.0);
    let mut out = Vec::new();
    for &(c, m) in nonconstant {
        let (k, e) = monomial_frac_derivative(m, n)?;
        if e < 0.0 {
            return Err(Error::Unsupported(format!(
                "D^{n} x^{m} = x^{e} has a negative exponent"
            )));
        }
        out.push((c * k, e));
    }
    PowerSum::new(out)
}

fn check_point(x: f64, allow_zero: bool) -> Result<()> {
    let ok = x.is_finite() && (x > 0.0 || (allow_zero && x == 0.0));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "evaluation point must be {} 0, got {x}",
            if allow_zero { ">=" } else { ">" }
        )))
    }
}

/// Wraps a fallible function as an `FnMut(f64) -> f64` for the quadrature,
/// remembering the first error so it can be surfaced afterwards.
struct Fallible<'a, F> {
    f: F,
    first_error: &'a RefCell<Option<Error>>,
}

impl<F: FnMut(f64) -> Result<f64>> Fallible<'_, F> {
    fn call(&mut self, t: f64) -> f64 {
        match (self.f)(t) {
            Ok(v) => v,
            Err(e) => {
                self.first_error.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }
}

fn with_fallible<F, R>(f: F, body: impl FnOnce(&mut dyn FnMut(f64) -> f64) -> Result<R>) -> Result<R>
where
    F: FnMut(f64) -> Result<f64>,
{
    let slot = RefCell::new(None);
    let mut wrapped = Fallible {
        f,
        first_error: &slot,
    };
    let out = body(&mut |t| wrapped.call(t));
    if let Some(e) = slot.into_inner() {
        return Err(e);
    }
    out
}

/// `∫_0^x f(t) (x - t)^(p-1) dt` by quadrature, segment by segment for piecewise input.
fn kernel_quadrature(
    f: &FunctionSpec,
    derivative: bool,
    x: f64,
    p: Order,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let eval = |t: f64| if derivative { f.derivative(t) } else { f.eval(t) };
    match f {
        FunctionSpec::Piecewise(pw) => {
            let mut acc = 0.0;
            for seg in pw.segments() {
                if seg.lo >= x {
                    break;
                }
                let hi = seg.hi.min(x);
                let sum = &seg.sum;
                acc += kernel_integral(
                    |t| if derivative { sum.derivative(t) } else { sum.eval(t) },
                    seg.lo,
                    hi,
                    x,
                    p,
                    cfg,
                )?;
            }
            Ok(acc)
        }
        _ => with_fallible(eval, |g| kernel_integral(g, 0.0, x, x, p, cfg)),
    }
}

/// Riemann-Liouville integral `I^n f(x)`; exact for power sums.
pub fn rl_integral(f: &FunctionSpec, n: Order, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_point(x, true)?;
    f.check_domain(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    match f {
        FunctionSpec::PowerSum(p) => Ok(rl_integral_power_sum(p, n)?.eval(x)),
        _ => rl_integral_numeric(f, n, x, cfg),
    }
}

/// Riemann-Liouville integral through quadrature for every representation.
pub fn rl_integral_numeric(f: &FunctionSpec, n: Order, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_point(x, true)?;
    f.check_domain(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let integral = match f {
        FunctionSpec::Tabulated(t) => singular_integral_tabulated(t, x, n)?,
        _ => kernel_quadrature(f, false, x, n, cfg)?,
    };
    Ok(integral / gamma(n.value())?)
}

/// Caputo derivative `D^n f(x)` for `x > 0`; exact for power sums.
pub fn caputo_derivative(f: &FunctionSpec, n: Order, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_point(x, false)?;
    f.check_domain(x)?;
    match f {
        FunctionSpec::PowerSum(p) => {
            let mut acc = 0.0;
            for &(c, m) in p.terms().iter().filter(|t| t.1 > 0.0) {
                let (k, e) = monomial_frac_derivative(m, n)?;
                acc += c * k * x.powf(e);
            }
            Ok(acc)
        }
        _ => caputo_derivative_numeric(f, n, x, cfg),
    }
}

/// Caputo derivative through quadrature (or product integration for tables).
pub fn caputo_derivative_numeric(
    f: &FunctionSpec,
    n: Order,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_point(x, false)?;
    f.check_domain(x)?;
    match f {
        FunctionSpec::Tabulated(t) => caputo_tabulated(t, n, x),
        _ => Ok(kernel_quadrature(f, true, x, n.complement(), cfg)? / gamma(1.0 - n.value())?),
    }
}

/// Limit of `D^n f(x)` as `x → 0+`; infinite when `f` grows like `x^m` with `0 < m < n`.
pub fn caputo_at_origin(f: &FunctionSpec, n: Order) -> Result<f64> {
    let sum = match f {
        FunctionSpec::PowerSum(p) => p,
        FunctionSpec::Piecewise(p) => &p.segments()[0].sum,
        FunctionSpec::Tabulated(t) => {
            let fit = singular_fit(t, n);
            let mut acc = 0.0;
            for (c, e) in fit {
                if e == n.value() {
                    acc += c * gamma(n.value() + 1.0)?;
                }
            }
            return Ok(acc);
        }
    };
    let mut acc = 0.0;
    for &(c, m) in sum.terms().iter().filter(|t| t.1 > 0.0) {
        let (k, e) = monomial_frac_derivative(m, n)?;
        acc += c * k * if e == 0.0 { 1.0 } else { 0f64.powf(e) };
    }
    Ok(acc)
}

/// Both sides of the composition identity
/// `f(x) = sin(nπ)/π ∫_0^x (x - a)^(n-1) [∫_0^a f'(z) (a - z)^-n dz] da`
/// for `f(0) = 0`, with both integrals evaluated numerically.
pub fn composition_check(
    f: &FunctionSpec,
    n: Order,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    check_point(x, false)?;
    f.check_domain(x)?;
    let lhs = f.eval(x)?;
    let f0 = f.eval(0.0)?;
    if f0.abs() > 1e-10 * lhs.abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "composition identity needs f(0) = 0, got f(0) = {f0}"
        )));
    }
    let abel_factor = gamma(1.0 - n.value())?;
    let inner = |a: f64| -> Result<f64> {
        if a <= 0.0 {
            return Ok(0.0);
        }
        Ok(abel_factor * caputo_derivative_numeric(f, n, a, cfg)?)
    };
    let outer = with_fallible(inner, |g| kernel_integral(g, 0.0, x, x, n, cfg))?;
    Ok((lhs, reflection_factor(n) * outer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn ps(terms: &[(f64, f64)]) -> FunctionSpec {
        PowerSum::new(terms.iter().copied()).unwrap().into()
    }

    fn order(n: f64) -> Order {
        Order::new(n).unwrap()
    }

    #[test]
    fn rl_examples() {
        let cfg = QuadratureConfig::default();
        let one = ps(&[(1.0, 0.0)]);
        assert_relative_eq!(rl_integral(&one, order(0.5), 1.0, &cfg).unwrap(), 2.0 / PI.sqrt(), max_relative = 1e-14);
        assert_eq!(rl_integral(&ps(&[]), order(0.3), 2.0, &cfg).unwrap(), 0.0);
        assert_eq!(rl_integral(&one, order(0.3), 0.0, &cfg).unwrap(), 0.0);
        assert!(rl_integral(&one, order(0.3), -1.0, &cfg).is_err());
        for k in [0.0, 0.5, 1.0, 2.0] {
            for n in [0.25, 0.5, 0.75] {
                let x = 1.7f64;
                let want = gamma(k + 1.0).unwrap() / gamma(k + n + 1.0).unwrap() * x.powf(k + n);
                let got = rl_integral(&ps(&[(1.0, k)]), order(n), x, &cfg).unwrap();
                assert_relative_eq!(got, want, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn caputo_examples() {
        let cfg = QuadratureConfig::default();
        let lin = ps(&[(1.0, 1.0)]);
        for x in [0.1f64, 1.0, 3.0] {
            assert_relative_eq!(
                caputo_derivative(&lin, order(0.5), x, &cfg).unwrap(),
                2.0 * (x / PI).sqrt(),
                max_relative = 1e-14
            );
            assert_eq!(caputo_derivative(&ps(&[(4.2, 0.0)]), order(0.3), x, &cfg).unwrap(), 0.0);
        }
        assert!(caputo_derivative(&lin, order(0.5), 0.0, &cfg).is_err());
    }

    #[test]
    fn monomial_rule_examples() {
        let (c, e) = monomial_frac_derivative(1.0, order(0.5)).unwrap();
        assert_relative_eq!(c, 2.0 / PI.sqrt(), max_relative = 1e-14);
        assert_eq!(e, 0.5);
        let (c, e) = monomial_frac_derivative(0.5, order(0.5)).unwrap();
        assert_relative_eq!(c, PI.sqrt() / 2.0, max_relative = 1e-14);
        assert_eq!(e, 0.0);
        let n = order(0.3);
        let (c, e) = monomial_frac_derivative(0.3, n).unwrap();
        assert_relative_eq!(c, gamma(1.3).unwrap(), max_relative = 1e-14);
        assert_eq!(e, 0.0);
        assert!(monomial_frac_derivative(-1.0, n).is_err());
    }

    #[test]
    fn numeric_backend_agrees_with_exact_rule() {
        let cfg = QuadratureConfig::default();
        for m in [0.0, 0.5, 1.0, 2.0, 3.5] {
            for n in [0.25, 0.5, 0.75] {
                let f = ps(&[(1.0, m)]);
                let x = 1.3;
                let exact = rl_integral(&f, order(n), x, &cfg).unwrap();
                let num = rl_integral_numeric(&f, order(n), x, &cfg).unwrap();
                assert_relative_eq!(num, exact, max_relative = 1e-8);
                if m > 0.0 {
                    let exact = caputo_derivative(&f, order(n), x, &cfg).unwrap();
                    let num = caputo_derivative_numeric(&f, order(n), x, &cfg).unwrap();
                    assert_relative_eq!(num, exact, max_relative = 1e-8);
                }
            }
        }
    }

    #[test]
    fn caputo_inverts_rl() {
        let p = PowerSum::new([(1.5, 0.5), (-0.25, 1.0), (2.0, 2.75)]).unwrap();
        for n in [0.25, 0.5, 0.75] {
            let integrated = rl_integral_power_sum(&p, order(n)).unwrap();
            let back = caputo_power_sum(&integrated, order(n)).unwrap();
            for x in [0.5f64, 1.0, 2.0] {
                assert_relative_eq!(back.eval(x), p.eval(x), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn order_limit_approaches_antiderivative() {
        let cfg = QuadratureConfig::default();
        let f = ps(&[(1.0, 0.0), (3.0, 2.0)]);
        let n = order(1.0 - 1e-6);
        let x = 1.5f64;
        let classical = x + x.powi(3);
        assert_relative_eq!(rl_integral(&f, n, x, &cfg).unwrap(), classical, max_relative = 1e-4);
    }

    #[test]
    fn composition_examples() {
        let cfg = QuadratureConfig::default();
        let (l, r) = composition_check(&ps(&[(1.0, 1.0)]), order(0.5), 1.0, &cfg).unwrap();
        assert_eq!(l, 1.0);
        assert!((r - 1.0).abs() < 1e-6, "{r}");
        let (l, r) = composition_check(&ps(&[]), order(0.5), 1.0, &cfg).unwrap();
        assert_eq!((l, r), (0.0, 0.0));
        let (l, r) = composition_check(&ps(&[(1.0, 1.5)]), order(1.0 / 3.0), 2.0, &cfg).unwrap();
        assert_relative_eq!(l, 2f64.powf(1.5), max_relative = 1e-15);
        assert_relative_eq!(r, l, max_relative = 1e-6);
        assert!(composition_check(&ps(&[(1.0, 0.0)]), order(0.5), 1.0, &cfg).is_err());
    }

    #[test]
    fn piecewise_matches_single_segment() {
        let cfg = QuadratureConfig::default();
        let sum = PowerSum::new([(1.0, 0.0), (2.0, 1.5)]).unwrap();
        let pw: FunctionSpec = PiecewisePowerSum::new(vec![
            Segment { lo: 0.0, hi: 0.6, sum: sum.clone() },
            Segment { lo: 0.6, hi: 3.0, sum: sum.clone() },
        ])
        .unwrap()
        .into();
        let single: FunctionSpec = sum.into();
        for x in [0.3f64, 0.6, 1.9] {
            assert_relative_eq!(
                rl_integral(&pw, order(0.4), x, &cfg).unwrap(),
                rl_integral(&single, order(0.4), x, &cfg).unwrap(),
                max_relative = 1e-9
            );
            assert_relative_eq!(
                caputo_derivative(&pw, order(0.4), x, &cfg).unwrap(),
                caputo_derivative(&single, order(0.4), x, &cfg).unwrap(),
                max_relative = 1e-9
            );
        }
        assert!(rl_integral(&pw, order(0.4), 3.5, &cfg).is_err());
    }

    #[test]
    fn origin_limits() {
        let n = order(0.5);
        assert_eq!(caputo_at_origin(&ps(&[(1.0, 1.0)]), n).unwrap(), 0.0);
        assert_relative_eq!(
            caputo_at_origin(&ps(&[(2.0, 0.5), (1.0, 3.0)]), n).unwrap(),
            2.0 * gamma(1.5).unwrap(),
            max_relative = 1e-14
        );
        assert!(caputo_at_origin(&ps(&[(1.0, 0.25)]), n).unwrap().is_infinite());
    }
}
