//! Built-in analytic check catalog behind `abel verify`.

use std::f64::consts::PI;

use abel_core::abel::{forward, solve_convolution, solve_piecewise, solve_series, solve_theorem};
use abel_core::fracops::{caputo_derivative_numeric, composition_check};
use abel_core::quadrature::integrate_adaptive;
use abel_core::special::{gamma, reflection_factor};
use abel_core::tautochrone::{reconstruct_curve, simulate_descent, DEFAULT_GRAVITY};
use abel_core::{
    AbelProblem, FunctionSpec, Order, PiecewisePowerSum, PowerSum, QuadratureConfig, Result, Segment,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub max_rel_err: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_rel_err <= self.tolerance
    }
}

fn rel(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

fn order(n: f64) -> Order {
    Order::new(n).expect("catalog orders lie in (0, 1)")
}

fn sum(terms: &[(f64, f64)]) -> PowerSum {
    PowerSum::new(terms.iter().copied()).expect("catalog terms are valid")
}

/// Descent-time functions with feasible curves on `[0, 1]`.
pub fn feasible_time_catalog() -> Vec<PowerSum> {
    vec![
        sum(&[(4.0, 0.0)]),
        sum(&[(3.0, 0.5)]),
        sum(&[(4.0, 0.0), (2.0, 1.0)]),
        sum(&[(4.0, 0.0), (1.0, 2.0)]),
        sum(&[(4.0, 0.0), (2.0, 0.5), (1.0, 1.0)]),
    ]
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(errs: I) -> f64 {
    errs.into_iter().map(|e| e.unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

fn cycloid(backend: &str, tolerance: f64) -> CheckResult {
    let cfg = QuadratureConfig::default();
    let c = 1.3;
    let prob = AbelProblem::tautochrone(sum(&[(c, 0.0)]).into()).expect("finite ψ");
    let xs = (1..=100).map(|i| i as f64 / 100.0);
    let err = max_over(xs.map(|x| {
        let want = 2.0 * c / PI * x.sqrt();
        let got = match backend {
            "series" => solve_series(&prob)?.s.eval(x)?,
            "convolution" => solve_convolution(&prob, x, &cfg)?,
            _ => solve_theorem(&prob, x, &cfg)?,
        };
        Ok(rel(got, want))
    }));
    CheckResult { name: format!("cycloid/{backend}"), max_rel_err: err, tolerance }
}

fn power_law() -> CheckResult {
    let c = 1.7;
    let err = max_over([0.0, 0.5, 1.0, 2.0].map(|mu| {
        let prob = AbelProblem::tautochrone(sum(&[(c, mu)]).into())?;
        let s = solve_series(&prob)?.s;
        let (coef, _) = s.as_power_sum().expect("series output").terms()[0];
        Ok(rel(coef, c / PI.sqrt() * gamma(mu + 1.0)? / gamma(mu + 1.5)?))
    }));
    CheckResult { name: "power-law coefficients".into(), max_rel_err: err, tolerance: 1e-10 }
}

fn straight_line() -> CheckResult {
    let err = (|| -> Result<f64> {
        let prob = AbelProblem::tautochrone(sum(&[(3.0, 0.5)]).into())?;
        let s = solve_series(&prob)?.s;
        let curve = reconstruct_curve(&s, 1.0, 101, DEFAULT_GRAVITY)?;
        let want = (1.5f64 * 1.5 - 1.0).sqrt();
        Ok(curve.xs().iter().zip(curve.y()).skip(1).map(|(x, y)| rel(y / x, want)).fold(0.0, f64::max))
    })();
    CheckResult { name: "straight line slope".into(), max_rel_err: err.unwrap_or(f64::INFINITY), tolerance: 1e-8 }
}

fn inversion_half() -> CheckResult {
    let cfg = QuadratureConfig::default();
    let mut errs = Vec::new();
    for mu in [0.0, 0.5, 1.0, 2.0] {
        let psi = sum(&[(1.7, mu)]);
        for a in [0.25, 0.5, 1.0] {
            errs.push((|| {
                let s = solve_series(&AbelProblem::tautochrone(psi.clone().into())?)?.s;
                let back = PI.sqrt() * caputo_derivative_numeric(&s, Order::HALF, a, &cfg)?;
                Ok(rel(back, psi.eval(a)))
            })());
        }
    }
    CheckResult { name: "inversion n=1/2".into(), max_rel_err: max_over(errs), tolerance: 1e-6 }
}

fn round_trip() -> CheckResult {
    let cfg = QuadratureConfig::default();
    let psi = sum(&[(2.0, 0.0), (-0.5, 0.5), (1.0, 1.5)]);
    let mut errs = Vec::new();
    for n in [0.2, 0.4, 0.6, 0.8] {
        for a in [0.3, 1.0, 2.0] {
            errs.push((|| {
                let s = solve_series(&AbelProblem::new(psi.clone().into(), order(n))?)?.s;
                Ok(rel(forward(&s, order(n), a, &cfg)?, psi.eval(a)))
            })());
        }
    }
    CheckResult { name: "forward after solve".into(), max_rel_err: max_over(errs), tolerance: 1e-7 }
}

fn composition() -> CheckResult {
    let cfg = QuadratureConfig::default();
    let mut errs = Vec::new();
    for m in [1.0, 1.5, 2.0] {
        for n in [0.25, 1.0 / 3.0, 0.5, 0.75] {
            let f: FunctionSpec = sum(&[(1.0, m)]).into();
            errs.push(composition_check(&f, order(n), 0.8, &cfg).map(|(l, r)| rel(r, l)));
        }
    }
    CheckResult { name: "composition identity".into(), max_rel_err: max_over(errs), tolerance: 1e-6 }
}

fn monomial_rule() -> CheckResult {
    let cfg = QuadratureConfig::default();
    let mut errs = Vec::new();
    for m in [0.5, 1.0, 2.0, 3.5] {
        for n in [0.25, 0.5, 0.75] {
            for x in [0.3f64, 1.0, 2.0] {
                errs.push((|| {
                    let f: FunctionSpec = sum(&[(1.0, m)]).into();
                    let want = gamma(m + 1.0)? / gamma(m - n + 1.0)? * x.powf(m - n);
                    Ok(rel(caputo_derivative_numeric(&f, order(n), x, &cfg)?, want))
                })());
            }
        }
    }
    CheckResult { name: "monomial derivative rule".into(), max_rel_err: max_over(errs), tolerance: 1e-8 }
}

fn isochrone() -> CheckResult {
    let err = (|| -> Result<f64> {
        let curve = reconstruct_curve(&sum(&[(8.0 / PI, 0.5)]).into(), 1.0, 2001, DEFAULT_GRAVITY)?;
        let times = [0.1, 0.2, 0.5, 0.9, 1.0]
            .iter()
            .map(|&a| Ok(simulate_descent(&curve, a, 1e-10)?.T))
            .collect::<Result<Vec<f64>>>()?;
        let lo = times.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = times.iter().copied().fold(0.0, f64::max);
        Ok((hi - lo) / lo)
    })();
    CheckResult { name: "isochrone spread".into(), max_rel_err: err.unwrap_or(f64::INFINITY), tolerance: 1e-4 }
}

fn descent_times() -> CheckResult {
    let mut errs = Vec::new();
    for psi in feasible_time_catalog() {
        errs.push((|| {
            let s = solve_series(&AbelProblem::tautochrone(psi.clone().into())?)?.s;
            let curve = reconstruct_curve(&s, 1.0, 2001, DEFAULT_GRAVITY)?;
            let mut worst = 0.0f64;
            for a in [0.25, 0.5, 0.75] {
                worst = worst.max(rel(simulate_descent(&curve, a, 1e-10)?.T, psi.eval(a)));
            }
            Ok(worst)
        })());
    }
    CheckResult { name: "simulated time = psi".into(), max_rel_err: max_over(errs), tolerance: 5e-4 }
}

fn gamma_identities() -> CheckResult {
    let mut errs = Vec::new();
    for i in 1..200 {
        let z = -9.975 + i as f64 * 0.1;
        errs.push((|| Ok(rel(gamma(z + 1.0)?, z * gamma(z)?)))());
    }
    for i in 1..100 {
        let n = i as f64 / 100.0;
        errs.push((|| Ok(rel(gamma(n)? * gamma(1.0 - n)?, 1.0 / reflection_factor(order(n)))))());
    }
    CheckResult { name: "gamma recurrence and reflection".into(), max_rel_err: max_over(errs), tolerance: 1e-12 }
}

/// `∫_lo^hi ψ(a) (x - a)^-1/2 da` with `a = x - u²`, a smooth integrand.
fn brute_force_segment(psi: &PowerSum, lo: f64, hi: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let (u_lo, u_hi) = ((x - hi).max(0.0).sqrt(), (x - lo).sqrt());
    Ok(integrate_adaptive(|u| Ok(2.0 * psi.eval(x - u * u)), u_lo, u_hi, cfg)?.value)
}

fn piecewise() -> Vec<CheckResult> {
    let cfg = QuadratureConfig::default().with_tolerances(1e-13, 1e-12);
    let first = sum(&[(1.0, 0.0), (0.5, 1.0)]);
    let second = sum(&[(1.0, 0.0), (1.0, 2.0)]);
    let two = PiecewisePowerSum::new(vec![
        Segment { lo: 0.0, hi: 0.5, sum: first.clone() },
        Segment { lo: 0.5, hi: 1.5, sum: second.clone() },
    ])
    .expect("continuous at 0.5");
    let mut errs = Vec::new();
    for x in [0.25, 0.5, 0.8, 1.5] {
        errs.push((|| {
            let prob = AbelProblem::tautochrone(two.clone().into())?;
            let got = solve_piecewise(&prob, x, &cfg)?;
            let want = (brute_force_segment(&first, 0.0, x.min(0.5), x, &cfg)?
                + if x > 0.5 { brute_force_segment(&second, 0.5, x, x, &cfg)? } else { 0.0 })
                / PI;
            Ok(rel(got, want))
        })());
    }
    let split = PiecewisePowerSum::new(vec![
        Segment { lo: 0.0, hi: 0.7, sum: first.clone() },
        Segment { lo: 0.7, hi: 1.5, sum: first.clone() },
    ])
    .expect("identical segments");
    let mut degenerate = Vec::new();
    for x in [0.3, 0.7, 1.2] {
        degenerate.push((|| {
            let a = solve_piecewise(&AbelProblem::tautochrone(split.clone().into())?, x, &cfg)?;
            let b = solve_piecewise(&AbelProblem::tautochrone(first.clone().into())?, x, &cfg)?;
            Ok(rel(a, b))
        })());
    }
    vec![
        CheckResult { name: "piecewise vs brute force".into(), max_rel_err: max_over(errs), tolerance: 1e-7 },
        CheckResult { name: "piecewise equal segments".into(), max_rel_err: max_over(degenerate), tolerance: 1e-10 },
    ]
}

/// Every check, in a fixed order.
pub fn run_catalog() -> Vec<CheckResult> {
    let mut out = vec![
        cycloid("series", 1e-12),
        cycloid("convolution", 1e-8),
        cycloid("theorem", 1e-8),
        power_law(),
        straight_line(),
        inversion_half(),
        round_trip(),
        composition(),
        monomial_rule(),
        isochrone(),
        descent_times(),
        gamma_identities(),
    ];
    out.extend(piecewise());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_passes() {
        for check in run_catalog() {
            assert!(check.passed(), "{check:?}");
        }
    }
}
