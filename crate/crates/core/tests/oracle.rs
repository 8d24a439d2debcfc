mod common;

use abel_core::abel::{solve_convolution, solve_piecewise, solve_series, solve_theorem};
use abel_core::fracops::{caputo_derivative_numeric, rl_integral_numeric};
use abel_core::quadrature::{kernel_integral, singular_integral};
use abel_core::special::{beta, gamma, PositiveReal};
use abel_core::{AbelProblem, FunctionSpec, Order, PiecewisePowerSum, PowerSum, QuadratureConfig, Segment};
use common::{rel_err, tanh_sinh};
use std::f64::consts::PI;

fn order(n: f64) -> Order {
    Order::new(n).unwrap()
}

#[test]
fn weakly_singular_integrals_match_reference() {
    let cfg = QuadratureConfig::default();
    type Named = (&'static str, fn(f64) -> f64);
    let fns: [Named; 3] = [("exp", f64::exp), ("cos", f64::cos), ("rational", |t| 1.0 / (1.0 + t * t))];
    for (name, g) in fns {
        for p in [0.1, 0.25, 0.5, 0.75, 0.9] {
            for x in [0.3, 1.0, 2.5] {
                let want = tanh_sinh(|t, d| g(t) * d.powf(p - 1.0), 0.0, x);
                let got = singular_integral(g, x, order(p), &cfg).unwrap();
                assert!(rel_err(got, want) < 1e-10, "{name} p={p} x={x}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn kernel_on_subinterval_matches_reference() {
    let cfg = QuadratureConfig::default();
    let got = kernel_integral(f64::exp, 0.4, 1.1, 1.5, order(0.3), &cfg).unwrap();
    let want = tanh_sinh(|t, _| t.exp() * (1.5 - t).powf(-0.7), 0.4, 1.1);
    assert!(rel_err(got, want) < 1e-12, "{got} vs {want}");
}

#[test]
fn fractional_operators_on_non_monomial_data() {
    let cfg = QuadratureConfig::default().with_tolerances(1e-14, 1e-13);
    let f: FunctionSpec = PowerSum::new([(1.0, 0.5), (-0.3, 1.7), (2.0, 3.0)]).unwrap().into();
    let df = |t: f64| 0.5 * t.powf(-0.5) - 0.51 * t.powf(0.7) + 6.0 * t * t;
    for n in [0.25, 0.5, 0.75] {
        let x = 1.3;
        let rl = rl_integral_numeric(&f, order(n), x, &cfg).unwrap();
        let rl_ref = tanh_sinh(|t, d| f.eval(t).unwrap() * d.powf(n - 1.0), 0.0, x) / gamma(n).unwrap();
        assert!(rel_err(rl, rl_ref) < 1e-10, "RL n={n}: {rl} vs {rl_ref}");
        let cap = caputo_derivative_numeric(&f, order(n), x, &cfg).unwrap();
        let cap_ref = tanh_sinh(|t, d| df(t) * d.powf(-n), 0.0, x) / gamma(1.0 - n).unwrap();
        assert!(rel_err(cap, cap_ref) < 1e-9, "Caputo n={n}: {cap} vs {cap_ref}");
    }
}

#[test]
fn beta_agrees_with_gamma_quotient() {
    let grid = [0.25, 0.5, 0.8, 1.0, 1.7, 2.5, 3.3, 4.0];
    for &a in &grid {
        for &b in &grid {
            let got = beta(PositiveReal::new(a).unwrap(), PositiveReal::new(b).unwrap()).unwrap();
            let want = gamma(a).unwrap() * gamma(b).unwrap() / gamma(a + b).unwrap();
            assert!(rel_err(got, want) < 1e-8, "B({a},{b})");
        }
    }
}

#[test]
fn beta_integral_identity() {
    // ∫_0^x t^(k) (x - t)^(n-1) dt = x^(k+n) B(k+1, n)
    let cfg = QuadratureConfig::default().with_tolerances(1e-14, 1e-13);
    for (k, n) in [(0.0, 0.5), (1.5, 0.25), (3.0, 0.75)] {
        let x: f64 = 1.7;
        let got = singular_integral(|t| t.powf(k), x, order(n), &cfg).unwrap();
        let b = beta(PositiveReal::new(k + 1.0).unwrap(), PositiveReal::new(n).unwrap()).unwrap();
        assert!(rel_err(got, x.powf(k + n) * b) < 1e-12, "k={k} n={n}: {}", rel_err(got, x.powf(k + n) * b));
    }
}

#[test]
fn three_solvers_agree_on_mixed_sums() {
    let cfg = QuadratureConfig::default();
    let psi = PowerSum::new([(2.0, 0.0), (-0.5, 0.5), (1.2, 1.0), (0.3, 2.5)]).unwrap();
    for n in [0.2, 0.5, 0.8] {
        let prob = AbelProblem::new(psi.clone().into(), order(n)).unwrap();
        let series = solve_series(&prob).unwrap().s;
        for x in [0.05, 0.5, 1.0, 3.0] {
            let exact = series.eval(x).unwrap();
            let conv = solve_convolution(&prob, x, &cfg).unwrap();
            let thm = solve_theorem(&prob, x, &cfg).unwrap();
            assert!(rel_err(conv, exact) < 1e-9, "conv n={n} x={x}");
            assert!(rel_err(thm, exact) < 1e-9, "theorem n={n} x={x}");
        }
    }
}

#[test]
fn piecewise_solution_matches_brute_force() {
    let cfg = QuadratureConfig::default();
    // ψ = 1 on [0, 1/2], then 1/2 + a on [1/2, 2]; continuous at the join.
    let first = PowerSum::constant(1.0).unwrap();
    let second = PowerSum::new([(0.5, 0.0), (1.0, 1.0)]).unwrap();
    let pw = PiecewisePowerSum::new(vec![
        Segment { lo: 0.0, hi: 0.5, sum: first },
        Segment { lo: 0.5, hi: 2.0, sum: second },
    ])
    .unwrap();
    let psi = |a: f64| if a <= 0.5 { 1.0 } else { 0.5 + a };
    let prob = AbelProblem::tautochrone(pw.into()).unwrap();
    for x in [0.2, 0.5, 0.7, 1.4, 2.0] {
        let got = solve_piecewise(&prob, x, &cfg).unwrap();
        let want = if x <= 0.5 {
            tanh_sinh(|a, d| psi(a) / d.sqrt(), 0.0, x)
        } else {
            tanh_sinh(|a, _| psi(a) / (x - a).sqrt(), 0.0, 0.5) + tanh_sinh(|a, d| psi(a) / d.sqrt(), 0.5, x)
        } / PI;
        assert!(rel_err(got, want) < 1e-7, "x={x}: {got} vs {want}");
    }
}
