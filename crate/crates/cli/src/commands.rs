use abel_core::abel::{forward, forward_at_origin, solve_on_grid, solve_series};
use abel_core::fracops::{caputo_at_origin, caputo_derivative, rl_integral};
use abel_core::tautochrone::{reconstruct_curve, simulate_descent, uniform_grid};
use abel_core::{AbelProblem, Backend, FunctionSpec, Order, QuadratureConfig};

use crate::config::{CommandKind, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Report};
use crate::verify::run_catalog;

/// Samples used internally when an arc length has to be tabulated or a curve
/// interpolated for the simulator.
const FINE_GRID_POINTS: usize = 2001;
const DEFAULT_SIM_TOL: f64 = 1e-10;

/// Runs the command and collects its output table.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report {
        command: cfg.command.name(),
        params: cfg.params(),
        columns: Vec::new(),
        rows: Vec::new(),
    };
    if cfg.command == CommandKind::Verify {
        report.columns = vec!["check", "max_rel_err", "tolerance", "status"];
        report.rows = run_catalog()
            .into_iter()
            .map(|c| {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                vec![Cell::Text(c.name), Cell::Num(c.max_rel_err), Cell::Num(c.tolerance), Cell::Text(status.into())]
            })
            .collect();
        return Ok(report);
    }

    let f = cfg.func.as_ref().expect("non-verify commands carry a function");
    let n = cfg.order;
    let q = &cfg.quadrature;
    let xs = cfg.grid.nodes();
    f.check_domain(cfg.grid.x_max)?;
    let num = |v: f64| Cell::Num(v);

    match cfg.command {
        CommandKind::Solve => {
            let problem = AbelProblem::new(f.clone(), n)?;
            let backend = cfg.backend.unwrap_or(match f {
                FunctionSpec::PowerSum(_) => Backend::Series1823,
                _ => Backend::Convolution1826,
            });
            let s = solve_on_grid(&problem, backend, &xs, q)?.s;
            report.columns = vec!["x", "s"];
            for &x in &xs {
                report.rows.push(vec![num(x), num(s.eval(x)?)]);
            }
        }
        CommandKind::Forward => {
            report.columns = vec!["a", "psi"];
            for &a in &xs {
                let psi = if a == 0.0 { forward_at_origin(f, n)? } else { forward(f, n, a, q)? };
                report.rows.push(vec![num(a), num(psi)]);
            }
        }
        CommandKind::FracInt => {
            report.columns = vec!["x", "value"];
            for &x in &xs {
                report.rows.push(vec![num(x), num(rl_integral(f, n, x, q)?)]);
            }
        }
        CommandKind::FracDer => {
            report.columns = vec!["x", "value"];
            for &x in &xs {
                let v = if x == 0.0 { caputo_at_origin(f, n)? } else { caputo_derivative(f, n, x, q)? };
                report.rows.push(vec![num(x), num(v)]);
            }
        }
        CommandKind::Curve => {
            let s = arc_length_for_time(cfg, q)?;
            let curve = reconstruct_curve(&s, cfg.grid.x_max, cfg.grid.points, cfg.gravity)?;
            report.columns = vec!["x", "s", "y"];
            for i in 0..curve.len() {
                report.rows.push(vec![num(curve.xs()[i]), num(curve.s()[i]), num(curve.y()[i])]);
            }
        }
        CommandKind::Simulate => {
            let s = arc_length_for_time(cfg, q)?;
            let points = cfg.grid.points.max(FINE_GRID_POINTS);
            let curve = reconstruct_curve(&s, cfg.grid.x_max, points, cfg.gravity)?;
            let tol = cfg.tol.unwrap_or(DEFAULT_SIM_TOL);
            report.columns = vec!["a", "T", "steps", "max_residual"];
            for &a in &xs {
                let r = simulate_descent(&curve, a, tol)?;
                report.rows.push(vec![num(a), num(r.T), Cell::Int(r.steps), num(r.max_residual)]);
            }
        }
        CommandKind::Verify => unreachable!("handled above"),
    }
    Ok(report)
}

/// Arc length of the curve on which sliding from height `a` takes `ψ(a)`
/// under the configured gravity: the Abel equation with `n = 1/2` for
/// `√(2g) ψ`.
fn arc_length_for_time(cfg: &RunConfig, q: &QuadratureConfig) -> Result<FunctionSpec, CliError> {
    if cfg.order != Order::HALF {
        return Err(CliError::Usage(format!(
            "{} works with n = 0.5 only, got --order {}",
            cfg.command.name(),
            cfg.order
        )));
    }
    let psi = cfg.func.as_ref().expect("function present").scale((2.0 * cfg.gravity).sqrt());
    let problem = AbelProblem::tautochrone(psi)?;
    if problem.psi().as_power_sum().is_some() {
        return Ok(solve_series(&problem)?.s);
    }
    let fine = uniform_grid(cfg.grid.x_max, cfg.grid.points.max(FINE_GRID_POINTS))?;
    Ok(solve_on_grid(&problem, Backend::Convolution1826, &fine, q)?.s)
}
