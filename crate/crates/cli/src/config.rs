use std::path::{Path, PathBuf};

use abel_core::{Backend, FunctionSpec, Order, QuadratureConfig, TabulatedFunction};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::parse::parse_function_spec;

#[derive(Debug, Parser)]
#[command(name = "abel", version, about = "Fractional calculus and Abel's integral equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Abel equation for the arc length s(x) given ψ(a)
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        /// Solution route; defaults to series for power sums, convolution otherwise
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Evaluate ψ(a) = ∫_0^a s'(x)(a-x)^-n dx for a given arc length s
    Forward {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Riemann-Liouville fractional integral of order n
    FracInt {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Caputo fractional derivative of order n
    FracDer {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Curve (x, s, y) whose descent time from height a is ψ(a)
    Curve {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Simulated descent times on the curve built from ψ
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the built-in analytic check catalog
    Verify {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Function spec, e.g. "1.0", "2*a^0.5 + 1*a^2" or "piecewise: [0,1] 1 ; [1,2] a^1"
    #[arg(long, conflicts_with = "func_file")]
    pub func: Option<String>,
    /// Two-column CSV (x,value) with a header row
    #[arg(long)]
    pub func_file: Option<PathBuf>,
    /// Fractional order n, 0 < n < 1
    #[arg(long, default_value_t = 0.5)]
    pub order: f64,
    /// Uniform output grid as x_max:points
    #[arg(long, default_value = "1:101")]
    pub grid: String,
    /// Gravity parameter g; speed is √(2g(a - x))
    #[arg(long, default_value_t = 0.5)]
    pub gravity: f64,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Gauss-Legendre nodes per panel
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Absolute and relative tolerance for quadrature and time stepping
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Series,
    Convolution,
    Theorem,
    Numeric,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Series => Backend::Series1823,
            BackendArg::Convolution => Backend::Convolution1826,
            BackendArg::Theorem => Backend::Theorem1823,
            BackendArg::Numeric => Backend::NumericProduct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Forward,
    FracInt,
    FracDer,
    Curve,
    Simulate,
    Verify,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Solve => "solve",
            CommandKind::Forward => "forward",
            CommandKind::FracInt => "frac-int",
            CommandKind::FracDer => "frac-der",
            CommandKind::Curve => "curve",
            CommandKind::Simulate => "simulate",
            CommandKind::Verify => "verify",
        }
    }
}

/// Uniform grid `x_max:points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_max: f64,
    pub points: usize,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("grid must look like x_max:points, got '{text}'"));
        let (x, p) = text.split_once(':').ok_or_else(bad)?;
        let x_max: f64 = x.trim().parse().map_err(|_| bad())?;
        let points: usize = p.trim().parse().map_err(|_| bad())?;
        if !(x_max.is_finite() && x_max > 0.0) || points < 2 {
            return Err(CliError::Usage(format!(
                "grid needs x_max > 0 and at least 2 points, got '{text}'"
            )));
        }
        Ok(Grid { x_max, points })
    }

    pub fn nodes(&self) -> Vec<f64> {
        abel_core::tautochrone::uniform_grid(self.x_max, self.points).expect("validated grid")
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub func: Option<FunctionSpec>,
    /// How the function was given, echoed in JSON output.
    pub func_source: Option<String>,
    pub order: Order,
    pub grid: Grid,
    pub gravity: f64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub quadrature: QuadratureConfig,
    pub backend: Option<Backend>,
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (command, common, backend) = match cli.command {
            Command::Solve { common, backend } => (CommandKind::Solve, common, backend.map(Backend::from)),
            Command::Forward { common } => (CommandKind::Forward, common, None),
            Command::FracInt { common } => (CommandKind::FracInt, common, None),
            Command::FracDer { common } => (CommandKind::FracDer, common, None),
            Command::Curve { common } => (CommandKind::Curve, common, None),
            Command::Simulate { common } => (CommandKind::Simulate, common, None),
            Command::Verify { output } => {
                return Ok(RunConfig {
                    command: CommandKind::Verify,
                    func: None,
                    func_source: None,
                    order: Order::HALF,
                    grid: Grid { x_max: 1.0, points: 2 },
                    gravity: 0.5,
                    output_path: output.output,
                    format: output.format,
                    quadrature: QuadratureConfig::default(),
                    backend: None,
                    tol: None,
                })
            }
        };
        let order = Order::new(common.order).map_err(|e| CliError::Usage(e.to_string()))?;
        let grid = Grid::parse(&common.grid)?;
        if !(common.gravity.is_finite() && common.gravity > 0.0) {
            return Err(CliError::Usage(format!("gravity must be positive, got {}", common.gravity)));
        }
        let (func, func_source) = match (&common.func, &common.func_file) {
            (Some(text), None) => (parse_function_spec(text)?, text.clone()),
            (None, Some(path)) => (read_func_file(path)?, format!("file:{}", path.display())),
            _ => return Err(CliError::Usage("exactly one of --func or --func-file is required".into())),
        };
        let mut quadrature = QuadratureConfig::default();
        if let Some(n) = common.nodes {
            quadrature = quadrature.with_nodes(n);
        }
        if let Some(t) = common.tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {t}")));
            }
            quadrature = quadrature.with_tolerances(t, t);
        }
        quadrature.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(RunConfig {
            command,
            func: Some(func),
            func_source: Some(func_source),
            order,
            grid,
            gravity: common.gravity,
            output_path: common.output.output,
            format: common.output.format,
            quadrature,
            backend,
            tol: common.tol,
        })
    }

    /// Echo of the configuration for JSON output.
    pub fn params(&self) -> Value {
        if self.command == CommandKind::Verify {
            return json!({});
        }
        json!({
            "func": self.func_source,
            "order": self.order.value(),
            "grid": { "x_max": self.grid.x_max, "points": self.grid.points },
            "gravity": self.gravity,
            "nodes": self.quadrature.node_count,
            "tol": self.tol,
            "backend": self.backend.map(|b| format!("{b:?}")),
        })
    }
}

/// Reads a two-column CSV with a header row. Any header names are accepted so
/// that output of `solve` can be fed straight back in.
pub fn read_func_file(path: &Path) -> Result<FunctionSpec, CliError> {
    let io = |e: &dyn std::fmt::Display| CliError::Usage(format!("{}: {e}", path.display()));
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| io(&e))?;
    let header = reader.headers().map_err(|e| io(&e))?.clone();
    if header.len() != 2 {
        return Err(io(&format!("expected two columns, found {}", header.len())));
    }
    let (mut xs, mut values) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| io(&e))?;
        let field = |j: usize| -> Result<f64, CliError> {
            record[j]
                .parse::<f64>()
                .map_err(|_| io(&format!("row {}: '{}' is not a number", i + 2, &record[j])))
        };
        xs.push(field(0)?);
        values.push(field(1)?);
    }
    TabulatedFunction::new(xs, values).map(Into::into).map_err(|e| io(&e))
}
