//! Library side of the `abel` command-line tool: spec parsing, configuration,
//! command execution and output rendering. `main.rs` only wires these to the
//! process environment.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parse;
pub mod verify;

use std::io::Write;

use clap::Parser;

pub use commands::execute;
pub use config::{Cli, RunConfig};
pub use error::CliError;
pub use parse::parse_function_spec;

/// Runs one configured command, writing the table to `--output` or `stdout`
/// and diagnostics to `stderr`. Returns the process exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match run_inner(cfg, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_inner(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let report = execute(cfg)?;
    let text = report.render(cfg.format)?;
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))?,
    }
    let failed = cfg.command == config::CommandKind::Verify
        && report.rows.iter().any(|r| r.last() == Some(&output::Cell::Text("FAIL".into())));
    Ok(if failed { error::EXIT_VERIFY_FAILED } else { error::EXIT_OK })
}

/// Parses `args` (program name first) and runs the command. Usage errors from
/// the argument parser exit with code 2, help and version requests with 0.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                return error::EXIT_USAGE;
            }
            let _ = stdout.write_all(rendered.as_bytes());
            return error::EXIT_OK;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg, stdout, stderr),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
