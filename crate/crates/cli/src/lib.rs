//! Command-line front end for `beatty-core`.

pub mod commands;
pub mod config;
pub mod report;

use std::process::ExitCode;

use config::ConfigError;

/// Parses `argv`, runs the command and emits its report.
///
/// Exit status is 0 on success or PASS, 2 on a failed verification and 1 on
/// usage or runtime errors.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match config::parse_config(argv) {
        Ok(cfg) => cfg,
        Err(ConfigError::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
        Err(ConfigError::Usage(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = match commands::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = report::emit(&outcome.report, cfg.format, cfg.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    match outcome.verdict {
        Some(false) => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    }
}
