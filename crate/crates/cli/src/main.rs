mod args;
mod commands;
mod report;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Ctx;

#[derive(Debug)]
pub enum CliError {
    /// Inconsistent flags; exits with status 2 like clap's own errors.
    Usage(String),
    Lib(vitalfew::Error),
}

impl From<vitalfew::Error> for CliError {
    fn from(e: vitalfew::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn report(&self) -> (u8, String) {
        match self {
            CliError::Usage(msg) => (2, format!("error[usage]: {msg}")),
            CliError::Lib(e) => (1, format!("error[{}]: {e}", e.kind())),
        }
    }
}

fn format_for(explicit: Option<Format>, out: Option<&Path>) -> Format {
    explicit.unwrap_or_else(|| {
        match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            Some(ext) if ext.eq_ignore_ascii_case("svg") => Format::Svg,
            _ => Format::Text,
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let ctx = Ctx {
        format: format_for(cli.global.format, cli.global.out.as_deref()),
        digits: cli.global.precision as usize,
        seed: cli.global.seed,
    };
    let outcome = match &cli.command {
        Command::Point(a) => commands::point(a, &ctx),
        Command::FitRatio(a) => commands::fit_ratio(a, &ctx),
        Command::FitAlpha(a) => commands::fit_alpha(a, &ctx),
        Command::Table(a) => commands::table(a, &ctx),
        Command::Curve(a) => commands::curve(a, &ctx),
        Command::Profile(a) => commands::profile(a, &ctx),
        Command::Compare(a) => commands::compare(a, &ctx),
        Command::McCheck(a) => commands::mc(a, &ctx),
    }?;

    match &cli.global.out {
        Some(path) => {
            vitalfew::curves::write_text(path, &outcome.body)?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(outcome.body.as_bytes());
            let _ = stdout.flush();
        }
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if let Some(msg) = outcome.failed_check {
        eprintln!("error[check]: {msg}");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let (code, line) = e.report();
            eprintln!("{line}");
            ExitCode::from(code)
        }
    }
}
