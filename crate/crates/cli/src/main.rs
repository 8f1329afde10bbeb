mod commands;
mod config;
mod error;
mod report;

use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, Command, Kind, RunConfig};
use error::CliError;

fn run(cli: Cli) -> Result<bool, CliError> {
    let (kind, args, input) = match &cli.command {
        Command::Codim(a) => (Kind::Codim, a, None),
        Command::Hilbert(a) => (Kind::Hilbert, a, None),
        Command::Dims(a) => (Kind::Dims, a, None),
        Command::Verify(a) => (Kind::Verify, a, None),
        Command::Recover { common, input } => (Kind::Recover, common, input.as_deref()),
    };
    let cfg = RunConfig::from_args(kind, args, input.is_some())?;
    let report = match kind {
        Kind::Codim => commands::codim(&cfg)?,
        Kind::Hilbert => commands::hilbert(&cfg)?,
        Kind::Dims => commands::dims(&cfg)?,
        Kind::Verify => commands::verify(&cfg)?,
        Kind::Recover => commands::recover(&cfg, input)?,
    };
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    report.render(cfg.format, &mut out)?;
    out.flush()?;
    Ok(report.failures.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Validation(e.render().to_string().trim().to_string());
            eprintln!("{}", err.record());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
