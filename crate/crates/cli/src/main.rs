use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use clonot_cli::config::OUTPUT_DIR_ENV;
use clonot_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.command.to_config();
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let target = cli.command.common().output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|dir| {
            PathBuf::from(dir).join(format!("{}.{}", report.command, config.format.extension()))
        })
    });
    let written = match &target {
        Some(path) => {
            File::create(path).and_then(|f| report.write(config.format, BufWriter::new(f)))
        }
        None => report.write(config.format, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }

    eprintln!(
        "{}: {} rows, {} failed, seed {}",
        report.command,
        report.rows.len(),
        report.failures(),
        report.seed
    );
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
