use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hardy_ladder::cli::{run, RunConfig};
use hardy_ladder::ErrorKind;

fn main() -> ExitCode {
    let config = RunConfig::parse();

    let report = match run(&config) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(match err.kind() {
                ErrorKind::Domain => 3,
                ErrorKind::Range | ErrorKind::Convergence => 4,
            });
        }
    };
    let text = report.render(config.format);

    let written = match &config.output {
        Some(path) => std::fs::write(path, &text).inspect_err(|_| {
            let _ = std::fs::remove_file(path);
        }),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: writing output: {err}");
            ExitCode::from(1)
        }
    }
}
