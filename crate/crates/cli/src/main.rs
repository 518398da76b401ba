use std::io::Write;
use std::process::ExitCode;

use hyperform_cli::{configure_threads, run, CliError, RunConfig, THREADS_ENV};

fn fail(e: &CliError) -> ExitCode {
    match e {
        CliError::Clap(c) => {
            let _ = c.print();
        }
        other => eprintln!("error: {other}"),
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let threads = std::env::var(THREADS_ENV).ok();
    if let Err(e) = configure_threads(threads.as_deref()) {
        return fail(&e);
    }
    let config = match RunConfig::from_args(std::env::args()) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        return fail(&CliError::Io(e));
    }
    ExitCode::from(outcome.code as u8)
}
