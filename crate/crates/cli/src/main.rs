mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use rh_bounds::Error;

/// A bound or identity was violated.
const EXIT_ASSERTION: u8 = 2;
/// Input outside a hypothesis, or data that could not be read.
const EXIT_DOMAIN: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Assertion(_) => EXIT_ASSERTION,
        _ => EXIT_DOMAIN,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not start the thread pool: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    }

    let outcome = run::dispatch(&cli);
    let (text, verdict) = match outcome {
        Ok(out) => (Some(out.text), out.verdict),
        Err(e) => (None, Err(e)),
    };
    if let Some(text) = text {
        let written = match &cli.output {
            Some(path) => std::fs::write(path, &text),
            None => std::io::stdout().write_all(text.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("error: could not write output: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    }
    match verdict {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
