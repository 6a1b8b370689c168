use std::process::ExitCode;

use clap::Parser;
use fiberfan::cli::{run, Cli};

fn write(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("fiberfan: {e}");
            return ExitCode::from(1);
        }
    };
    let written = write(cli.out.as_deref(), &outcome.json)
        .and_then(|_| match (&cli.dot, &outcome.dot) {
            (Some(p), Some(d)) => std::fs::write(p, d),
            _ => Ok(()),
        });
    if let Err(e) = written {
        eprintln!("fiberfan: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
