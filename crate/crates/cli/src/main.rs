use clap::Parser;
use lerch_zeta_cli::{emit, execute, Cli, RunConfig};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::resolve(&cli.flags).and_then(|cfg| {
        let run = execute(cli.command, &cfg)?;
        Ok((emit(&run, &cfg)?, run.passed))
    });
    match outcome {
        Ok((text, passed)) => {
            if let Some(text) = text {
                let mut out = std::io::stdout().lock();
                // a closed pipe is not an error of the run
                let _ = out.write_all(text.as_bytes());
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
