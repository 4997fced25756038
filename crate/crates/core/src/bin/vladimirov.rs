use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use vladimirov::experiment::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                eprint!("{}", report.failure_summary());
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
