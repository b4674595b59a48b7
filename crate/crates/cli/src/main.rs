mod args;
mod run;

use clap::error::ErrorKind;
use clap::Parser;
use std::io::Write;
use std::process::ExitCode;

/// Usage errors share the parse-error status so they never look like an Unknown verdict.
const USAGE_EXIT: u8 = 64;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE_EXIT),
            };
        }
    };
    match run::run(&cli) {
        Ok(outcome) => {
            let text = match outcome.output {
                run::Output::Json(v) => serde_json::to_string_pretty(&v).expect("json") + "\n",
                run::Output::Csv(s) => s,
            };
            // a closed pipe downstream is not a failure of the command
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("fe-lab: {e}");
            ExitCode::from(run::error_exit(&e) as u8)
        }
    }
}
