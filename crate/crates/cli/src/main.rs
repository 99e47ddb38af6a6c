//! `dicke-lattice`: CSV emission curves and oracle reports.
//!
//! Exit status is 0 on success, 1 for usage or configuration errors and 2
//! for numerical failures (solver non-convergence, oracle dimension cap,
//! failed oracle checks).

mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dicke-lattice: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
