use clap::Parser;

use bilwave::cli::{error_exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    };
    std::process::exit(code);
}
