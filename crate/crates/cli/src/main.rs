use clap::Parser;
use searchtime_cli::{dispatch, Cli, UsageError};

fn main() {
    let cli = Cli::parse(); // clap exits with code 2 on parse errors
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err:#}");
        let code = if err.is::<UsageError>() { 2 } else { 3 };
        std::process::exit(code);
    }
}
