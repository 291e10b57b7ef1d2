use clap::Parser;
use stk::cli::commands::{run, Cli};
use stk::cli::Exit;

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            Exit::Error
        }
    };
    std::process::exit(code as i32);
}
