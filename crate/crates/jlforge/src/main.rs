use clap::Parser;

use jlforge::cli;

fn main() {
    let args = cli::Cli::parse();
    cli::init_threads();
    match cli::run(args) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("{}", cli::error_object(&e));
            std::process::exit(e.exit_code());
        }
    }
}
