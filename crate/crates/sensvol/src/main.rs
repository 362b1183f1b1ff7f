use clap::Parser;

fn main() {
    let cli = sensvol::cli::Cli::parse();
    if let Err(e) = sensvol::cli::run(cli) {
        match sensvol::cli::error_code(&e) {
            Some(code) => eprintln!("error[{code}]: {e:#}"),
            None => eprintln!("error: {e:#}"),
        }
        std::process::exit(1);
    }
}
