use clap::Parser;

fn main() {
    let cli = holorate::cli::Cli::parse();
    if let Err(err) = holorate::cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
