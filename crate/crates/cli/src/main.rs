use clap::Parser;

fn main() {
    let cli = hamsim_cli::Cli::parse();
    if let Err(e) = hamsim_cli::run(&cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
