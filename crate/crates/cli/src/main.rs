use clap::Parser;

fn main() {
    let cli = rank2lift_cli::Cli::parse();
    std::process::exit(rank2lift_cli::run(&cli));
}
